"""`verify bessel|spinsum|formfactor`: oracle suites, exit 1 on failure."""

import argparse

from ..evaluation import VerificationRunner, checks_dataset, require_passed
from ..schemas import VerificationReport
from .context import RunContext


def _finish(ctx: RunContext, report: VerificationReport, detail: bool = False) -> int:
    summary = checks_dataset(report)
    if detail and report.detail is not None:
        ctx.write(report.detail)
        ctx.write_summary(summary.summary | {"checks": {row["check"]: row["max_residual"] for row in summary.rows}})
    else:
        ctx.write(summary)
        ctx.write_summary(summary.summary)
    require_passed(report)
    return 0


def bessel_command(args: argparse.Namespace) -> int:
    ctx = RunContext(args)
    return _finish(ctx, VerificationRunner(ctx.settings).bessel_suite())


def spinsum_command(args: argparse.Namespace) -> int:
    ctx = RunContext(args)
    report = VerificationRunner(ctx.settings).spinsum_suite(samples=ctx.config.samples)
    return _finish(ctx, report)


def formfactor_command(args: argparse.Namespace) -> int:
    ctx = RunContext(args)
    cfg = ctx.config
    budgets = {
        "interior_max_evaluations": cfg.max_evaluations,
        "exterior_max_points": cfg.max_points,
    }
    settings = ctx.settings.model_copy(update={k: v for k, v in budgets.items() if v is not None})
    report = VerificationRunner(settings).formfactor_suite(grid=cfg.grid, tol=cfg.tolerance)
    return _finish(ctx, report, detail=True)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Add the `verify` command group."""
    group = subparsers.add_parser("verify", help="oracle verification suites")
    commands = group.add_subparsers(dest="command", metavar="COMMAND", required=True)

    bessel = commands.add_parser(
        "bessel",
        parents=[common],
        argument_default=argparse.SUPPRESS,
        help="J0/J1 branches and zeros against the integral oracle",
        description="Print the maximum residual of each Bessel identity and oracle check as CSV.",
    )
    bessel.set_defaults(handler=bessel_command)

    spinsum = commands.add_parser(
        "spinsum",
        parents=[common],
        argument_default=argparse.SUPPRESS,
        help="explicit, invariant and kinematic spin sums",
        description="Compare the three spin-sum evaluations over randomized elastic kinematics (fixed seed).",
    )
    spinsum.add_argument("--samples", type=int, help="number of random kinematic points (default: 1000)")
    spinsum.set_defaults(handler=spinsum_command)

    formfactor = commands.add_parser(
        "formfactor",
        parents=[common],
        argument_default=argparse.SUPPRESS,
        help="form factor closed forms against adaptive quadrature",
        description="Emit qr0, region, analytic, quadrature, relative_error over a log grid of q r0 in [0.1, 20].",
    )
    formfactor.add_argument("--grid", type=int, help="number of q r0 grid points (default: 50)")
    formfactor.add_argument("--tolerance", type=float, help="quadrature tolerance (default: 1e-10)")
    formfactor.add_argument("--max-evaluations", type=int, help="interior integrand evaluation budget (default: 1e6)")
    formfactor.add_argument("--max-points", type=int, help="exterior radial point budget (default: 1e5)")
    formfactor.set_defaults(handler=formfactor_command)
