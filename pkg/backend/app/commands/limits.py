"""`limits scan-hbar`, `limits scan-pr0` and `limits window`."""

import argparse
import logging

from ..schemas import Dataset, ScanResult
from ..services.limits import ClassicalLimitAnalyzer
from .context import RunContext, add_beam_args, add_solenoid_args, scale_range

logger = logging.getLogger(__name__)

SCAN_COLUMNS = ["s", "sigma"]
WINDOW_COLUMNS = ["theta_center", "width", "samples", "mean", "envelope", "ratio", "oscillations"]

HBAR_RANGE = (1e-4, 1e-2)
PR0_RANGE = (10.0, 1000.0)


def _emit_scan(ctx: RunContext, result: ScanResult) -> None:
    rows = [{"s": s, "sigma": sigma} for s, sigma in zip(result.scales, result.sigma)]
    ctx.write(Dataset(columns=SCAN_COLUMNS, rows=rows))
    ctx.write_summary(result.summary())


def scan_hbar_command(args: argparse.Namespace) -> int:
    ctx = RunContext(args)
    s_min, s_max = scale_range(ctx.config, HBAR_RANGE)
    analyzer = ClassicalLimitAnalyzer(ctx.settings)
    result = analyzer.hbar_scan(
        ctx.beam(), ctx.solenoid(), ctx.point(), ctx.units, s_min, s_max, ctx.config.points
    )
    _emit_scan(ctx, result)
    return 0


def scan_pr0_command(args: argparse.Namespace) -> int:
    ctx = RunContext(args)
    s_min, s_max = scale_range(ctx.config, PR0_RANGE)
    analyzer = ClassicalLimitAnalyzer(ctx.settings)
    result = analyzer.pr0_scan(
        ctx.beam(), ctx.solenoid(), ctx.point(), ctx.units, s_min, s_max, ctx.config.points
    )
    _emit_scan(ctx, result)
    return 0


def window_command(args: argparse.Namespace) -> int:
    ctx = RunContext(args)
    cfg = ctx.config
    analyzer = ClassicalLimitAnalyzer(ctx.settings)
    result = analyzer.window_average(
        ctx.beam(), ctx.solenoid(), ctx.units, cfg.theta_center, cfg.window, cfg.points
    )
    record = result.model_dump()
    record["ratio"] = result.ratio
    logger.info(f"window average / envelope = {result.ratio:.4f} over {result.oscillations:.1f} oscillations")
    ctx.write(Dataset(columns=WINDOW_COLUMNS, rows=[record]))
    return 0


def _add_scan_parser(
    commands: argparse._SubParsersAction,
    common: argparse.ArgumentParser,
    name: str,
    description: str,
    default_range: tuple[float, float],
    handler,
) -> None:
    parser = commands.add_parser(
        name, parents=[common], argument_default=argparse.SUPPRESS, help=description, description=description
    )
    parser.add_argument("--theta", type=float, help="scattering angle in radians (default: pi/2)")
    parser.add_argument("--points", type=int, help="minimum number of scan samples (default: 4000)")
    parser.add_argument("--smin", type=float, help=f"smallest scale factor (default: {default_range[0]:g})")
    parser.add_argument("--smax", type=float, help=f"largest scale factor (default: {default_range[1]:g})")
    add_beam_args(parser)
    add_solenoid_args(parser)
    parser.set_defaults(handler=handler)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Add the `limits` command group."""
    group = subparsers.add_parser("limits", help="classical-limit scans and averages")
    commands = group.add_subparsers(dest="command", metavar="COMMAND", required=True)

    _add_scan_parser(
        commands, common, "scan-hbar",
        "Scan hbar -> s*hbar and fit the envelope maxima; emits (s, sigma) and a fit summary.",
        HBAR_RANGE, scan_hbar_command,
    )
    _add_scan_parser(
        commands, common, "scan-pr0",
        "Scan r0 -> s*r0 at fixed hbar and fit the envelope maxima; emits (s, sigma) and a fit summary.",
        PR0_RANGE, scan_pr0_command,
    )

    window = commands.add_parser(
        "window",
        parents=[common],
        argument_default=argparse.SUPPRESS,
        help="theta-window average against the classical envelope",
        description="Average master_xsec over a theta window and compare it with the classical envelope.",
    )
    window.add_argument("--theta-center", type=float, help="window centre in radians (default: pi/2)")
    window.add_argument("--window", type=float, help="window width in radians (default: 0.1)")
    window.add_argument("--points", type=int, help="number of samples in the window (default: 4000)")
    add_beam_args(window)
    add_solenoid_args(window)
    window.set_defaults(handler=window_command)
