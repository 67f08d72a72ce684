"""`xsec point` and `xsec scan-theta`."""

import argparse
import logging
import time

from ..schemas import Dataset, FormulaType
from ..services.xsec import evaluate, symmetric_theta_grid, theta_scan
from .context import RunContext, add_beam_args, add_solenoid_args, add_theta_grid_args

logger = logging.getLogger(__name__)

POINT_COLUMNS = [
    "formula",
    "inputs.units",
    "inputs.energy_mev",
    "inputs.momentum",
    "inputs.mass",
    "inputs.charge",
    "inputs.theta",
    "inputs.r0",
    "inputs.flux",
    "inputs.quanta",
    "inputs.f",
    "value_cm_per_rad",
    "regime",
    "x",
]
SCAN_COLUMNS = ["theta_rad", "sigma"]

_FORMULAS = [f.value for f in FormulaType]


def point_command(args: argparse.Namespace) -> int:
    """Evaluate one formula at one angle."""
    ctx = RunContext(args)
    pt = ctx.point()
    formula = FormulaType(ctx.config.formula)
    result = evaluate(formula, ctx.beam(), ctx.solenoid(), pt, ctx.units)
    record = {
        "formula": formula.value,
        "inputs": ctx.inputs(),
        "value_cm_per_rad": result.value,
        "regime": result.regime,
        "x": result.x,
    }
    logger.info(f"{formula.value} at theta = {pt.theta:.6g}: {result.value:.6e} ({result.regime.value})")
    ctx.write(Dataset(columns=POINT_COLUMNS, rows=[record]))
    return 0


def scan_theta_command(args: argparse.Namespace) -> int:
    """Evaluate one formula over the symmetric theta grid."""
    start = time.time()
    ctx = RunContext(args)
    cfg = ctx.config
    thetas = symmetric_theta_grid(cfg.theta_points, cfg.theta_band)
    values = theta_scan(cfg.formula, ctx.beam(), ctx.solenoid(), ctx.units, thetas)
    rows = [{"theta_rad": float(t), "sigma": v.value} for t, v in zip(thetas, values)]
    ctx.write(Dataset(columns=SCAN_COLUMNS, rows=rows))
    logger.info(f"theta scan of {cfg.formula} finished in {(time.time() - start) * 1000:.0f} ms")
    return 0


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Add the `xsec` command group."""
    group = subparsers.add_parser("xsec", help="evaluate cross-section formulas")
    commands = group.add_subparsers(dest="command", metavar="COMMAND", required=True)

    point = commands.add_parser(
        "point",
        parents=[common],
        argument_default=argparse.SUPPRESS,
        help="one formula at one angle",
        description="Evaluate d sigma/(d x3 d theta) for one formula at one scattering angle.",
    )
    point.add_argument("--formula", choices=_FORMULAS, help="formula tag (default: master)")
    point.add_argument("--theta", type=float, help="scattering angle in radians, 0 < |theta| <= pi (default: pi/2)")
    add_beam_args(point)
    add_solenoid_args(point)
    point.set_defaults(handler=point_command)

    scan = commands.add_parser(
        "scan-theta",
        parents=[common],
        argument_default=argparse.SUPPRESS,
        help="one formula over a symmetric theta grid",
        description="Evaluate one formula over a theta grid symmetric about 0 with a forward band excluded.",
    )
    scan.add_argument("--formula", choices=_FORMULAS, help="formula tag (default: master)")
    add_beam_args(scan)
    add_solenoid_args(scan)
    add_theta_grid_args(scan)
    scan.set_defaults(handler=scan_theta_command)
