"""`figure1`: the polar-plot dataset for electrons on a one-quantum solenoid."""

import argparse

from ..schemas import Figure1Spec
from ..services.figure import figure1_dataset
from .context import RunContext, add_theta_grid_args


def figure1_command(args: argparse.Namespace) -> int:
    ctx = RunContext(args)
    cfg = ctx.config
    fields = {
        "r0": cfg.r0_cm,
        "mass": cfg.mass,
        "theta_band": cfg.theta_band,
        "theta_points": cfg.theta_points,
        "f_factor": cfg.f_factor,
    }
    if cfg.flux is not None:
        fields.update(flux=cfg.flux, quanta_n=None)
    elif cfg.quanta is not None:
        fields["quanta_n"] = cfg.quanta
    ctx.write(figure1_dataset(Figure1Spec(**fields), ctx.units))
    return 0


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Add the `figure1` command."""
    parser = subparsers.add_parser(
        "figure1",
        parents=[common],
        argument_default=argparse.SUPPRESS,
        help="polar-plot dataset, sigma x 1e52 for 1-49 MeV electrons",
        description=(
            "Emit energy_mev, theta_rad, sigma_scaled for kinetic energies 1 to 49 MeV in 2 MeV steps "
            "on a solenoid of radius 1 carrying one flux quantum."
        ),
    )
    parser.add_argument("--r0-cm", type=float, help="solenoid radius (default: 1)")
    flux = parser.add_mutually_exclusive_group()
    flux.add_argument("--flux", type=float, help="explicit flux instead of quanta (default: unset)")
    flux.add_argument("--quanta", type=int, help="flux quanta (default: 1)")
    parser.add_argument("--mass", type=float, help="particle mass in the unit system (default: electron)")
    parser.add_argument("--f", dest="f_factor", type=int, choices=[1, 2], help="final-polarization factor (default: 1)")
    add_theta_grid_args(parser)
    parser.set_defaults(handler=figure1_command)
