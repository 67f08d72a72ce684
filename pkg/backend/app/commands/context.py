"""Shared flag groups and the per-invocation run context."""

import argparse
import logging
import math
from pathlib import Path
from typing import Any

from ..config import RunConfig, Settings, get_settings, load_run_config
from ..errors import ConfigError
from ..schemas import BeamSpec, Dataset, Helicity, ScatterPoint, SolenoidSpec, SpinAveraged, UnitSystem
from ..services.emitter import emit, emit_summary
from ..services.units import momentum_from_kinetic_mev, unit_system

logger = logging.getLogger(__name__)

# argparse destinations that are not RunConfig fields
_CONTROL_KEYS = {"command", "group", "handler", "config", "log_level"}


def common_parser() -> argparse.ArgumentParser:
    """Parent parser with the flags every command accepts."""
    parent = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    group = parent.add_argument_group("common options")
    group.add_argument("--config", type=Path, help="key = value configuration file (flags override it)")
    group.add_argument("--units", choices=["cgs", "natural"], help="unit system (default: cgs)")
    group.add_argument("--format", choices=["csv", "json"], help="output format (default: csv)")
    group.add_argument("--out", type=Path, help="output file (default: stdout)")
    group.add_argument("--log-level", help="logging level for stderr diagnostics (default: INFO)")
    return parent


def add_beam_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("beam")
    group.add_argument("--energy-mev", type=float, help="kinetic energy in MeV")
    group.add_argument("--momentum", type=float, help="momentum magnitude in the unit system (overrides --energy-mev)")
    group.add_argument("--mass", type=float, help="particle mass in the unit system (default: electron)")
    group.add_argument("--charge", type=float, help="particle charge (default: unit charge e)")
    group.add_argument("--f", dest="f_factor", type=int, choices=[1, 2], help="final-polarization factor (default: 1)")
    group.add_argument("--helicity-initial", type=int, choices=[-1, 1], help="incident helicity; makes the beam polarized")
    group.add_argument("--helicity-final", type=int, choices=[-1, 1], help="outgoing helicity (default: incident)")


def add_solenoid_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("solenoid")
    group.add_argument("--r0-cm", type=float, help="solenoid radius (default: 1)")
    flux = group.add_mutually_exclusive_group()
    flux.add_argument("--flux", type=float, help="magnetic flux")
    flux.add_argument("--quanta", type=int, help="flux as a number of flux quanta (default: 1)")


def add_theta_grid_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("theta grid")
    group.add_argument("--theta-band", type=float, help="excluded |theta| band around 0 (default: 1e-3)")
    group.add_argument("--theta-points", type=int, help="grid points on each side of theta = 0 (default: 360)")


class RunContext:
    """Resolved configuration, unit system and output target of one command."""

    def __init__(self, args: argparse.Namespace, settings: Settings | None = None):
        self.settings = settings or get_settings()
        options = vars(args)
        overrides = {k: v for k, v in options.items() if k not in _CONTROL_KEYS}
        self.config: RunConfig = load_run_config(overrides, options.get("config"), self.settings)
        self.units: UnitSystem = unit_system(self.config.units)
        logger.debug(f"Run configuration: {self.config.model_dump(exclude_none=True)}")

    def momentum(self) -> float:
        cfg = self.config
        if cfg.momentum is not None:
            return cfg.momentum
        if cfg.energy_mev is None:
            raise ConfigError("one of --energy-mev or --momentum is required")
        return momentum_from_kinetic_mev(cfg.energy_mev, self.mass(), self.units)

    def mass(self) -> float:
        return self.units.electron_mass if self.config.mass is None else self.config.mass

    def beam(self) -> BeamSpec:
        cfg = self.config
        polarization = SpinAveraged()
        if cfg.helicity_initial is not None:
            final = cfg.helicity_initial if cfg.helicity_final is None else cfg.helicity_final
            polarization = Helicity(lambda_i=cfg.helicity_initial, lambda_f=final)
        elif cfg.helicity_final is not None:
            raise ConfigError("--helicity-final needs --helicity-initial")
        return BeamSpec(
            mass=self.mass(),
            momentum_p=self.momentum(),
            charge=self.units.e_charge if cfg.charge is None else cfg.charge,
            polarization=polarization,
            f_factor=cfg.f_factor,
        )

    def solenoid(self) -> SolenoidSpec:
        cfg = self.config
        if cfg.flux is not None and cfg.quanta is not None:
            raise ConfigError("give either flux or quanta, not both")
        if cfg.flux is None and cfg.quanta is None:
            return SolenoidSpec(r0=cfg.r0_cm, quanta_n=1)
        return SolenoidSpec(r0=cfg.r0_cm, flux=cfg.flux, quanta_n=cfg.quanta)

    def point(self, theta: float | None = None) -> ScatterPoint:
        return ScatterPoint(theta=self.config.theta if theta is None else theta)

    def inputs(self) -> dict[str, Any]:
        """Echo of the physical inputs for point records."""
        cfg = self.config
        beam, sol = self.beam(), self.solenoid()
        return {
            "units": cfg.units,
            "energy_mev": cfg.energy_mev,
            "momentum": beam.momentum_p,
            "mass": beam.mass,
            "charge": beam.charge,
            "theta": cfg.theta,
            "r0": sol.r0,
            "flux": sol.flux_value(self.units),
            "quanta": sol.quanta_n,
            "f": beam.f_factor,
        }

    def write(self, dataset: Dataset) -> None:
        emit(dataset, self.config.format, self.config.out)

    def write_summary(self, summary: dict[str, Any]) -> None:
        emit_summary(summary, self.config.out)


def scale_range(cfg: RunConfig, default: tuple[float, float]) -> tuple[float, float]:
    """(smin, smax) from the configuration, falling back to ``default``."""
    s_min = default[0] if cfg.smin is None else cfg.smin
    s_max = default[1] if cfg.smax is None else cfg.smax
    if not (math.isfinite(s_min) and math.isfinite(s_max)):
        raise ConfigError("smin and smax must be finite")
    return s_min, s_max
