"""Application configuration using pydantic-settings."""

import io
import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Literal

from dotenv.parser import Binding, parse_stream
from pydantic import AliasChoices, BaseModel, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import ConfigError

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Library settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="SOLENOID_XSEC_",
        env_file=".env",
        extra="ignore",
    )

    units: Literal["cgs", "natural"] = "cgs"
    log_level: str = "INFO"

    # Regime thresholds on x = q r0 and on the flux ratio e*Phi/(2 hbar c)
    small_x_threshold: float = 0.01
    asymptotic_threshold: float = 10.0
    flux_ratio_threshold: float = 0.1

    # Envelope extraction for the classical-limit scans
    samples_per_period: int = 8
    min_envelope_maxima: int = 5
    max_scan_points: int = 2_000_000

    # Form-factor quadrature oracle
    quadrature_tolerance: float = 1e-10
    interior_max_evaluations: int = 1_000_000
    exterior_max_points: int = 100_000
    exterior_periods: int = 20  # radial cutoff R = r0 + periods * 2*pi/q

    # Verification grids
    verification_seed: int = 20240917
    spinsum_samples: int = 1000
    formfactor_grid: int = 50

    max_workers: int = 4

    config_file: Path | None = Field(
        default=None,
        validation_alias=AliasChoices("SOLENOID_XSEC_CONFIG", "config_file"),
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


class RunConfig(BaseModel):
    """Parameters of a single CLI invocation.

    Merged from model defaults, an optional ``key = value`` file and command
    line flags, in increasing order of precedence.
    """

    units: Literal["cgs", "natural"] = Field("cgs", description="Unit system label")

    # Beam
    energy_mev: float | None = Field(None, ge=0, description="Kinetic energy in MeV")
    momentum: float | None = Field(None, ge=0, description="Momentum magnitude (overrides energy_mev)")
    mass: float | None = Field(None, ge=0, description="Particle mass (defaults to the electron)")
    charge: float | None = Field(None, gt=0, description="Particle charge (defaults to e)")
    f_factor: int = Field(1, description="Final-polarization factor f (1 or 2)")
    helicity_initial: int | None = Field(None, description="Incident helicity (+1 or -1)")
    helicity_final: int | None = Field(None, description="Outgoing helicity (+1 or -1)")

    # Solenoid
    r0_cm: float = Field(1.0, gt=0, description="Solenoid radius")
    flux: float | None = Field(None, description="Magnetic flux")
    quanta: int | None = Field(None, ge=0, description="Flux in units of the flux quantum")

    # Evaluation point and grids
    formula: str = Field("master", description="Cross-section formula tag")
    theta: float = Field(1.5707963267948966, description="Scattering angle in radians")
    theta_band: float = Field(1e-3, gt=0, description="Excluded band around theta = 0")
    theta_points: int = Field(360, ge=2, description="Grid points per theta half-line")

    # Scans
    points: int = Field(4000, ge=16, description="Number of scan samples")
    smin: float | None = Field(None, gt=0, description="Smallest scale factor")
    smax: float | None = Field(None, gt=0, description="Largest scale factor")

    # Window average
    theta_center: float = Field(1.5707963267948966, description="Window centre")
    window: float = Field(0.1, gt=0, description="Window width in radians")

    # Verification
    grid: int | None = Field(None, ge=2, description="Form-factor verification grid size")
    samples: int | None = Field(None, ge=1, description="Randomized spin-sum samples")
    tolerance: float | None = Field(None, gt=0, description="Form-factor quadrature tolerance")
    max_evaluations: int | None = Field(None, ge=1, description="Interior quadrature evaluation budget")
    max_points: int | None = Field(None, ge=1, description="Exterior quadrature radial point budget")

    # Output
    format: Literal["csv", "json"] = Field("csv", description="Output format")
    out: Path | None = Field(None, description="Output path (stdout if omitted)")

    @field_validator("f_factor")
    @classmethod
    def validate_f_factor(cls, v: int) -> int:
        if v not in (1, 2):
            raise ValueError("f must be 1 or 2")
        return v

    @field_validator("helicity_initial", "helicity_final")
    @classmethod
    def validate_helicity(cls, v: int | None) -> int | None:
        if v is not None and v not in (-1, 1):
            raise ValueError("helicity must be +1 or -1")
        return v


def _binding_line(binding: Binding) -> int:
    # a binding's text starts with any blank lines that precede it
    text = binding.original.string
    return binding.original.line + text[: len(text) - len(text.lstrip())].count("\n")


def parse_config_file(path: Path) -> dict[str, str]:
    """Parse a plain-text ``key = value`` configuration file (dotenv syntax)."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e.strerror or e}") from e

    known = set(RunConfig.model_fields)
    values: dict[str, str] = {}
    for binding in parse_stream(io.StringIO(text)):
        lineno = _binding_line(binding)
        if binding.error or (binding.key is not None and binding.value is None):
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {binding.original.string.strip()!r}")
        if binding.key is None:
            continue
        key = binding.key.replace("-", "_")
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = binding.value
    logger.debug(f"Loaded {len(values)} keys from {path}")
    return values


def load_run_config(
    overrides: dict[str, Any] | None = None,
    config_path: Path | None = None,
    settings: Settings | None = None,
) -> RunConfig:
    """Build a RunConfig from defaults, a config file and flag overrides."""
    settings = settings or get_settings()
    merged: dict[str, Any] = {"units": settings.units}

    path = config_path or settings.config_file
    if path is not None:
        merged.update(parse_config_file(Path(path)))

    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})

    try:
        return RunConfig.model_validate(merged)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(p) for p in first["loc"]) or "config"
        raise ConfigError(f"invalid value for {field}: {first['msg']}") from e
