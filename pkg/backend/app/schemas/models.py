"""Pydantic models for solenoid scattering cross sections."""

import math
from enum import Enum
from typing import Annotated, Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import ForwardSingularityError


class Regime(str, Enum):
    """Classification of x = q r0."""

    SMALL_X = "small_x"
    INTERMEDIATE = "intermediate"
    ASYMPTOTIC = "asymptotic"


class FormulaType(str, Enum):
    """Cross-section formulas available by tag."""

    MASTER = "master"
    HELICITY = "helicity"
    AB = "ab"
    LL = "ll"
    SMALL_X = "small-x"
    SMALL_X_SMALL_THETA = "small-x-small-theta"
    QUANTIZED = "quantized"
    QUANTIZED_SMALL_THETA = "quantized-small-theta"
    ENVELOPE = "envelope"
    ASYMPTOTIC = "asymptotic"
    ASSEMBLED = "assembled"


class BesselBranch(str, Enum):
    """Evaluation branch used for a Bessel value."""

    SERIES = "series"
    ASYMPTOTIC = "asymptotic"


class BesselEval(BaseModel):
    """A Bessel function value with its branch and error estimate."""

    model_config = ConfigDict(frozen=True)

    value: float
    branch: BesselBranch
    est_error: float = Field(..., ge=0)


# ---------------------------------------------------------------------------
# Units, beam and solenoid
# ---------------------------------------------------------------------------


class UnitSystem(BaseModel):
    """Values of hbar, c and the unit charge in one consistent unit system."""

    model_config = ConfigDict(frozen=True)

    hbar: float = Field(..., gt=0, description="Reduced Planck constant (erg s)")
    c: float = Field(..., gt=0, description="Speed of light (cm/s)")
    e_charge: float = Field(..., gt=0, description="Unit charge (esu)")
    label: str = Field(..., description="Human-readable name")
    mev: float = Field(1.0, gt=0, description="Energy of one MeV in this system")
    electron_mass: float = Field(0.0, ge=0, description="Electron mass in this system")


class SpinAveraged(BaseModel):
    """Unpolarized beam; cross sections average the incident spin."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["spin_averaged"] = "spin_averaged"


class Helicity(BaseModel):
    """Helicity-resolved beam with incident and outgoing helicities."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["helicity"] = "helicity"
    lambda_i: int = Field(..., description="Incident helicity, +1 or -1")
    lambda_f: int = Field(..., description="Outgoing helicity, +1 or -1")

    @field_validator("lambda_i", "lambda_f")
    @classmethod
    def validate_sign(cls, v: int) -> int:
        if v not in (-1, 1):
            raise ValueError("helicity must be +1 or -1")
        return v


Polarization = Annotated[SpinAveraged | Helicity, Field(discriminator="kind")]


class BeamSpec(BaseModel):
    """Incident particle: mass, momentum, charge and polarization."""

    model_config = ConfigDict(frozen=True)

    mass: float = Field(..., ge=0)
    momentum_p: float = Field(..., ge=0)
    charge: float = Field(..., gt=0)
    polarization: Polarization = Field(default_factory=SpinAveraged)
    f_factor: int = Field(1, description="1 or 2 depending on final polarization")

    @field_validator("f_factor")
    @classmethod
    def validate_f_factor(cls, v: int) -> int:
        if v not in (1, 2):
            raise ValueError("f_factor must be 1 or 2")
        return v


class SolenoidSpec(BaseModel):
    """Solenoid radius with either an explicit flux or a number of flux quanta."""

    model_config = ConfigDict(frozen=True)

    r0: float = Field(..., gt=0)
    flux: float | None = Field(None, description="Magnetic flux (gauss cm^2)")
    quanta_n: int | None = Field(None, ge=0, description="Flux as a multiple of the flux quantum")

    @model_validator(mode="after")
    def exactly_one_flux(self) -> "SolenoidSpec":
        if (self.flux is None) == (self.quanta_n is None):
            raise ValueError("exactly one of flux or quanta_n must be given")
        if self.flux is not None and not math.isfinite(self.flux):
            raise ValueError("flux must be finite")
        return self

    def flux_value(self, u: UnitSystem) -> float:
        """Resolve the flux under ``u`` (n * 2 pi hbar c / e for the quanta form)."""
        if self.quanta_n is not None:
            return self.quanta_n * 2.0 * math.pi * u.hbar * u.c / u.e_charge
        return self.flux


# ---------------------------------------------------------------------------
# Kinematics and cross sections
# ---------------------------------------------------------------------------


class ScatterPoint(BaseModel):
    """Scattering angle; momentum transfer and x follow from beam and solenoid."""

    model_config = ConfigDict(frozen=True)

    theta: float

    @field_validator("theta")
    @classmethod
    def validate_theta(cls, v: float) -> float:
        if not math.isfinite(v) or abs(v) > math.pi:
            raise ValueError("theta must be finite with |theta| <= pi")
        if v == 0.0:
            raise ForwardSingularityError()
        return v

    @property
    def sin_half(self) -> float:
        """|sin(theta/2)|."""
        return abs(math.sin(0.5 * self.theta))

    def transfer(self, p: float, hbar: float) -> float:
        """Momentum transfer q = 2 p |sin(theta/2)| / hbar."""
        return 2.0 * p * self.sin_half / hbar

    def x(self, p: float, r0: float, hbar: float) -> float:
        """Dimensionless x = q r0."""
        return self.transfer(p, hbar) * r0


class XsecValue(BaseModel):
    """Cross section per unit solenoid length per radian."""

    model_config = ConfigDict(frozen=True)

    value: float = Field(..., ge=0, description="d sigma / (d x3 d theta)")
    formula: FormulaType
    regime: Regime
    x: float | None = Field(None, ge=0, description="q r0 at the evaluation point")


class FourVector(BaseModel):
    """Contravariant four-vector with metric (+,-,-,-), all components in momentum units."""

    model_config = ConfigDict(frozen=True)

    t: float
    x1: float
    x2: float
    x3: float

    @classmethod
    def on_shell(cls, mc: float, px: float, py: float, pz: float) -> "FourVector":
        """Positive-energy momentum with t = E/c = sqrt(|p|^2 + (mc)^2)."""
        return cls(t=math.sqrt(px * px + py * py + pz * pz + mc * mc), x1=px, x2=py, x3=pz)

    def dot(self, other: "FourVector") -> float:
        return self.t * other.t - self.x1 * other.x1 - self.x2 * other.x2 - self.x3 * other.x3

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(t=self.t + other.t, x1=self.x1 + other.x1, x2=self.x2 + other.x2, x3=self.x3 + other.x3)

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector(t=self.t - other.t, x1=self.x1 - other.x1, x2=self.x2 - other.x2, x3=self.x3 - other.x3)

    def __mul__(self, k: float) -> "FourVector":
        return FourVector(t=k * self.t, x1=k * self.x1, x2=k * self.x2, x3=k * self.x3)

    __rmul__ = __mul__

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    @property
    def spatial_norm(self) -> float:
        return math.sqrt(self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3)

    def rotated_z(self, angle: float) -> "FourVector":
        """Rotate the spatial part about x3."""
        c, s = math.cos(angle), math.sin(angle)
        return FourVector(t=self.t, x1=c * self.x1 - s * self.x2, x2=s * self.x1 + c * self.x2, x3=self.x3)


class GammaSet(BaseModel):
    """Dirac matrices gamma^0..gamma^3 and the 4x4 identity."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    gamma: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    identity: np.ndarray
    label: str = "bjorken-drell"


class DiracSpinor(BaseModel):
    """Positive-energy Dirac spinor u(p, s)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    components: np.ndarray = Field(..., description="Four complex components")
    momentum: FourVector
    spin: int = Field(..., description="+1/-1 spin label")
    basis: Literal["spin_z", "helicity"] = "spin_z"


class DeltaFlag(str, Enum):
    """Status of a symbolic delta-function constraint."""

    SATISFIED = "satisfied"
    VIOLATED = "violated"


class UniformFieldCoefficient(BaseModel):
    """Finite coefficient of the uniform-field cross section plus delta(q1) delta(q2) flags."""

    model_config = ConfigDict(frozen=True)

    coefficient: float | None = Field(None, description="None when sin(theta) = 0")
    current_sq: float = Field(..., ge=0)
    delta_q1: DeltaFlag
    delta_q2: DeltaFlag


# ---------------------------------------------------------------------------
# Form factors
# ---------------------------------------------------------------------------


class FormFactorRegion(str, Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"
    COMBINED = "combined"


class FormFactorMethod(str, Enum):
    ANALYTIC = "analytic"
    QUADRATURE = "quadrature"


class PlanarTransferQ(BaseModel):
    """Momentum transfer (inverse length) in the plane perpendicular to the solenoid."""

    model_config = ConfigDict(frozen=True)

    q1: float
    q2: float

    @model_validator(mode="after")
    def nonzero(self) -> "PlanarTransferQ":
        if not (math.isfinite(self.q1) and math.isfinite(self.q2)):
            raise ValueError("q components must be finite")
        if self.q1 == 0.0 and self.q2 == 0.0:
            raise ForwardSingularityError("forward singularity: q = 0 is excluded from form factors")
        return self

    @classmethod
    def from_scattering(cls, p: float, theta: float, hbar: float) -> "PlanarTransferQ":
        """q = (p_f - p_i)/hbar for p_i along x1 rotated by theta in the x1-x2 plane."""
        k = p / hbar
        # cos(theta) - 1 written as -2 sin^2(theta/2) keeps precision at small angles
        s = math.sin(0.5 * theta)
        return cls(q1=-2.0 * k * s * s, q2=k * math.sin(theta))

    @property
    def magnitude(self) -> float:
        return math.hypot(self.q1, self.q2)

    @property
    def direction(self) -> tuple[float, float]:
        q = self.magnitude
        return (self.q1 / q, self.q2 / q)

    def rotated(self, angle: float) -> "PlanarTransferQ":
        c, s = math.cos(angle), math.sin(angle)
        return PlanarTransferQ(q1=c * self.q1 - s * self.q2, q2=s * self.q1 + c * self.q2)


class FormFactorValue(BaseModel):
    """Complex vector coefficient of a planar Fourier integral."""

    model_config = ConfigDict(frozen=True)

    coefficient: tuple[complex, complex]
    region: FormFactorRegion
    method: FormFactorMethod
    achieved_error: float | None = Field(None, ge=0, description="Quadrature error estimate")
    evaluations: int | None = Field(None, ge=0, description="Integrand evaluations used")

    def along(self, direction: tuple[float, float]) -> complex:
        """Project onto a unit direction (typically q/|q|)."""
        return self.coefficient[0] * direction[0] + self.coefficient[1] * direction[1]

    @property
    def norm(self) -> float:
        return math.hypot(abs(self.coefficient[0]), abs(self.coefficient[1]))


# ---------------------------------------------------------------------------
# Classical limit
# ---------------------------------------------------------------------------


class RegimeReport(BaseModel):
    """Where a scattering configuration sits relative to the perturbative and classical regimes."""

    model_config = ConfigDict(frozen=True)

    x: float = Field(..., ge=0)
    flux_ratio: float = Field(..., description="e Phi / (2 hbar c)")
    regime: Regime
    perturbative_ok: bool


class ScanResult(BaseModel):
    """Sampled cross sections along a scale factor with a log-log envelope fit."""

    variable: Literal["hbar", "r0"]
    scales: list[float]
    sigma: list[float]
    maxima_scales: list[float]
    maxima_sigma: list[float]
    slope: float
    slope_stderr: float = Field(..., ge=0)
    intercept: float

    @model_validator(mode="after")
    def ordered(self) -> "ScanResult":
        if len(self.scales) != len(self.sigma):
            raise ValueError("scales and sigma differ in length")
        if any(b <= a for a, b in zip(self.scales, self.scales[1:])):
            raise ValueError("scales must be strictly increasing")
        if not math.isfinite(self.slope):
            raise ValueError("slope must be finite")
        return self

    @property
    def n_maxima(self) -> int:
        return len(self.maxima_scales)

    def summary(self) -> dict[str, Any]:
        return {
            "variable": self.variable,
            "slope": self.slope,
            "stderr": self.slope_stderr,
            "n_maxima": self.n_maxima,
        }


class WindowAverage(BaseModel):
    """Mean of the cross section over an angular window."""

    model_config = ConfigDict(frozen=True)

    theta_center: float
    width: float = Field(..., gt=0)
    samples: int = Field(..., ge=2)
    mean: float = Field(..., ge=0)
    envelope: float = Field(..., gt=0, description="classical envelope at theta_center")
    oscillations: float = Field(..., ge=0, description="cos^2 periods inside the window")

    @property
    def ratio(self) -> float:
        return self.mean / self.envelope


# ---------------------------------------------------------------------------
# Datasets and verification
# ---------------------------------------------------------------------------


class Figure1Spec(BaseModel):
    """Parameters of the polar-plot dataset of d sigma/(d x3 d theta) x 1e52."""

    flux: float = Field(4.3e-7, description="Flux quoted with the plot (gauss cm^2)")
    quanta_n: int | None = Field(1, ge=0, description="Flux quanta; overrides flux when set")
    r0: float = Field(1.0, gt=0, description="Solenoid radius (cm)")
    energies_mev: list[float] = Field(
        default_factory=lambda: [1.0 + 2.0 * k for k in range(25)],
        description="Kinetic energies of the incident electrons",
    )
    mass: float | None = Field(None, ge=0, description="Particle mass (electron if None)")
    scale: float = Field(1e52, gt=0)
    theta_band: float = Field(1e-3, gt=0, lt=math.pi, description="Excluded |theta| band around 0")
    theta_points: int = Field(360, ge=2, description="Grid points on each side of theta = 0")
    f_factor: int = 1

    @field_validator("energies_mev")
    @classmethod
    def validate_energies(cls, v: list[float]) -> list[float]:
        if not v or any(not math.isfinite(e) or e <= 0 for e in v):
            raise ValueError("energies must be positive and finite")
        return v


class Dataset(BaseModel):
    """Tabular output: ordered column names and records keyed by them."""

    columns: list[str]
    rows: list[dict[str, Any]] = Field(default_factory=list)
    summary: dict[str, Any] = Field(default_factory=dict)


class VerificationCheck(BaseModel):
    """One oracle comparison."""

    name: str
    max_residual: float
    tolerance: float
    points: int = Field(..., ge=0)

    @property
    def passed(self) -> bool:
        return math.isfinite(self.max_residual) and self.max_residual <= self.tolerance


class VerificationReport(BaseModel):
    """Outcome of a verification suite."""

    suite: str
    checks: list[VerificationCheck]
    seed: int | None = None
    elapsed_ms: float = 0.0
    detail: Dataset | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)
