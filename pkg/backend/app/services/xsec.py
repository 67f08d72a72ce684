"""Differential cross sections d sigma / (d x3 d theta) for a solenoidal field.

All values are per unit solenoid length per radian. The Aharonov-Bohm and
Landau-Lifshitz reference forms are interpreted in the same units so they can
be compared directly with the Born result. Every solenoidal formula depends
on theta only through |sin(theta/2)| or theta^2 and is therefore even in theta.
"""

import logging
import math
from collections.abc import Callable, Sequence

import numpy as np

from ..config import Settings, get_settings
from ..errors import DomainError, PolarizationError
from ..schemas import (
    BeamSpec,
    DeltaFlag,
    FormulaType,
    FourVector,
    Helicity,
    PlanarTransferQ,
    Regime,
    ScatterPoint,
    SolenoidSpec,
    UniformFieldCoefficient,
    UnitSystem,
    XsecValue,
)
from .formfactor import combined_coefficient
from .specfun import bessel_j1, bessel_j1_array
from .spinor import ELASTIC_TOLERANCE, current_sq_avg, current_sq_uniform, elastic_pair

logger = logging.getLogger(__name__)


def classify_x(x: float, settings: Settings | None = None) -> Regime:
    """small_x below the small-x threshold, asymptotic above the asymptotic one."""
    settings = settings or get_settings()
    if x < settings.small_x_threshold:
        return Regime.SMALL_X
    if x > settings.asymptotic_threshold:
        return Regime.ASYMPTOTIC
    return Regime.INTERMEDIATE


def _require_momentum(p: float) -> float:
    if not (math.isfinite(p) and p > 0):
        raise DomainError(f"momentum must be > 0, got {p}")
    return p


def _point(theta: float | ScatterPoint) -> ScatterPoint:
    return theta if isinstance(theta, ScatterPoint) else ScatterPoint(theta=theta)


def _value(value: float, formula: FormulaType, x: float | None) -> XsecValue:
    regime = Regime.SMALL_X if x is None else classify_x(x)
    return XsecValue(value=value, formula=formula, regime=regime, x=x)


def _require_spin_averaged(beam: BeamSpec) -> None:
    if isinstance(beam.polarization, Helicity):
        raise PolarizationError("beam is helicity-polarized: use helicity_xsec")


def master_xsec(beam: BeamSpec, sol: SolenoidSpec, pt: ScatterPoint, u: UnitSystem) -> XsecValue:
    """(1/f)(hbar/c^2)(e Phi/r0)^2 |J1(x)|^2 / (8 pi p^3 sin^4(theta/2))."""
    _require_spin_averaged(beam)
    p = _require_momentum(beam.momentum_p)
    s = pt.sin_half
    x = pt.x(p, sol.r0, u.hbar)
    j1 = bessel_j1(x).value
    coupling = beam.charge * sol.flux_value(u) / sol.r0
    value = (u.hbar / (u.c * u.c)) * coupling * coupling * j1 * j1 / (8.0 * math.pi * p**3 * s**4)
    return _value(value / beam.f_factor, FormulaType.MASTER, x)


def helicity_xsec(
    beam: BeamSpec,
    sol: SolenoidSpec,
    pt: ScatterPoint,
    u: UnitSystem,
    lambda_i: int | None = None,
    lambda_f: int | None = None,
) -> XsecValue:
    """(1/2 pi)(hbar/c^2)(e Phi/r0)^2 |J1|^2 / (4^3 p^3 sin^4(theta/2)) (1 + lambda_i lambda_f)^2.

    Helicities default to those of a helicity-polarized beam.
    """
    if lambda_i is None or lambda_f is None:
        if not isinstance(beam.polarization, Helicity):
            raise PolarizationError("helicities required: pass lambda_i/lambda_f or use a helicity-polarized beam")
        lambda_i = beam.polarization.lambda_i if lambda_i is None else lambda_i
        lambda_f = beam.polarization.lambda_f if lambda_f is None else lambda_f
    if lambda_i not in (-1, 1) or lambda_f not in (-1, 1):
        raise DomainError(f"helicities must be +1 or -1, got ({lambda_i}, {lambda_f})")

    p = _require_momentum(beam.momentum_p)
    s = pt.sin_half
    x = pt.x(p, sol.r0, u.hbar)
    factor = float((1 + lambda_i * lambda_f) ** 2)
    if factor == 0.0:
        return _value(0.0, FormulaType.HELICITY, x)
    j1 = bessel_j1(x).value
    coupling = beam.charge * sol.flux_value(u) / sol.r0
    value = (u.hbar / (u.c * u.c)) * coupling * coupling * j1 * j1 / (2.0 * math.pi * 64.0 * p**3 * s**4)
    return _value(value * factor, FormulaType.HELICITY, x)


def ab_exact(flux: float, p: float, theta: float | ScatterPoint, u: UnitSystem) -> XsecValue:
    """hbar sin^2(e Phi / 2 hbar c) / (2 pi p sin^2(theta/2))."""
    pt = _point(theta)
    p = _require_momentum(p)
    s = pt.sin_half
    phase = math.sin(u.e_charge * flux / (2.0 * u.hbar * u.c))
    value = u.hbar * phase * phase / (2.0 * math.pi * p * s * s)
    return _value(value, FormulaType.AB, None)


def ll_small_angle(flux: float, p: float, theta: float | ScatterPoint, u: UnitSystem) -> XsecValue:
    """e^2 Phi^2 / (2 pi hbar c^2 p theta^2)."""
    pt = _point(theta)
    p = _require_momentum(p)
    value = (u.e_charge * flux) ** 2 / (2.0 * math.pi * u.hbar * u.c * u.c * p * pt.theta**2)
    return _value(value, FormulaType.LL, None)


def small_x_reduction(beam: BeamSpec, sol: SolenoidSpec, pt: ScatterPoint, u: UnitSystem) -> XsecValue:
    """(1/f) e^2 Phi^2 / (8 pi c^2 hbar p sin^2(theta/2))."""
    _require_spin_averaged(beam)
    p = _require_momentum(beam.momentum_p)
    s = pt.sin_half
    value = (beam.charge * sol.flux_value(u)) ** 2 / (8.0 * math.pi * u.c * u.c * u.hbar * p * s * s)
    return _value(value / beam.f_factor, FormulaType.SMALL_X, pt.x(p, sol.r0, u.hbar))


def small_x_small_theta(beam: BeamSpec, sol: SolenoidSpec, pt: ScatterPoint, u: UnitSystem) -> XsecValue:
    """(1/f) e^2 Phi^2 / (2 pi c^2 hbar p theta^2)."""
    _require_spin_averaged(beam)
    p = _require_momentum(beam.momentum_p)
    value = (beam.charge * sol.flux_value(u)) ** 2 / (2.0 * math.pi * u.c * u.c * u.hbar * p * pt.theta**2)
    return _value(value / beam.f_factor, FormulaType.SMALL_X_SMALL_THETA, pt.x(p, sol.r0, u.hbar))


def _check_quanta(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"number of flux quanta must be a non-negative integer, got {n}")
    return int(n)


def _check_f(f: int) -> int:
    if f not in (1, 2):
        raise DomainError(f"f must be 1 or 2, got {f}")
    return f


def quantized_xsec(
    n: int, r0: float, p: float, theta: float | ScatterPoint, f: int, u: UnitSystem
) -> XsecValue:
    """n^2 hbar^3 (pi/f) |J1(x)|^2 / (2 r0^2 p^3 sin^4(theta/2)); independent of the charge."""
    n = _check_quanta(n)
    f = _check_f(f)
    pt = _point(theta)
    p = _require_momentum(p)
    if not (math.isfinite(r0) and r0 > 0):
        raise DomainError(f"solenoid radius must be > 0, got {r0}")
    s = pt.sin_half
    x = pt.x(p, r0, u.hbar)
    j1 = bessel_j1(x).value
    value = n * n * u.hbar**3 * (math.pi / f) * j1 * j1 / (2.0 * r0 * r0 * p**3 * s**4)
    return _value(value, FormulaType.QUANTIZED, x)


def quantized_small_theta(n: int, p: float, theta: float | ScatterPoint, f: int, u: UnitSystem) -> XsecValue:
    """2 pi hbar n^2 / (f p theta^2), the joint x << 1, theta << 1 limit of quantized_xsec."""
    n = _check_quanta(n)
    f = _check_f(f)
    pt = _point(theta)
    p = _require_momentum(p)
    value = 2.0 * math.pi * u.hbar * n * n / (f * p * pt.theta**2)
    return _value(value, FormulaType.QUANTIZED_SMALL_THETA, None)


def classical_envelope(beam: BeamSpec, sol: SolenoidSpec, pt: ScatterPoint, u: UnitSystem) -> XsecValue:
    """hbar^2 (1/f) (e Phi / 2 pi c)^2 / (2 r0^3 p^4 |sin^5(theta/2)|)."""
    _require_spin_averaged(beam)
    p = _require_momentum(beam.momentum_p)
    s = pt.sin_half
    coupling = beam.charge * sol.flux_value(u) / (2.0 * math.pi * u.c)
    value = u.hbar**2 * coupling * coupling / (2.0 * sol.r0**3 * p**4 * s**5)
    return _value(value / beam.f_factor, FormulaType.ENVELOPE, pt.x(p, sol.r0, u.hbar))


def asymptotic_xsec(beam: BeamSpec, sol: SolenoidSpec, pt: ScatterPoint, u: UnitSystem) -> XsecValue:
    """Large-x form: the envelope times cos^2(x - 3 pi/4)."""
    envelope = classical_envelope(beam, sol, pt, u)
    oscillation = math.cos(envelope.x - 0.75 * math.pi) ** 2
    return _value(envelope.value * oscillation, FormulaType.ASYMPTOTIC, envelope.x)


def assembled_xsec(beam: BeamSpec, sol: SolenoidSpec, pt: ScatterPoint, u: UnitSystem) -> XsecValue:
    """Cross section rebuilt from the form factor C and the spin-averaged current W.

    sigma = (1/f) e^2 Phi^2 |C|^2 W / (32 pi^3 c^2 hbar^5 p q^2)
    """
    _require_spin_averaged(beam)
    p = _require_momentum(beam.momentum_p)
    if beam.mass <= 0:
        raise DomainError("the assembled cross section needs a massive beam")
    q = PlanarTransferQ.from_scattering(p, pt.theta, u.hbar)
    coefficient = combined_coefficient(q, sol.r0)
    c_sq = coefficient.norm**2
    p_i, p_f = elastic_pair(p, pt.theta, beam.mass * u.c)
    w = current_sq_avg(p_i, p_f)
    qm = q.magnitude
    flux = sol.flux_value(u)
    value = (beam.charge * flux) ** 2 * c_sq * w / (32.0 * math.pi**3 * u.c**2 * u.hbar**5 * p * qm * qm)
    return _value(value / beam.f_factor, FormulaType.ASSEMBLED, qm * sol.r0)


def uniform_field_coeff(
    beam: BeamSpec, B0: float, p_i: FourVector, p_f: FourVector, u: UnitSystem
) -> UniformFieldCoefficient:
    """Finite part 2 pi (e m B0)^2 |ubar_f gamma^1 u_i|^2 / (p^3 sin^2 theta) of the uniform-field result.

    The factor delta(q1) delta(q2) is reported through flags, never evaluated.
    Forward scattering (sin theta = 0) leaves the coefficient undefined (None).
    """
    w = current_sq_uniform(p_i, p_f)
    a, b = p_i.spatial, p_f.spatial
    p = float(np.linalg.norm(a))
    tol = ELASTIC_TOLERANCE * max(p, float(np.linalg.norm(b)))
    flag_1 = DeltaFlag.SATISFIED if abs(b[0] - a[0]) <= tol else DeltaFlag.VIOLATED
    flag_2 = DeltaFlag.SATISFIED if abs(b[1] - a[1]) <= tol else DeltaFlag.VIOLATED

    cross = float(np.linalg.norm(np.cross(a, b)))
    norm = p * float(np.linalg.norm(b))
    coefficient = None
    if norm > 0 and cross > 1e-15 * norm:
        sin_sq = (cross / norm) ** 2
        coefficient = 2.0 * math.pi * (beam.charge * beam.mass * B0) ** 2 * w / (p**3 * sin_sq)
    return UniformFieldCoefficient(coefficient=coefficient, current_sq=w, delta_q1=flag_1, delta_q2=flag_2)


# ---------------------------------------------------------------------------
# Formula dispatch and vectorized kernels
# ---------------------------------------------------------------------------


def evaluate(formula: FormulaType | str, beam: BeamSpec, sol: SolenoidSpec, pt: ScatterPoint, u: UnitSystem) -> XsecValue:
    """Evaluate a formula by tag with inputs drawn from beam and solenoid."""
    formula = FormulaType(formula)
    p = beam.momentum_p
    handlers: dict[FormulaType, Callable[[], XsecValue]] = {
        FormulaType.MASTER: lambda: master_xsec(beam, sol, pt, u),
        FormulaType.HELICITY: lambda: helicity_xsec(beam, sol, pt, u),
        FormulaType.AB: lambda: ab_exact(sol.flux_value(u), p, pt, u),
        FormulaType.LL: lambda: ll_small_angle(sol.flux_value(u), p, pt, u),
        FormulaType.SMALL_X: lambda: small_x_reduction(beam, sol, pt, u),
        FormulaType.SMALL_X_SMALL_THETA: lambda: small_x_small_theta(beam, sol, pt, u),
        FormulaType.QUANTIZED: lambda: quantized_xsec(_quanta_of(sol), sol.r0, p, pt, beam.f_factor, u),
        FormulaType.QUANTIZED_SMALL_THETA: lambda: quantized_small_theta(_quanta_of(sol), p, pt, beam.f_factor, u),
        FormulaType.ENVELOPE: lambda: classical_envelope(beam, sol, pt, u),
        FormulaType.ASYMPTOTIC: lambda: asymptotic_xsec(beam, sol, pt, u),
        FormulaType.ASSEMBLED: lambda: assembled_xsec(beam, sol, pt, u),
    }
    return handlers[formula]()


def _quanta_of(sol: SolenoidSpec) -> int:
    if sol.quanta_n is None:
        raise DomainError("quantized formulas need the solenoid flux given as a number of quanta")
    return sol.quanta_n


def symmetric_theta_grid(n: int, band: float) -> np.ndarray:
    """2n angles: n points on [band, pi] and their exact negatives."""
    if n < 2:
        raise DomainError(f"theta grid needs at least 2 points per side, got {n}")
    if not 0 < band < math.pi:
        raise DomainError(f"forward band must lie in (0, pi), got {band}")
    positive = np.linspace(band, math.pi, n)
    return np.concatenate([-positive[::-1], positive])


def theta_scan(
    formula: FormulaType | str,
    beam: BeamSpec,
    sol: SolenoidSpec,
    u: UnitSystem,
    thetas: Sequence[float],
) -> list[XsecValue]:
    """Evaluate ``formula`` at each angle of ``thetas``."""
    values = [evaluate(formula, beam, sol, ScatterPoint(theta=float(t)), u) for t in thetas]
    logger.info(f"Evaluated {formula} at {len(values)} angles")
    return values


def master_array(
    beam: BeamSpec,
    flux: float,
    r0: np.ndarray | float,
    theta: np.ndarray | float,
    hbar: np.ndarray | float,
    u: UnitSystem,
) -> np.ndarray:
    """master_xsec broadcast over r0, theta and hbar at a fixed flux."""
    _require_spin_averaged(beam)
    p = _require_momentum(beam.momentum_p)
    r0 = np.asarray(r0, dtype=float)
    hbar = np.asarray(hbar, dtype=float)
    s = np.abs(np.sin(0.5 * np.asarray(theta, dtype=float)))
    if np.any(s == 0):
        raise DomainError("forward singularity: theta = 0 (q = 0) is excluded")
    x = 2.0 * p * r0 * s / hbar
    j1 = bessel_j1_array(x)
    coupling = beam.charge * flux / r0
    value = (hbar / (u.c * u.c)) * coupling * coupling * j1 * j1 / (8.0 * math.pi * p**3 * s**4)
    return value / beam.f_factor
