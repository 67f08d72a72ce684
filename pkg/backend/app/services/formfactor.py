"""Planar Fourier integrals of the solenoid vector potential.

Interior (r < r0):   int e^{-i q.x} x_i d^2x
                     = 2 pi i r0^3 (q_i/q) [J0(q r0)/(q r0) - 2 J1(q r0)/(q r0)^2]
Exterior (r > r0):   int e^{-i q.x} x_i / r^2 d^2x = -2 pi i (q_i/q^2) J0(q r0)
Combined:            interior/r0^2 + exterior = -4 pi i q_i J1(q r0)/(q^3 r0)

Each closed form has an independent quadrature oracle. The interior oracle
integrates over the disk in polar coordinates with scipy's adaptive
``cubature``; the exterior oracle integrates the angle exactly and the radial
Bessel kernel with ``quad`` up to a cutoff, adding the analytic tail.
"""

import logging
import math

import numpy as np
from scipy import integrate, special

from ..config import get_settings
from ..errors import DomainError, QuadratureError
from ..schemas import FormFactorMethod, FormFactorRegion, FormFactorValue, PlanarTransferQ
from .specfun import bessel_j0, bessel_j1

logger = logging.getLogger(__name__)

# Below this x the bracket J0/x - 2 J1/x^2 is evaluated as -J2(x)/x
_SMALL_BRACKET_X = 0.5

MIN_TOLERANCE = 1e-12
MAX_TOLERANCE = 1e-4


def _check_r0(r0: float) -> None:
    if not (math.isfinite(r0) and r0 > 0):
        raise DomainError(f"solenoid radius must be > 0, got {r0}")


def _check_tolerance(tol: float) -> None:
    if not MIN_TOLERANCE <= tol <= MAX_TOLERANCE:
        raise DomainError(f"quadrature tolerance must lie in [{MIN_TOLERANCE:g}, {MAX_TOLERANCE:g}], got {tol:g}")


def interior_bracket(x: float) -> float:
    """J0(x)/x - 2 J1(x)/x^2 for x > 0."""
    if x < _SMALL_BRACKET_X:
        return -float(special.jv(2, x)) / x
    return bessel_j0(x).value / x - 2.0 * bessel_j1(x).value / (x * x)


def _imaginary_vector(q: PlanarTransferQ, scale: float) -> tuple[complex, complex]:
    d1, d2 = q.direction
    return (complex(0.0, scale * d1), complex(0.0, scale * d2))


def interior_analytic(q: PlanarTransferQ, r0: float) -> FormFactorValue:
    """Closed form of the interior integral."""
    _check_r0(r0)
    x = q.magnitude * r0
    scale = 2.0 * math.pi * r0**3 * interior_bracket(x)
    return FormFactorValue(
        coefficient=_imaginary_vector(q, scale),
        region=FormFactorRegion.INTERIOR,
        method=FormFactorMethod.ANALYTIC,
    )


def exterior_analytic(q: PlanarTransferQ, r0: float) -> FormFactorValue:
    """Closed form of the exterior integral."""
    _check_r0(r0)
    qm = q.magnitude
    scale = -2.0 * math.pi * bessel_j0(qm * r0).value / qm
    return FormFactorValue(
        coefficient=_imaginary_vector(q, scale),
        region=FormFactorRegion.EXTERIOR,
        method=FormFactorMethod.ANALYTIC,
    )


def combined_coefficient(q: PlanarTransferQ, r0: float) -> FormFactorValue:
    """interior_analytic / r0^2 + exterior_analytic."""
    interior = interior_analytic(q, r0)
    exterior = exterior_analytic(q, r0)
    inv_area = 1.0 / (r0 * r0)
    coefficient = tuple(a * inv_area + b for a, b in zip(interior.coefficient, exterior.coefficient))
    return FormFactorValue(
        coefficient=coefficient,
        region=FormFactorRegion.COMBINED,
        method=FormFactorMethod.ANALYTIC,
    )


def combined_closed_form(q: PlanarTransferQ, r0: float) -> FormFactorValue:
    """-4 pi i q_i J1(q r0) / (q^3 r0)."""
    _check_r0(r0)
    qm = q.magnitude
    scale = -4.0 * math.pi * bessel_j1(qm * r0).value / (qm * qm * r0)
    return FormFactorValue(
        coefficient=_imaginary_vector(q, scale),
        region=FormFactorRegion.COMBINED,
        method=FormFactorMethod.ANALYTIC,
    )


def interior_quadrature(
    q: PlanarTransferQ,
    r0: float,
    tol: float = 1e-10,
    max_evaluations: int | None = None,
) -> FormFactorValue:
    """Adaptive 2D quadrature of the interior integral over the disk."""
    _check_r0(r0)
    _check_tolerance(tol)
    budget = max_evaluations or get_settings().interior_max_evaluations
    q1, q2 = q.q1, q.q2
    evaluations = 0

    def integrand(points: np.ndarray) -> np.ndarray:
        nonlocal evaluations
        evaluations += points.shape[0]
        r, phi = points[:, 0], points[:, 1]
        c, s = np.cos(phi), np.sin(phi)
        phase = -(q1 * c + q2 * s) * r
        # Jacobian r times x_i = r (cos phi, sin phi)
        w = r * r
        re, im = np.cos(phase), np.sin(phase)
        return np.stack([w * c * re, w * c * im, w * s * re, w * s * im], axis=-1)

    floor = 1e-3 * r0**3
    result = integrate.cubature(
        integrand,
        a=np.array([0.0, 0.0]),
        b=np.array([r0, 2.0 * math.pi]),
        rule="gk21",
        rtol=tol / 8.0,
        atol=tol * floor / 8.0,
        max_subdivisions=max(1, budget // (21 * 21)),
    )
    est = np.asarray(result.estimate, dtype=float)
    err = float(np.linalg.norm(np.asarray(result.error, dtype=float)))
    coefficient = (complex(est[0], est[1]), complex(est[2], est[3]))
    magnitude = math.hypot(abs(coefficient[0]), abs(coefficient[1]))
    logger.debug(f"interior quadrature q r0={q.magnitude * r0:.6g}: {evaluations} evaluations, error {err:.3e}")

    if result.status != "converged" or err > tol * max(magnitude, floor):
        raise QuadratureError(
            f"interior quadrature did not converge at q r0 = {q.magnitude * r0:.6g} within {budget} evaluations",
            achieved_error=err,
        )
    return FormFactorValue(
        coefficient=coefficient,
        region=FormFactorRegion.INTERIOR,
        method=FormFactorMethod.QUADRATURE,
        achieved_error=err,
        evaluations=evaluations,
    )


def exterior_quadrature(
    q: PlanarTransferQ,
    r0: float,
    tol: float = 1e-10,
    max_points: int | None = None,
    cutoff: float | None = None,
) -> FormFactorValue:
    """Exterior integral as -2 pi i (q_i/q) int_{r0}^inf J1(q r) dr.

    The radial integral runs to ``cutoff`` (default r0 plus a configured
    number of oscillation periods) by adaptive quadrature; the remainder is
    the analytic tail J0(q R)/q.
    """
    _check_r0(r0)
    _check_tolerance(tol)
    settings = get_settings()
    budget = max_points or settings.exterior_max_points
    qm = q.magnitude
    radius = cutoff if cutoff is not None else r0 + settings.exterior_periods * 2.0 * math.pi / qm
    if radius < r0:
        raise DomainError(f"cutoff {radius} lies inside the solenoid radius {r0}")

    body, abserr, evaluations = 0.0, 0.0, 0
    if radius > r0:
        out = integrate.quad(
            lambda r: special.j1(qm * r),
            r0,
            radius,
            epsabs=tol * 1e-3 / qm,
            epsrel=tol,
            limit=max(1, budget // 21),
            full_output=1,
        )
        body, abserr, info = out[0], out[1], out[2]
        evaluations = int(info["neval"])
        if len(out) > 3:
            message = " ".join(str(out[3]).split())
            raise QuadratureError(f"exterior quadrature failed at q r0 = {qm * r0:.6g}: {message}", abserr)

    tail = bessel_j0(qm * radius).value / qm
    radial = body + tail
    if abserr > tol * max(abs(body), abs(radial), 1e-3 / qm):
        raise QuadratureError(f"exterior quadrature above tolerance at q r0 = {qm * r0:.6g}", abserr)
    logger.debug(f"exterior quadrature q r0={qm * r0:.6g}: R={radius:.6g}, {evaluations} evaluations")

    return FormFactorValue(
        coefficient=_imaginary_vector(q, -2.0 * math.pi * radial),
        region=FormFactorRegion.EXTERIOR,
        method=FormFactorMethod.QUADRATURE,
        achieved_error=2.0 * math.pi * abserr,
        evaluations=evaluations,
    )


def relative_difference(a: FormFactorValue, b: FormFactorValue) -> float:
    """||a - b|| / ||b|| on the complex coefficient vectors."""
    diff = math.hypot(abs(a.coefficient[0] - b.coefficient[0]), abs(a.coefficient[1] - b.coefficient[1]))
    ref = b.norm
    return diff / ref if ref > 0 else diff
