"""Bessel functions J0 and J1 of real non-negative argument.

Small arguments (x <= 12) use the ascending power series summed with
``math.fsum``; larger arguments use the Cephes rational asymptotic
expansions exposed by ``scipy.special``. Zeros of J0 and J1 are located by
bracketed root finding around McMahon's estimate and cached.
"""

import logging
import math
from functools import lru_cache

import numpy as np
from scipy import optimize, special

from ..errors import DomainError
from ..schemas import BesselBranch, BesselEval

logger = logging.getLogger(__name__)

SERIES_SWITCH = 12.0
MAX_ZERO_INDEX = 100

_EPS = np.finfo(float).eps


def _check_argument(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise DomainError(f"Bessel argument must be finite and >= 0, got {x}")
    return x


def _series(order: int, x: float) -> BesselEval:
    half = 0.5 * x
    step = -half * half
    term = half if order == 1 else 1.0
    terms = [term]
    k = 0
    while True:
        k += 1
        term *= step / (k * (k + order))
        terms.append(term)
        # terms shrink monotonically once k exceeds x/2
        if k > half and abs(term) <= _EPS * 1e-3 * abs(terms[0] or 1.0):
            break
        if term == 0.0:
            break
    value = math.fsum(terms)
    abs_sum = math.fsum(abs(t) for t in terms)
    return BesselEval(
        value=value,
        branch=BesselBranch.SERIES,
        est_error=4.0 * _EPS * abs_sum + abs(terms[-1]),
    )


def _asymptotic(order: int, x: float) -> BesselEval:
    value = float(special.j1(x) if order == 1 else special.j0(x))
    return BesselEval(
        value=value,
        branch=BesselBranch.ASYMPTOTIC,
        est_error=8.0 * _EPS * math.sqrt(2.0 / (math.pi * x)),
    )


def bessel_j0(x: float) -> BesselEval:
    """J0(x) for finite x >= 0."""
    x = _check_argument(x)
    if x <= SERIES_SWITCH:
        return _series(0, x)
    return _asymptotic(0, x)


def bessel_j1(x: float) -> BesselEval:
    """J1(x) for finite x >= 0."""
    x = _check_argument(x)
    if x <= SERIES_SWITCH:
        return _series(1, x)
    return _asymptotic(1, x)


def bessel_j1_array(x: np.ndarray) -> np.ndarray:
    """Vectorized J1 with the same branch rule as ``bessel_j1``."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(x < 0):
        raise DomainError("Bessel arguments must be finite and >= 0")
    out = np.asarray(special.j1(x), dtype=float)
    small = x <= SERIES_SWITCH
    if np.any(small):
        out = out.copy()
        out[small] = [_series(1, float(v)).value for v in x[small]]
    return out


def bessel_j1_asymptotic(x: float) -> float:
    """Leading asymptotic form -sqrt(2/(pi x)) cos(x - 3 pi/4), sign as quoted.

    Only |J1|^2 enters the cross sections, so the overall sign is immaterial.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"asymptotic form requires x > 0, got {x}")
    return -math.sqrt(2.0 / (math.pi * x)) * math.cos(x - 0.75 * math.pi)


def bessel_oracle(order: int, x: float) -> float:
    """J_n(x) from (1/pi) int_0^pi cos(n t - x sin t) dt by the periodic trapezoid rule.

    The integrand is smooth and 2 pi periodic, so N > x + order + 100 nodes
    converge to machine precision.
    """
    x = _check_argument(x)
    n = 2 * math.ceil(x) + 128
    t = np.arange(n) * (2.0 * math.pi / n)
    return float(np.mean(np.cos(order * t - x * np.sin(t))))


def _check_index(k: int) -> int:
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= MAX_ZERO_INDEX:
        raise DomainError(f"zero index must be an integer in [1, {MAX_ZERO_INDEX}], got {k}")
    return int(k)


def _bracketed_root(func, estimate: float, order: int, k: int) -> float:
    a, b = estimate - 0.5, estimate + 0.5
    fa, fb = func(a), func(b)
    if fa * fb > 0:
        raise DomainError(f"could not bracket zero {k} of J{order} near {estimate:.6f}")
    return optimize.brentq(func, a, b, xtol=1e-14, rtol=4 * _EPS, maxiter=200)


@lru_cache(maxsize=None)
def bessel_j1_zero(k: int) -> float:
    """k-th positive zero j_{1,k} of J1."""
    k = _check_index(k)
    beta = (k + 0.25) * math.pi
    estimate = beta - 3.0 / (8.0 * beta)
    root = _bracketed_root(lambda v: bessel_j1(v).value, estimate, 1, k)
    logger.debug(f"j_1,{k} = {root:.15g}")
    return root


@lru_cache(maxsize=None)
def bessel_j0_zero(k: int) -> float:
    """k-th positive zero j_{0,k} of J0."""
    k = _check_index(k)
    beta = (k - 0.25) * math.pi
    estimate = beta + 1.0 / (8.0 * beta)
    root = _bracketed_root(lambda v: bessel_j0(v).value, estimate, 0, k)
    logger.debug(f"j_0,{k} = {root:.15g}")
    return root
