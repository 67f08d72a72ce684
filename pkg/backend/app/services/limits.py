"""Regime classification and classical-limit scans.

The perturbative cross section oscillates as cos^2(x - 3 pi/4) under an
envelope proportional to hbar^2 / r0^3. The scans here sample master_xsec
uniformly in x while hbar (or r0) is rescaled, pick out the local maxima of
the sampled series, and fit log(sigma_max) against log(scale).

Flux is resolved once with the unscaled unit system and held fixed during a
scan, so a solenoid given in flux quanta does not follow the rescaled hbar.
"""

import logging
import math
import time

import numpy as np
from scipy import stats

from ..config import Settings, get_settings
from ..errors import DomainError, InsufficientDataError, RegimeError
from ..schemas import (
    BeamSpec,
    RegimeReport,
    ScanResult,
    ScatterPoint,
    SolenoidSpec,
    UnitSystem,
    WindowAverage,
)
from .specfun import MAX_ZERO_INDEX, bessel_j1_zero
from .xsec import classical_envelope, classify_x, master_array, master_xsec, small_x_reduction

logger = logging.getLogger(__name__)


class ClassicalLimitAnalyzer:
    """Regime checks, hbar / r0 scans and angular window averages."""

    def __init__(self, settings: Settings | None = None):
        self.settings = settings or get_settings()

    def regime_classify(self, beam: BeamSpec, sol: SolenoidSpec, pt: ScatterPoint, u: UnitSystem) -> RegimeReport:
        """x = q r0 and flux ratio e Phi / (2 hbar c) with their regime labels."""
        x = pt.x(beam.momentum_p, sol.r0, u.hbar)
        flux_ratio = beam.charge * sol.flux_value(u) / (2.0 * u.hbar * u.c)
        return RegimeReport(
            x=x,
            flux_ratio=flux_ratio,
            regime=classify_x(x, self.settings),
            perturbative_ok=abs(flux_ratio) < self.settings.flux_ratio_threshold,
        )

    # ------------------------------------------------------------------
    # Scans
    # ------------------------------------------------------------------

    def _x_grid(self, x_lo: float, x_hi: float, n_samples: int) -> np.ndarray:
        period = math.pi
        required = math.ceil(self.settings.samples_per_period * (x_hi - x_lo) / period) + 1
        n = max(n_samples, required)
        if n > self.settings.max_scan_points:
            raise DomainError(
                f"scan over x in [{x_lo:.4g}, {x_hi:.4g}] needs {n} samples "
                f"(limit {self.settings.max_scan_points}); narrow the scale range"
            )
        if n > n_samples:
            logger.warning(f"Raising scan size from {n_samples} to {n} for {self.settings.samples_per_period} samples per period")
        return np.linspace(x_lo, x_hi, n)

    def _fit_envelope(
        self, variable: str, scales: np.ndarray, sigma: np.ndarray, x: np.ndarray
    ) -> ScanResult:
        inner = np.arange(1, len(sigma) - 1)
        is_max = (sigma[inner] > sigma[inner - 1]) & (sigma[inner] >= sigma[inner + 1])
        idx = inner[is_max & (x[inner] > self.settings.asymptotic_threshold)]

        if len(idx) < self.settings.min_envelope_maxima:
            raise InsufficientDataError(
                f"{variable} scan found {len(idx)} envelope maxima in the asymptotic window "
                f"(x > {self.settings.asymptotic_threshold:g}); need at least {self.settings.min_envelope_maxima}"
            )

        fit = stats.linregress(np.log(scales[idx]), np.log(sigma[idx]))
        logger.info(f"{variable} scan: slope {fit.slope:.4f} +/- {fit.stderr:.4f} from {len(idx)} maxima")
        return ScanResult(
            variable=variable,
            scales=scales.tolist(),
            sigma=sigma.tolist(),
            maxima_scales=scales[idx].tolist(),
            maxima_sigma=sigma[idx].tolist(),
            slope=float(fit.slope),
            slope_stderr=float(fit.stderr),
            intercept=float(fit.intercept),
        )

    @staticmethod
    def _check_range(s_min: float, s_max: float) -> None:
        if not (math.isfinite(s_min) and math.isfinite(s_max) and 0 < s_min < s_max):
            raise DomainError(f"scan range must satisfy 0 < s_min < s_max, got [{s_min}, {s_max}]")

    def hbar_scan(
        self,
        beam: BeamSpec,
        sol: SolenoidSpec,
        pt: ScatterPoint,
        u: UnitSystem,
        s_min: float,
        s_max: float,
        n_samples: int,
    ) -> ScanResult:
        """master_xsec with hbar -> s hbar for s in [s_min, s_max]; envelope slope ~ 2."""
        self._check_range(s_min, s_max)
        start = time.time()
        flux = sol.flux_value(u)
        x0 = pt.x(beam.momentum_p, sol.r0, u.hbar)

        # x = x0 / s, so the grid in x is traversed backwards
        x = self._x_grid(x0 / s_max, x0 / s_min, n_samples)[::-1]
        scales = x0 / x
        sigma = master_array(beam, flux, sol.r0, pt.theta, u.hbar * scales, u)
        result = self._fit_envelope("hbar", scales, sigma, x)
        logger.info(f"hbar scan over {len(scales)} samples took {(time.time() - start) * 1000:.0f} ms")
        return result

    def pr0_scan(
        self,
        beam: BeamSpec,
        sol: SolenoidSpec,
        pt: ScatterPoint,
        u: UnitSystem,
        s_min: float,
        s_max: float,
        n_samples: int,
    ) -> ScanResult:
        """master_xsec with r0 -> s r0 at fixed hbar; envelope slope ~ -3."""
        self._check_range(s_min, s_max)
        start = time.time()
        flux = sol.flux_value(u)
        x0 = pt.x(beam.momentum_p, sol.r0, u.hbar)

        x = self._x_grid(x0 * s_min, x0 * s_max, n_samples)
        scales = x / x0
        sigma = master_array(beam, flux, sol.r0 * scales, pt.theta, u.hbar, u)
        result = self._fit_envelope("r0", scales, sigma, x)
        logger.info(f"r0 scan over {len(scales)} samples took {(time.time() - start) * 1000:.0f} ms")
        return result

    # ------------------------------------------------------------------
    # Reductions and averages
    # ------------------------------------------------------------------

    def reduction_residual(self, beam: BeamSpec, sol: SolenoidSpec, pt: ScatterPoint, u: UnitSystem) -> float:
        """|master / small_x_reduction - 1|, defined for x < 1."""
        master = master_xsec(beam, sol, pt, u)
        if master.x >= 1.0:
            raise RegimeError(f"reduction residual needs x < 1, got x = {master.x:.6g}")
        reduced = small_x_reduction(beam, sol, pt, u)
        return abs(master.value / reduced.value - 1.0)

    def window_average(
        self,
        beam: BeamSpec,
        sol: SolenoidSpec,
        u: UnitSystem,
        theta_center: float,
        width: float,
        n: int,
    ) -> WindowAverage:
        """Midpoint-rule mean of master_xsec over [theta_c - width/2, theta_c + width/2]."""
        if n < 2:
            raise DomainError(f"window needs at least 2 samples, got {n}")
        if not (math.isfinite(width) and width > 0):
            raise DomainError(f"window width must be > 0, got {width}")
        lo, hi = theta_center - 0.5 * width, theta_center + 0.5 * width
        if lo <= 0.0 <= hi:
            raise DomainError("window straddles theta = 0")
        if max(abs(lo), abs(hi)) > math.pi:
            raise DomainError("window extends beyond |theta| = pi")

        p, r0 = beam.momentum_p, sol.r0
        x_edges = [2.0 * p * r0 * abs(math.sin(0.5 * t)) / u.hbar for t in (lo, hi)]
        if min(x_edges) <= self.settings.asymptotic_threshold:
            raise RegimeError(
                f"window reaches x = {min(x_edges):.4g}, outside the asymptotic regime "
                f"(x > {self.settings.asymptotic_threshold:g})"
            )

        thetas = lo + (np.arange(n) + 0.5) * (width / n)
        sigma = master_array(beam, sol.flux_value(u), r0, thetas, u.hbar, u)
        envelope = classical_envelope(beam, sol, ScatterPoint(theta=theta_center), u)
        oscillations = abs(x_edges[1] - x_edges[0]) / math.pi
        result = WindowAverage(
            theta_center=theta_center,
            width=width,
            samples=n,
            mean=float(np.mean(sigma)),
            envelope=envelope.value,
            oscillations=oscillations,
        )
        logger.debug(f"window at {theta_center:.4f}: {oscillations:.1f} oscillations, ratio {result.ratio:.4f}")
        return result

    def predicted_zero_angles(self, beam: BeamSpec, sol: SolenoidSpec, u: UnitSystem) -> list[float]:
        """Angles in (0, pi] where x(theta) = j_{1,k}, i.e. the zeros of master_xsec."""
        x_max = 2.0 * beam.momentum_p * sol.r0 / u.hbar
        angles = []
        for k in range(1, MAX_ZERO_INDEX + 1):
            root = bessel_j1_zero(k)
            if root > x_max:
                break
            angles.append(2.0 * math.asin(root / x_max))
        return angles
