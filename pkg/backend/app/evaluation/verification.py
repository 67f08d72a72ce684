"""Oracle suites comparing closed forms with independent evaluations."""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..config import Settings, get_settings
from ..errors import VerificationFailure
from ..schemas import Dataset, FourVector, PlanarTransferQ, VerificationCheck, VerificationReport
from ..services.formfactor import (
    combined_closed_form,
    combined_coefficient,
    exterior_analytic,
    exterior_quadrature,
    interior_analytic,
    interior_quadrature,
    relative_difference,
)
from ..services.specfun import (
    MAX_ZERO_INDEX,
    bessel_j0,
    bessel_j1,
    bessel_j1_asymptotic,
    bessel_j1_zero,
    bessel_oracle,
)
from ..services.spinor import (
    current_sq_explicit,
    current_sq_helicity,
    current_sq_invariant,
    current_sq_kinematic,
    current_sq_uniform,
    current_sq_uniform_trace,
    elastic_pair,
)

logger = logging.getLogger(__name__)

CHECK_COLUMNS = ["check", "max_residual", "tolerance", "points", "passed"]
FORMFACTOR_COLUMNS = ["qr0", "region", "analytic", "quadrature", "relative_error"]

# q direction used on the form-factor grid; any non-axis angle works
_Q_ANGLE = 0.3


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0


def checks_dataset(report: VerificationReport) -> Dataset:
    """One row per check."""
    rows = [
        {
            "check": c.name,
            "max_residual": c.max_residual,
            "tolerance": c.tolerance,
            "points": c.points,
            "passed": c.passed,
        }
        for c in report.checks
    ]
    summary = {"suite": report.suite, "passed": report.passed}
    if report.seed is not None:
        summary["seed"] = report.seed
    return Dataset(columns=CHECK_COLUMNS, rows=rows, summary=summary)


def require_passed(report: VerificationReport) -> None:
    """Raise VerificationFailure naming the failed checks."""
    failed = [c for c in report.checks if not c.passed]
    if failed:
        names = ", ".join(f"{c.name} ({c.max_residual:.3e} > {c.tolerance:.1e})" for c in failed)
        raise VerificationFailure(f"{report.suite} verification failed: {names}")


class VerificationRunner:
    """Run the Bessel, spin-sum and form-factor oracle suites."""

    def __init__(self, settings: Settings | None = None):
        self.settings = settings or get_settings()

    def bessel_suite(self) -> VerificationReport:
        """Series/asymptotic branches against the integral representation and identities."""
        start = time.time()
        checks = []

        grid = np.linspace(0.0, 200.0, 401)
        for order, func in ((0, bessel_j0), (1, bessel_j1)):
            worst = max(abs(func(x).value - bessel_oracle(order, x)) for x in grid)
            checks.append(VerificationCheck(name=f"oracle_j{order}", max_residual=worst, tolerance=1e-9, points=len(grid)))

        h = 1e-5
        grid = np.linspace(0.1, 50.0, 500)
        worst = 0.0
        for x in grid:
            derivative = (bessel_j1(x + h).value - bessel_j1(x - h).value) / (2.0 * h)
            identity = bessel_j0(x).value - bessel_j1(x).value / x
            worst = max(worst, abs(derivative - identity))
        checks.append(VerificationCheck(name="derivative_identity", max_residual=worst, tolerance=1e-6, points=len(grid)))

        # next asymptotic term is (3/8) sqrt(2/pi) x^(-3/2) sin(...)
        grid = np.linspace(20.0, 200.0, 500)
        worst = max(abs(abs(bessel_j1(x).value) - abs(bessel_j1_asymptotic(x))) * x**1.5 for x in grid)
        checks.append(VerificationCheck(name="asymptotic_agreement", max_residual=worst, tolerance=0.32, points=len(grid)))

        zeros = [bessel_j1_zero(k) for k in range(1, MAX_ZERO_INDEX + 1)]
        worst = max(abs(bessel_j1(z).value) for z in zeros)
        checks.append(VerificationCheck(name="j1_zero_residual", max_residual=worst, tolerance=1e-10, points=len(zeros)))

        ordered = all(b > a for a, b in zip(zeros, zeros[1:]))
        spacing = abs(zeros[-1] - zeros[-2] - math.pi) if ordered else math.inf
        checks.append(VerificationCheck(name="j1_zero_spacing", max_residual=spacing, tolerance=1e-4, points=2))

        report = VerificationReport(suite="bessel", checks=checks, elapsed_ms=(time.time() - start) * 1000)
        logger.info(f"Bessel suite {'passed' if report.passed else 'FAILED'} in {report.elapsed_ms:.0f} ms")
        return report

    def spinsum_suite(self, samples: int | None = None, seed: int | None = None) -> VerificationReport:
        """Explicit, invariant and kinematic spin sums over randomized elastic kinematics (mc = 1)."""
        start = time.time()
        samples = samples or self.settings.spinsum_samples
        seed = self.settings.verification_seed if seed is None else seed
        rng = np.random.default_rng(seed)

        pairwise = helicity_flip = helicity_keep = 0.0
        for _ in range(samples):
            p = rng.uniform(0.1, 100.0)
            theta = math.pi - rng.uniform(0.0, math.pi)
            azimuth = rng.uniform(0.0, 2.0 * math.pi)
            p_i, p_f = (v.rotated_z(azimuth) for v in elastic_pair(p, theta, 1.0))

            explicit = current_sq_explicit(p_i, p_f)
            invariant = current_sq_invariant(p_i, p_f)
            kinematic = current_sq_kinematic(p_i, p_f)
            pairwise = max(pairwise, _rel(explicit, invariant), _rel(explicit, kinematic), _rel(invariant, kinematic))

            flip = current_sq_helicity(p_i, p_f, 1, -1)
            keep = current_sq_helicity(p_i, p_f, 1, 1)
            helicity_flip = max(helicity_flip, flip / kinematic)
            helicity_keep = max(helicity_keep, _rel(keep, kinematic))

        uniform = 0.0
        n_uniform = min(samples, 100)
        for _ in range(n_uniform):
            p_i = FourVector.on_shell(1.0, *rng.uniform(-10.0, 10.0, size=3))
            p_f = FourVector.on_shell(1.0, *rng.uniform(-10.0, 10.0, size=3))
            matrix = current_sq_uniform(p_i, p_f)
            trace = current_sq_uniform_trace(p_i, p_f)
            uniform = max(uniform, abs(matrix - trace) / (p_i.t * p_f.t))

        checks = [
            VerificationCheck(name="spin_sum_pairwise", max_residual=pairwise, tolerance=1e-10, points=samples),
            VerificationCheck(name="helicity_flip_ratio", max_residual=helicity_flip, tolerance=1e-16, points=samples),
            VerificationCheck(name="helicity_conserving", max_residual=helicity_keep, tolerance=1e-10, points=samples),
            VerificationCheck(name="uniform_matrix_vs_trace", max_residual=uniform, tolerance=1e-10, points=n_uniform),
        ]
        report = VerificationReport(suite="spinsum", checks=checks, seed=seed, elapsed_ms=(time.time() - start) * 1000)
        logger.info(f"Spin-sum suite {'passed' if report.passed else 'FAILED'} in {report.elapsed_ms:.0f} ms")
        return report

    def _formfactor_point(self, x: float, r0: float, tol: float) -> tuple[list[dict], float]:
        qm = x / r0
        q = PlanarTransferQ(q1=qm * math.cos(_Q_ANGLE), q2=qm * math.sin(_Q_ANGLE))
        direction = q.direction
        pairs = [
            ("interior", interior_analytic(q, r0), interior_quadrature(q, r0, tol, self.settings.interior_max_evaluations)),
            ("exterior", exterior_analytic(q, r0), exterior_quadrature(q, r0, tol, self.settings.exterior_max_points)),
            ("combined", combined_coefficient(q, r0), combined_closed_form(q, r0)),
        ]
        rows = []
        phase = 0.0
        for region, analytic, other in pairs:
            rows.append(
                {
                    "qr0": x,
                    "region": region,
                    "analytic": analytic.along(direction).imag,
                    "quadrature": other.along(direction).imag,
                    "relative_error": relative_difference(analytic, other),
                }
            )
            # real part and the component perpendicular to q must vanish
            perp = (-direction[1], direction[0])
            for value in (analytic, other):
                stray = math.hypot(value.along(direction).real, abs(value.along(perp)))
                phase = max(phase, stray / value.norm if value.norm > 0 else 0.0)
        return rows, phase

    def formfactor_suite(self, grid: int | None = None, r0: float = 1.0, tol: float | None = None) -> VerificationReport:
        """Analytic vs quadrature over a log grid q r0 in [0.1, 20]."""
        start = time.time()
        grid = grid or self.settings.formfactor_grid
        tol = tol or self.settings.quadrature_tolerance
        xs = np.geomspace(0.1, 20.0, grid)

        with ThreadPoolExecutor(max_workers=self.settings.max_workers) as executor:
            results = list(executor.map(lambda x: self._formfactor_point(float(x), r0, tol), xs))

        rows = [row for point_rows, _ in results for row in point_rows]
        worst = {
            region: max(r["relative_error"] for r in rows if r["region"] == region)
            for region in ("interior", "exterior", "combined")
        }
        phase = max(p for _, p in results)
        checks = [
            VerificationCheck(name="interior_relative_error", max_residual=worst["interior"], tolerance=1e-6, points=grid),
            VerificationCheck(name="exterior_relative_error", max_residual=worst["exterior"], tolerance=1e-6, points=grid),
            VerificationCheck(name="combined_identity", max_residual=worst["combined"], tolerance=1e-12, points=grid),
            VerificationCheck(name="imaginary_phase", max_residual=phase, tolerance=1e-8, points=3 * grid),
        ]
        detail = Dataset(columns=FORMFACTOR_COLUMNS, rows=rows)
        report = VerificationReport(
            suite="formfactor", checks=checks, elapsed_ms=(time.time() - start) * 1000, detail=detail
        )
        logger.info(f"Form-factor suite {'passed' if report.passed else 'FAILED'} over {grid} points in {report.elapsed_ms:.0f} ms")
        return report
