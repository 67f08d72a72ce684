"""Tests for the cross-section formulas."""

import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import special

from app.errors import DomainError, ForwardSingularityError, PolarizationError
from app.schemas import (
    BeamSpec,
    DeltaFlag,
    FormulaType,
    FourVector,
    Helicity,
    Regime,
    ScatterPoint,
    SolenoidSpec,
)
from app.services.specfun import bessel_j1_zero
from app.services.spinor import elastic_pair
from app.services.units import flux_quantum, natural, physical_cgs
from app.services.xsec import (
    ab_exact,
    assembled_xsec,
    asymptotic_xsec,
    classical_envelope,
    classify_x,
    evaluate,
    helicity_xsec,
    ll_small_angle,
    master_array,
    master_xsec,
    quantized_small_theta,
    quantized_xsec,
    small_x_reduction,
    small_x_small_theta,
    symmetric_theta_grid,
    theta_scan,
    uniform_field_coeff,
)

U = natural()


def beam(p: float = 2.0, f: int = 1, **kwargs) -> BeamSpec:
    return BeamSpec(mass=1.0, momentum_p=p, charge=1.0, f_factor=f, **kwargs)


def solenoid(flux: float = 0.01, r0: float = 1.0) -> SolenoidSpec:
    return SolenoidSpec(r0=r0, flux=flux)


class TestScatterPoint:
    """Tests for the scattering-angle record."""

    def test_forward_singularity(self):
        """Test theta = 0 raises the forward-singularity error."""
        with pytest.raises(ForwardSingularityError, match="forward singularity"):
            ScatterPoint(theta=0.0)

    @pytest.mark.parametrize("theta", [3.2, -4.0, math.nan])
    def test_out_of_range(self, theta):
        """Test |theta| > pi and NaN are validation errors."""
        with pytest.raises(ValidationError):
            ScatterPoint(theta=theta)

    def test_x(self):
        """Test x = 2 p r0 |sin(theta/2)| / hbar."""
        pt = ScatterPoint(theta=-1.0)
        assert pt.x(3.0, 2.0, 0.5) == pytest.approx(24.0 * math.sin(0.5))


class TestMasterFormula:
    """Tests for master_xsec."""

    def test_value(self):
        """Test the closed form at one point."""
        b, sol, pt = beam(), solenoid(), ScatterPoint(theta=1.0)
        s = math.sin(0.5)
        x = 2.0 * 2.0 * s
        expected = (0.01 / 1.0) ** 2 * special.j1(x) ** 2 / (8.0 * math.pi * 8.0 * s**4)
        result = master_xsec(b, sol, pt, U)
        assert result.value == pytest.approx(expected, rel=1e-12)
        assert result.formula == FormulaType.MASTER
        assert result.x == pytest.approx(x)

    def test_even_in_theta(self):
        """Test sigma(theta) = sigma(-theta) exactly."""
        for theta in (0.1, 1.3, math.pi):
            a = master_xsec(beam(), solenoid(), ScatterPoint(theta=theta), U).value
            b = master_xsec(beam(), solenoid(), ScatterPoint(theta=-theta), U).value
            assert a == b

    def test_zero_at_bessel_zero(self):
        """Test the cross section vanishes where x is a zero of J1."""
        p, r0 = 10.0, 1.0
        theta = 2.0 * math.asin(bessel_j1_zero(3) / (2.0 * p * r0))
        value = master_xsec(beam(p), solenoid(r0=r0), ScatterPoint(theta=theta), U).value
        reference = master_xsec(beam(p), solenoid(r0=r0), ScatterPoint(theta=theta + 0.05), U).value
        assert value < 1e-20 * reference

    def test_final_polarization_factor(self):
        """Test f = 2 halves the cross section."""
        pt = ScatterPoint(theta=0.7)
        assert master_xsec(beam(f=2), solenoid(), pt, U).value == pytest.approx(
            0.5 * master_xsec(beam(f=1), solenoid(), pt, U).value, rel=1e-15
        )

    def test_flux_quanta_form(self):
        """Test quanta_n = 1 equals an explicit flux of one flux quantum."""
        pt = ScatterPoint(theta=0.4)
        by_quanta = master_xsec(beam(), SolenoidSpec(r0=1.0, quanta_n=1), pt, U).value
        by_flux = master_xsec(beam(), solenoid(flux=flux_quantum(U)), pt, U).value
        assert by_quanta == pytest.approx(by_flux, rel=1e-15)

    def test_zero_momentum(self):
        """Test p = 0 is a domain error."""
        with pytest.raises(DomainError, match="momentum"):
            master_xsec(beam(p=0.0), solenoid(), ScatterPoint(theta=1.0), U)

    def test_rejects_helicity_beam(self):
        """Test spin-averaged formulas refuse a helicity-polarized beam."""
        polarized = beam(polarization=Helicity(lambda_i=1, lambda_f=1))
        with pytest.raises(PolarizationError):
            master_xsec(polarized, solenoid(), ScatterPoint(theta=1.0), U)

    def test_array_matches_scalar(self):
        """Test the vectorized kernel equals the scalar formula."""
        thetas = np.array([-2.0, -0.3, 0.3, 1.0, 3.0])
        values = master_array(beam(), 0.01, 1.0, thetas, 1.0, U)
        expected = [master_xsec(beam(), solenoid(), ScatterPoint(theta=t), U).value for t in thetas]
        np.testing.assert_allclose(values, expected, rtol=1e-14)

    def test_hbar_r0_coscaling(self):
        """Test sigma(hbar/s, r0) = s sigma(hbar, s r0) at fixed flux."""
        for s in (0.1, 3.0, 250.0):
            a = master_array(beam(), 0.01, 1.0, 1.2, 1.0 / s, U)
            b = master_array(beam(), 0.01, s, 1.2, 1.0, U)
            assert float(a) == pytest.approx(s * float(b), rel=1e-12)


class TestHelicity:
    """Tests for helicity_xsec."""

    @pytest.mark.parametrize("lam", [1, -1])
    def test_conserving_is_quarter_of_unpolarized(self, lam):
        """Test the helicity-conserving value equals master_xsec(f = 1) / 4."""
        pt = ScatterPoint(theta=0.9)
        value = helicity_xsec(beam(), solenoid(), pt, U, lam, lam).value
        assert value == pytest.approx(master_xsec(beam(), solenoid(), pt, U).value / 4.0, rel=1e-14)

    def test_flip_is_zero(self):
        """Test opposite helicities give exactly zero."""
        assert helicity_xsec(beam(), solenoid(), ScatterPoint(theta=0.9), U, 1, -1).value == 0.0

    def test_defaults_from_beam(self):
        """Test helicities default to the beam polarization."""
        polarized = beam(polarization=Helicity(lambda_i=-1, lambda_f=-1))
        pt = ScatterPoint(theta=2.0)
        assert helicity_xsec(polarized, solenoid(), pt, U).value == helicity_xsec(beam(), solenoid(), pt, U, -1, -1).value

    def test_needs_helicities(self):
        """Test a spin-averaged beam without explicit helicities is rejected."""
        with pytest.raises(PolarizationError):
            helicity_xsec(beam(), solenoid(), ScatterPoint(theta=1.0), U)

    def test_bad_helicity(self):
        """Test helicities other than +1/-1 are rejected."""
        with pytest.raises(DomainError):
            helicity_xsec(beam(), solenoid(), ScatterPoint(theta=1.0), U, 0, 1)


class TestLimitingForms:
    """Tests for the Aharonov-Bohm, Landau-Lifshitz and small-x forms."""

    def test_ab_periodic_in_flux(self):
        """Test ab_exact is periodic with the flux quantum and symmetric about it."""
        phi0 = flux_quantum(U)
        pt = ScatterPoint(theta=1.1)
        for phi in (0.1, 0.37 * phi0):
            assert ab_exact(phi + phi0, 2.0, pt, U).value == pytest.approx(ab_exact(phi, 2.0, pt, U).value, rel=1e-9)
            assert ab_exact(phi0 - phi, 2.0, pt, U).value == pytest.approx(ab_exact(phi, 2.0, pt, U).value, rel=1e-9)

    def test_ab_vanishes_at_whole_quanta(self):
        """Test integer flux quanta give no Aharonov-Bohm scattering."""
        phi0 = flux_quantum(U)
        pt = ScatterPoint(theta=1.1)
        peak = ab_exact(0.5 * phi0, 2.0, pt, U).value
        for n in (1, 2, 5):
            assert ab_exact(n * phi0, 2.0, pt, U).value < 1e-24 * peak

    @pytest.mark.parametrize("ratio", [1e-3, 1e-2])
    def test_ab_matches_small_x_at_weak_flux(self, ratio):
        """Test ab_exact approaches the small-x reduction as the flux vanishes."""
        flux = 2.0 * ratio  # e Phi / (2 hbar c) = ratio
        pt = ScatterPoint(theta=0.8)
        ab = ab_exact(flux, 2.0, pt, U).value
        reduced = small_x_reduction(beam(), solenoid(flux=flux), pt, U).value
        assert abs(ab / reduced - 1.0) <= ratio**2 / 3.0 * 1.01

    def test_ll_equals_small_angle_reduction(self):
        """Test the Landau-Lifshitz form equals the small-angle small-x form at f = 1."""
        pt = ScatterPoint(theta=0.02)
        ll = ll_small_angle(0.01, 2.0, pt, U).value
        assert ll == pytest.approx(small_x_small_theta(beam(), solenoid(), pt, U).value, rel=1e-14)

    def test_small_theta_of_small_x(self):
        """Test small_x_small_theta approximates small_x_reduction at theta = 0.01."""
        pt = ScatterPoint(theta=0.01)
        a = small_x_small_theta(beam(), solenoid(), pt, U).value
        b = small_x_reduction(beam(), solenoid(), pt, U).value
        assert abs(a / b - 1.0) < 1e-4

    def test_ab_ll_regime_label(self):
        """Test the reference forms carry the small-x regime and no x."""
        value = ab_exact(0.1, 1.0, 0.5, U)
        assert value.regime == Regime.SMALL_X
        assert value.x is None


class TestQuantized:
    """Tests for the flux-quantized forms."""

    @pytest.mark.parametrize("n", [1, 3])
    def test_matches_master(self, n):
        """Test quantized_xsec equals master_xsec with n flux quanta."""
        pt = ScatterPoint(theta=1.4)
        quantized = quantized_xsec(n, 1.0, 2.0, pt, 1, U).value
        master = master_xsec(beam(), SolenoidSpec(r0=1.0, quanta_n=n), pt, U).value
        assert quantized == pytest.approx(master, rel=1e-13)

    def test_charge_independent(self):
        """Test master_xsec with n quanta of 2 pi hbar c / e does not depend on e."""
        pt = ScatterPoint(theta=1.4)
        sol = SolenoidSpec(r0=1.0, quanta_n=2)
        expected = quantized_xsec(2, 1.0, 2.0, pt, 1, U).value
        for charge in (0.3, 1.0, 7.0):
            u = U.model_copy(update={"e_charge": charge})
            b = BeamSpec(mass=1.0, momentum_p=2.0, charge=charge)
            assert master_xsec(b, sol, pt, u).value == pytest.approx(expected, rel=1e-13)
            assert quantized_xsec(2, 1.0, 2.0, pt, 1, u).value == expected

    def test_small_theta_limit(self):
        """Test quantized_small_theta is the small-x small-angle limit."""
        theta = 0.01
        exact = quantized_xsec(2, 1e-4, 1.0, theta, 1, U).value
        limit = quantized_small_theta(2, 1.0, theta, 1, U).value
        assert limit == pytest.approx(2.0 * math.pi * 4.0 / theta**2)
        assert exact == pytest.approx(limit, rel=1e-4)

    def test_zero_quanta(self):
        """Test n = 0 gives zero."""
        assert quantized_xsec(0, 1.0, 2.0, 1.0, 1, U).value == 0.0

    @pytest.mark.parametrize("n", [-1, 1.5])
    def test_rejects_bad_quanta(self, n):
        """Test negative or fractional quanta are rejected."""
        with pytest.raises(DomainError):
            quantized_xsec(n, 1.0, 2.0, 1.0, 1, U)

    def test_rejects_bad_f(self):
        """Test f outside {1, 2} is rejected."""
        with pytest.raises(DomainError):
            quantized_xsec(1, 1.0, 2.0, 1.0, 3, U)


class TestAsymptotics:
    """Tests for the envelope and large-x forms."""

    def test_envelope_bounds_asymptotic(self):
        """Test the cos^2 form never exceeds its envelope."""
        for theta in np.linspace(0.2, 3.0, 15):
            pt = ScatterPoint(theta=float(theta))
            assert asymptotic_xsec(beam(500.0), solenoid(), pt, U).value <= classical_envelope(
                beam(500.0), solenoid(), pt, U
            ).value * (1 + 1e-15)

    def test_master_approaches_asymptotic(self):
        """Test master and asymptotic forms differ by O(1/x) of the envelope."""
        b, sol = beam(5000.0), solenoid()
        for theta in (0.5, 1.5, 2.5):
            pt = ScatterPoint(theta=theta)
            master = master_xsec(b, sol, pt, U)
            asymptotic = asymptotic_xsec(b, sol, pt, U).value
            envelope = classical_envelope(b, sol, pt, U).value
            assert abs(master.value - asymptotic) <= envelope / master.x

    def test_envelope_scales_with_hbar_squared(self):
        """Test the envelope is proportional to hbar^2."""
        pt = ScatterPoint(theta=1.0)
        scaled = U.model_copy(update={"hbar": 3.0})
        ratio = classical_envelope(beam(), solenoid(), pt, scaled).value / classical_envelope(beam(), solenoid(), pt, U).value
        assert ratio == pytest.approx(9.0, rel=1e-14)


class TestAssembled:
    """Tests for the cross section rebuilt from form factor and spin sum."""

    @pytest.mark.parametrize("theta", [0.3, 1.0, 2.9, -1.7])
    def test_equals_master(self, theta):
        """Test the assembled product equals master_xsec."""
        pt = ScatterPoint(theta=theta)
        assembled = assembled_xsec(beam(), solenoid(), pt, U).value
        assert assembled == pytest.approx(master_xsec(beam(), solenoid(), pt, U).value, rel=1e-10)

    def test_equals_master_cgs(self):
        """Test the identity also holds in cgs units."""
        u = physical_cgs()
        b = BeamSpec(mass=u.electron_mass, momentum_p=1e-17, charge=u.e_charge)
        sol = SolenoidSpec(r0=1e-9, quanta_n=1)
        pt = ScatterPoint(theta=0.8)
        assert assembled_xsec(b, sol, pt, u).value == pytest.approx(master_xsec(b, sol, pt, u).value, rel=1e-9)

    def test_massless_rejected(self):
        """Test a massless beam cannot be assembled from Dirac spinors."""
        b = BeamSpec(mass=0.0, momentum_p=2.0, charge=1.0)
        with pytest.raises(DomainError):
            assembled_xsec(b, solenoid(), ScatterPoint(theta=1.0), U)


class TestUniformField:
    """Tests for uniform_field_coeff."""

    def test_transverse_scattering_violates_deltas(self):
        """Test in-plane scattering by 90 degrees violates both delta constraints."""
        p_i, p_f = elastic_pair(2.0, math.pi / 2, 1.0)
        result = uniform_field_coeff(beam(), 0.5, p_i, p_f, U)
        assert result.delta_q1 == DeltaFlag.VIOLATED
        assert result.delta_q2 == DeltaFlag.VIOLATED
        assert result.coefficient is not None and result.coefficient > 0

    def test_axial_flip_satisfies_deltas(self):
        """Test reversing only the axial momentum satisfies both constraints."""
        p_i = FourVector.on_shell(1.0, 1.0, 0.5, 0.7)
        p_f = FourVector.on_shell(1.0, 1.0, 0.5, -0.7)
        result = uniform_field_coeff(beam(), 0.5, p_i, p_f, U)
        assert result.delta_q1 == DeltaFlag.SATISFIED
        assert result.delta_q2 == DeltaFlag.SATISFIED
        assert result.coefficient is not None

    def test_forward_has_no_coefficient(self):
        """Test sin(theta) = 0 leaves the coefficient undefined."""
        p = FourVector.on_shell(1.0, 1.0, 0.5, 0.7)
        result = uniform_field_coeff(beam(), 0.5, p, p, U)
        assert result.coefficient is None
        assert result.current_sq > 0


class TestDispatch:
    """Tests for formula dispatch, grids and regimes."""

    def test_evaluate_by_tag(self):
        """Test tags dispatch to the matching formula."""
        pt = ScatterPoint(theta=1.0)
        assert evaluate("master", beam(), solenoid(), pt, U) == master_xsec(beam(), solenoid(), pt, U)
        assert evaluate(FormulaType.ENVELOPE, beam(), solenoid(), pt, U).formula == FormulaType.ENVELOPE

    def test_quantized_needs_quanta(self):
        """Test quantized formulas reject an explicit flux."""
        with pytest.raises(DomainError, match="quanta"):
            evaluate("quantized", beam(), solenoid(), ScatterPoint(theta=1.0), U)

    def test_unknown_tag(self):
        """Test an unknown tag is rejected."""
        with pytest.raises(ValueError):
            evaluate("rutherford", beam(), solenoid(), ScatterPoint(theta=1.0), U)

    def test_symmetric_grid(self):
        """Test the theta grid pairs every angle with its exact negative."""
        grid = symmetric_theta_grid(50, 1e-3)
        assert len(grid) == 100
        np.testing.assert_array_equal(grid, -grid[::-1])
        assert np.min(np.abs(grid)) == 1e-3
        assert np.max(grid) == math.pi

    def test_grid_rejects_bad_band(self):
        """Test the forward band must lie in (0, pi)."""
        with pytest.raises(DomainError):
            symmetric_theta_grid(10, 0.0)

    def test_theta_scan_symmetric(self):
        """Test a scan over the symmetric grid gives mirror-symmetric values."""
        grid = symmetric_theta_grid(20, 0.01)
        values = [v.value for v in theta_scan("master", beam(), solenoid(), U, grid)]
        assert values == values[::-1]

    @pytest.mark.parametrize("x,regime", [(0.001, Regime.SMALL_X), (1.0, Regime.INTERMEDIATE), (50.0, Regime.ASYMPTOTIC)])
    def test_classify(self, x, regime):
        """Test x thresholds at 0.01 and 10."""
        assert classify_x(x) == regime
