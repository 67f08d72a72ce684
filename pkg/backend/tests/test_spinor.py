"""Tests for Dirac matrices, spinors and spin sums."""

import math

import numpy as np
import pytest

from app.errors import DomainError, KinematicsError
from app.schemas import FourVector, GammaSet
from app.services.spinor import (
    SIGMA,
    bar,
    bjorken_drell,
    clifford_residual,
    current_sq_avg,
    current_sq_explicit,
    current_sq_helicity,
    current_sq_invariant,
    current_sq_kinematic,
    current_sq_uniform,
    current_sq_uniform_trace,
    dirac_residual,
    elastic_pair,
    free_spinor,
    helicity_factor,
    helicity_residual,
    helicity_spinor,
    hermiticity_residual,
    slash,
    transverse_transfer,
)


def weyl() -> GammaSet:
    """Chiral representation, for representation-independence checks."""
    zero, one = np.zeros((2, 2), dtype=complex), np.eye(2, dtype=complex)
    gamma0 = np.block([[zero, one], [one, zero]])
    spatial = tuple(np.block([[zero, s], [-s, zero]]) for s in SIGMA)
    return GammaSet(gamma=(gamma0, *spatial), identity=np.eye(4, dtype=complex), label="weyl")


class TestGammaMatrices:
    """Tests for the gamma matrix set and slash."""

    @pytest.mark.parametrize("g", [bjorken_drell(), weyl()])
    def test_clifford_algebra(self, g):
        """Test {gamma^mu, gamma^nu} = 2 g^{mu nu} in both representations."""
        assert clifford_residual(g) < 1e-15
        assert hermiticity_residual(g) < 1e-15

    def test_slash_squares_to_mass(self):
        """Test vslash vslash = (v.v) times the identity."""
        v = FourVector.on_shell(1.3, 0.4, -2.0, 0.7)
        g = bjorken_drell()
        square = slash(v, g) @ slash(v, g)
        np.testing.assert_allclose(square, v.dot(v) * g.identity, atol=1e-12)


class TestSpinors:
    """Tests for free and helicity spinors."""

    @pytest.mark.parametrize("spin", [1, -1])
    def test_free_spinor_solves_dirac(self, spin):
        """Test (pslash - mc) u = 0 and ubar u = 1."""
        p = FourVector.on_shell(1.0, 3.0, -1.0, 0.5)
        u = free_spinor(p, spin, mc=1.0)
        assert dirac_residual(u) < 1e-12
        assert (bar(u) @ u.components).real == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("lam", [1, -1])
    def test_helicity_spinor_eigenstate(self, lam):
        """Test helicity spinors are eigenstates of sigma . p_hat."""
        p = FourVector.on_shell(0.5, 1.0, 2.0, 0.0)
        u = helicity_spinor(p, lam)
        assert helicity_residual(u) < 1e-12
        assert dirac_residual(u) < 1e-12

    def test_massless_rejected(self):
        """Test lightlike momenta have no spinor here."""
        with pytest.raises(KinematicsError, match="massless"):
            free_spinor(FourVector(t=1.0, x1=1.0, x2=0.0, x3=0.0), 1)

    def test_off_shell_rejected(self):
        """Test an explicit mass inconsistent with p is rejected."""
        p = FourVector.on_shell(1.0, 2.0, 0.0, 0.0)
        with pytest.raises(KinematicsError, match="off shell"):
            free_spinor(p, 1, mc=2.0)

    def test_bad_spin_label(self):
        """Test spin labels other than +1/-1 are rejected."""
        with pytest.raises(DomainError):
            free_spinor(FourVector.on_shell(1.0, 1.0, 0.0, 0.0), 0)

    def test_helicity_needs_motion(self):
        """Test helicity at rest is undefined."""
        with pytest.raises(KinematicsError):
            helicity_spinor(FourVector.on_shell(1.0, 0.0, 0.0, 0.0), 1)


class TestSpinSums:
    """Tests for the spin-averaged squared current."""

    @pytest.mark.parametrize("p,theta", [(0.1, 0.3), (2.0, math.pi / 3), (50.0, 2.5), (5.0, math.pi)])
    def test_three_evaluations_agree(self, p, theta):
        """Test explicit, invariant and kinematic evaluations agree."""
        p_i, p_f = elastic_pair(p, theta, 1.0)
        kinematic = current_sq_kinematic(p_i, p_f)
        assert kinematic == pytest.approx(16.0 * p**4 * math.sin(theta / 2) ** 2, rel=1e-14)
        assert current_sq_explicit(p_i, p_f) == pytest.approx(kinematic, rel=1e-11)
        assert current_sq_invariant(p_i, p_f) == pytest.approx(kinematic, rel=1e-11)
        assert current_sq_avg(p_i, p_f) == pytest.approx(kinematic, rel=1e-11)

    def test_rotation_invariance(self):
        """Test rotating both momenta about x3 leaves the spin sum unchanged."""
        p_i, p_f = elastic_pair(3.0, 1.1, 1.0)
        rotated = [v.rotated_z(0.8) for v in (p_i, p_f)]
        assert current_sq_explicit(*rotated) == pytest.approx(current_sq_explicit(p_i, p_f), rel=1e-12)

    def test_trace_in_weyl_representation(self):
        """Test the trace form is the same in the chiral representation."""
        p_i, p_f = elastic_pair(1.7, 0.9, 1.0)
        g = weyl()
        k = slash(transverse_transfer(p_i, p_f), g)
        left = slash(p_f, g) + g.identity
        right = slash(p_i, g) + g.identity
        trace = 0.5 * np.trace(left @ k @ right @ k).real
        assert trace == pytest.approx(current_sq_invariant(p_i, p_f), rel=1e-12)

    def test_longitudinal_current_vanishes(self):
        """Test ubar_f qslash u_i = 0 for elastic scattering."""
        p_i, p_f = elastic_pair(2.0, 1.2, 1.0)
        q = slash(p_f - p_i)
        for s_i in (1, -1):
            for s_f in (1, -1):
                amp = bar(free_spinor(p_f, s_f, 1.0)) @ q @ free_spinor(p_i, s_i, 1.0).components
                assert abs(amp) < 1e-12

    def test_inelastic_rejected(self):
        """Test energy non-conservation is rejected."""
        p_i = FourVector.on_shell(1.0, 2.0, 0.0, 0.0)
        p_f = FourVector.on_shell(1.0, 0.0, 3.0, 0.0)
        with pytest.raises(KinematicsError, match="inelastic"):
            current_sq_invariant(p_i, p_f)

    def test_out_of_plane_rejected(self):
        """Test momenta with an x3 component are rejected."""
        p_i = FourVector.on_shell(1.0, 2.0, 0.0, 0.5)
        p_f = FourVector.on_shell(1.0, 0.0, 2.0, 0.5)
        with pytest.raises(KinematicsError, match="plane"):
            current_sq_explicit(p_i, p_f)

    @pytest.mark.parametrize("evaluate", [current_sq_avg, current_sq_explicit, current_sq_invariant, current_sq_kinematic])
    def test_off_shell_final_momentum_rejected(self, evaluate):
        """Test an outgoing momentum off the incident mass shell is rejected."""
        p_i = FourVector.on_shell(1.0, 3.0, 0.0, 0.0)
        p_f = FourVector(t=p_i.t, x1=0.0, x2=2.0, x3=0.0)
        with pytest.raises(KinematicsError, match="off shell"):
            evaluate(p_i, p_f)

    def test_off_shell_final_momentum_rejected_for_helicity(self):
        """Test the helicity current also checks the outgoing mass shell."""
        p_i = FourVector.on_shell(1.0, 3.0, 0.0, 0.0)
        p_f = FourVector(t=p_i.t, x1=0.0, x2=2.0, x3=0.0)
        with pytest.raises(KinematicsError, match="off shell"):
            current_sq_helicity(p_i, p_f, 1, 1)

    @pytest.mark.parametrize("theta", [1e-3, 1e-5, 1e-7])
    def test_small_angles_agree(self, theta):
        """Test the three evaluations agree at tiny angles on a rotated pair."""
        assert current_sq_kinematic(*elastic_pair(100.0, theta, 1.0)) == pytest.approx(
            16.0 * 100.0**4 * math.sin(theta / 2) ** 2, rel=1e-12
        )
        p_i, p_f = (v.rotated_z(0.8) for v in elastic_pair(100.0, theta, 1.0))
        kinematic = current_sq_kinematic(p_i, p_f)
        assert current_sq_invariant(p_i, p_f) == pytest.approx(kinematic, rel=1e-10)
        assert current_sq_explicit(p_i, p_f) == pytest.approx(kinematic, rel=1e-10)


class TestHelicity:
    """Tests for helicity-resolved squared currents."""

    @pytest.mark.parametrize("theta", [0.2, 1.0, 2.0, 3.0])
    def test_flip_vanishes(self, theta):
        """Test the helicity-flip amplitude is zero."""
        p_i, p_f = elastic_pair(4.0, theta, 1.0)
        w = current_sq_avg(p_i, p_f)
        assert current_sq_helicity(p_i, p_f, 1, -1) <= 1e-20 * w
        assert current_sq_helicity(p_i, p_f, -1, 1) <= 1e-20 * w

    @pytest.mark.parametrize("lam", [1, -1])
    def test_conserving_equals_average(self, lam):
        """Test the helicity-conserving value equals the spin average."""
        p_i, p_f = elastic_pair(4.0, 1.3, 1.0)
        assert current_sq_helicity(p_i, p_f, lam, lam) == pytest.approx(current_sq_avg(p_i, p_f), rel=1e-10)

    def test_helicity_factor(self):
        """Test (1 + lambda_i lambda_f)^2 is 4 or 0."""
        assert helicity_factor(1, 1) == 4.0
        assert helicity_factor(-1, -1) == 4.0
        assert helicity_factor(1, -1) == 0.0
        with pytest.raises(DomainError):
            helicity_factor(2, 1)


class TestUniformField:
    """Tests for the uniform-field squared current."""

    def test_matrix_matches_trace(self):
        """Test explicit spinors reproduce the trace for arbitrary kinematics."""
        rng = np.random.default_rng(7)
        for _ in range(20):
            p_i = FourVector.on_shell(1.0, *rng.uniform(-5.0, 5.0, size=3))
            p_f = FourVector.on_shell(1.0, *rng.uniform(-5.0, 5.0, size=3))
            assert current_sq_uniform(p_i, p_f) == pytest.approx(current_sq_uniform_trace(p_i, p_f), rel=1e-10)
