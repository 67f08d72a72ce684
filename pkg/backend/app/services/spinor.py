"""Dirac algebra in the Bjorken-Drell representation.

Four-vectors carry all components in momentum units (t = E/c) with metric
(+,-,-,-), so "mass" below always means mc. Spinors are normalized to
ubar u = 1. Squared currents that enter cross sections use the covariant
normalization ubar u = 2m, i.e. (2m)^2 times the Bjorken-Drell sum.

The amplitude for scattering off the solenoid carries the Dirac structure
eps_{ij3} q_i gamma^j, the slash of k = z x q = (0, -q2, q1, 0). The
contraction with q itself vanishes on shell (current conservation).
"""

import logging
import math
from functools import lru_cache

import numpy as np

from ..errors import DomainError, KinematicsError
from ..schemas import DiracSpinor, FourVector, GammaSet

logger = logging.getLogger(__name__)

ON_SHELL_TOLERANCE = 1e-8
ELASTIC_TOLERANCE = 1e-8

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)


@lru_cache(maxsize=1)
def bjorken_drell() -> GammaSet:
    """gamma^0 = diag(1, -1), gamma^k = [[0, sigma_k], [-sigma_k, 0]]."""
    gamma0 = np.block([[_I2, _Z2], [_Z2, -_I2]])
    spatial = tuple(np.block([[_Z2, s], [-s, _Z2]]) for s in SIGMA)
    for g in (gamma0, *spatial):
        g.setflags(write=False)
    identity = np.eye(4, dtype=complex)
    identity.setflags(write=False)
    return GammaSet(gamma=(gamma0, *spatial), identity=identity, label="bjorken-drell")


def clifford_residual(g: GammaSet) -> float:
    """Largest entry of {gamma^mu, gamma^nu} - 2 g^{mu nu} 1."""
    worst = 0.0
    for mu in range(4):
        for nu in range(4):
            anti = g.gamma[mu] @ g.gamma[nu] + g.gamma[nu] @ g.gamma[mu]
            worst = max(worst, float(np.max(np.abs(anti - 2.0 * METRIC[mu, nu] * g.identity))))
    return worst


def hermiticity_residual(g: GammaSet) -> float:
    """Largest deviation from (gamma^0)^dagger = gamma^0, (gamma^k)^dagger = -gamma^k."""
    worst = float(np.max(np.abs(g.gamma[0].conj().T - g.gamma[0])))
    for k in (1, 2, 3):
        worst = max(worst, float(np.max(np.abs(g.gamma[k].conj().T + g.gamma[k]))))
    return worst


def slash(v: FourVector, g: GammaSet | None = None) -> np.ndarray:
    """v_mu gamma^mu."""
    g = g or bjorken_drell()
    return v.t * g.gamma[0] - v.x1 * g.gamma[1] - v.x2 * g.gamma[2] - v.x3 * g.gamma[3]


def bar(u: DiracSpinor, g: GammaSet | None = None) -> np.ndarray:
    """ubar = u^dagger gamma^0."""
    g = g or bjorken_drell()
    return u.components.conj() @ g.gamma[0]


# ---------------------------------------------------------------------------
# Spinors
# ---------------------------------------------------------------------------


def _mass_of(p: FourVector, mc: float | None) -> float:
    if p.t <= 0:
        raise KinematicsError(f"four-momentum must have positive energy, got t = {p.t}")
    msq = p.dot(p)
    if mc is None:
        if msq <= ON_SHELL_TOLERANCE * p.t * p.t:
            raise KinematicsError("massless or spacelike momentum has no Dirac spinor in this library")
        return math.sqrt(msq)
    if mc <= 0:
        raise KinematicsError(f"mass must be > 0, got {mc}")
    if abs(msq - mc * mc) > ON_SHELL_TOLERANCE * p.t * p.t:
        raise KinematicsError(f"momentum is off shell: p.p = {msq:.12g}, (mc)^2 = {mc * mc:.12g}")
    return mc


def _sigma_dot(v: np.ndarray) -> np.ndarray:
    return v[0] * SIGMA[0] + v[1] * SIGMA[1] + v[2] * SIGMA[2]


def _bispinor(p: FourVector, mass: float, chi: np.ndarray) -> np.ndarray:
    energy = p.t
    norm = math.sqrt((energy + mass) / (2.0 * mass))
    lower = _sigma_dot(p.spatial) @ chi / (energy + mass)
    return norm * np.concatenate([chi, lower])


def _spin_z_chi(spin: int) -> np.ndarray:
    return np.array([1.0, 0.0], dtype=complex) if spin == 1 else np.array([0.0, 1.0], dtype=complex)


def _helicity_chi(p: FourVector, lam: int) -> np.ndarray:
    polar = math.atan2(math.hypot(p.x1, p.x2), p.x3)
    azimuth = math.atan2(p.x2, p.x1)
    c, s = math.cos(0.5 * polar), math.sin(0.5 * polar)
    if lam == 1:
        return np.array([c, np.exp(1j * azimuth) * s], dtype=complex)
    return np.array([-np.exp(-1j * azimuth) * s, c], dtype=complex)


def _check_sign(value: int, name: str) -> int:
    if value not in (-1, 1):
        raise DomainError(f"{name} must be +1 or -1, got {value}")
    return value


def free_spinor(p: FourVector, spin: int, mc: float | None = None) -> DiracSpinor:
    """u(p, s) with spin quantized along x3.

    ``mc`` defaults to sqrt(p.p); when given, p must lie on that mass shell.
    """
    spin = _check_sign(spin, "spin")
    mass = _mass_of(p, mc)
    return DiracSpinor(
        components=_bispinor(p, mass, _spin_z_chi(spin)),
        momentum=p,
        spin=spin,
        basis="spin_z",
    )


def helicity_spinor(p: FourVector, lam: int, mc: float | None = None) -> DiracSpinor:
    """u(p, lambda) with spin projected on the direction of motion."""
    lam = _check_sign(lam, "helicity")
    if p.spatial_norm == 0.0:
        raise KinematicsError("helicity is undefined for zero spatial momentum")
    mass = _mass_of(p, mc)
    return DiracSpinor(
        components=_bispinor(p, mass, _helicity_chi(p, lam)),
        momentum=p,
        spin=lam,
        basis="helicity",
    )


def dirac_residual(u: DiracSpinor, g: GammaSet | None = None) -> float:
    """||(pslash - mc) u|| / ||u||."""
    g = g or bjorken_drell()
    mass = math.sqrt(max(u.momentum.dot(u.momentum), 0.0))
    r = (slash(u.momentum, g) - mass * g.identity) @ u.components
    return float(np.linalg.norm(r) / np.linalg.norm(u.components))


def helicity_residual(u: DiracSpinor) -> float:
    """||(sigma . p_hat) chi - lambda chi|| on the upper bispinor."""
    chi = u.components[:2]
    p_hat = u.momentum.spatial / u.momentum.spatial_norm
    r = _sigma_dot(p_hat) @ chi - u.spin * chi
    return float(np.linalg.norm(r) / np.linalg.norm(chi))


# ---------------------------------------------------------------------------
# Spin sums
# ---------------------------------------------------------------------------


def elastic_pair(p: float, theta: float, mc: float) -> tuple[FourVector, FourVector]:
    """Incident momentum along x1 and the outgoing one rotated by theta about x3."""
    p_i = FourVector.on_shell(mc, p, 0.0, 0.0)
    p_f = FourVector(t=p_i.t, x1=p * math.cos(theta), x2=p * math.sin(theta), x3=0.0)
    return p_i, p_f


def transverse_transfer(p_i: FourVector, p_f: FourVector) -> FourVector:
    """k = z x q = (0, -q2, q1, 0) for q = p_f - p_i."""
    return FourVector(t=0.0, x1=-(p_f.x2 - p_i.x2), x2=p_f.x1 - p_i.x1, x3=0.0)


def _check_elastic(p_i: FourVector, p_f: FourVector) -> float:
    scale = max(p_i.t, p_f.t)
    if abs(p_f.t - p_i.t) > ELASTIC_TOLERANCE * scale:
        raise KinematicsError(f"inelastic kinematics: q0 = {p_f.t - p_i.t:.6g}")
    if abs(p_f.x3 - p_i.x3) > ELASTIC_TOLERANCE * scale:
        raise KinematicsError(f"axial momentum changes: q3 = {p_f.x3 - p_i.x3:.6g}")
    if abs(p_i.x3) > ELASTIC_TOLERANCE * scale:
        raise KinematicsError("momenta must lie in the plane perpendicular to the solenoid")
    mass = _mass_of(p_i, None)
    _mass_of(p_f, mass)
    return mass


def _spin_basis(p: FourVector, mass: float) -> np.ndarray:
    """4x2 matrix whose columns are u(p, +1), u(p, -1)."""
    return np.column_stack([_bispinor(p, mass, _spin_z_chi(s)) for s in (1, -1)])


def _amplitudes(p_i: FourVector, p_f: FourVector, vertex: np.ndarray, mass: float, g: GammaSet) -> np.ndarray:
    u_i = _spin_basis(p_i, mass)
    u_f = _spin_basis(p_f, mass)
    return u_f.conj().T @ g.gamma[0] @ vertex @ u_i


def current_sq_explicit(p_i: FourVector, p_f: FourVector, g: GammaSet | None = None) -> float:
    """(1/2) sum_{s_i, s_f} |ubar_f kslash u_i|^2 from explicit spinors (covariant normalization)."""
    g = g or bjorken_drell()
    mass = _check_elastic(p_i, p_f)
    amps = _amplitudes(p_i, p_f, slash(transverse_transfer(p_i, p_f), g), mass, g)
    return 0.5 * (2.0 * mass) ** 2 * float(np.sum(np.abs(amps) ** 2))


def current_sq_invariant(p_i: FourVector, p_f: FourVector) -> float:
    """2 [k^2 (m^2 - p_f.p_i) + 2 (p_i.k)(p_f.k)], the trace of the spin sum.

    On shell and elastic, m^2 - p_f.p_i = -|q|^2 / 2 with q the three-momentum transfer.
    """
    _check_elastic(p_i, p_f)
    k = transverse_transfer(p_i, p_f)
    q = p_f.spatial - p_i.spatial
    mass_term = -0.5 * float(np.dot(q, q))
    return 2.0 * (k.dot(k) * mass_term + 2.0 * p_i.dot(k) * p_f.dot(k))


def current_sq_kinematic(p_i: FourVector, p_f: FourVector) -> float:
    """16 p^4 sin^2(theta/2)."""
    _check_elastic(p_i, p_f)
    a, b = p_i.spatial, p_f.spatial
    # a x b = a x q keeps small angles free of cancellation
    theta = math.atan2(float(np.linalg.norm(np.cross(a, b - a))), float(np.dot(a, b)))
    p = p_i.spatial_norm
    return 16.0 * p**4 * math.sin(0.5 * theta) ** 2


def current_sq_avg(p_i: FourVector, p_f: FourVector) -> float:
    """Spin-averaged squared current for elastic in-plane scattering."""
    invariant = current_sq_invariant(p_i, p_f)
    if logger.isEnabledFor(logging.DEBUG):
        explicit = current_sq_explicit(p_i, p_f)
        kinematic = current_sq_kinematic(p_i, p_f)
        logger.debug(f"current_sq: invariant={invariant:.16g} explicit={explicit:.16g} kinematic={kinematic:.16g}")
    return invariant


def helicity_factor(lambda_i: int, lambda_f: int) -> float:
    """(1 + lambda_i lambda_f)^2."""
    _check_sign(lambda_i, "lambda_i")
    _check_sign(lambda_f, "lambda_f")
    return float((1 + lambda_i * lambda_f) ** 2)


def current_sq_helicity(p_i: FourVector, p_f: FourVector, lambda_i: int, lambda_f: int) -> float:
    """|ubar(p_f, lambda_f) kslash u(p_i, lambda_i)|^2, covariant normalization."""
    g = bjorken_drell()
    mass = _check_elastic(p_i, p_f)
    u_i = helicity_spinor(p_i, lambda_i, mass)
    u_f = helicity_spinor(p_f, lambda_f, mass)
    amp = bar(u_f, g) @ slash(transverse_transfer(p_i, p_f), g) @ u_i.components
    return (2.0 * mass) ** 2 * float(abs(amp) ** 2)


def _uniform_mass(p_i: FourVector, p_f: FourVector) -> float:
    mass = _mass_of(p_i, None)
    _mass_of(p_f, mass)
    return mass


def current_sq_uniform(p_i: FourVector, p_f: FourVector, g: GammaSet | None = None) -> float:
    """(1/2) sum |ubar_f gamma^1 u_i|^2 over both spins, ubar u = 1."""
    g = g or bjorken_drell()
    mass = _uniform_mass(p_i, p_f)
    amps = _amplitudes(p_i, p_f, g.gamma[1], mass, g)
    return 0.5 * float(np.sum(np.abs(amps) ** 2))


def current_sq_uniform_trace(p_i: FourVector, p_f: FourVector, g: GammaSet | None = None) -> float:
    """Tr[(pslash_f + mc) gamma^1 (pslash_i + mc) gamma^1] / (8 m^2 c^2)."""
    g = g or bjorken_drell()
    mass = _uniform_mass(p_i, p_f)
    left = slash(p_f, g) + mass * g.identity
    right = slash(p_i, g) + mass * g.identity
    trace = np.trace(left @ g.gamma[1] @ right @ g.gamma[1])
    return float(trace.real) / (8.0 * mass * mass)
