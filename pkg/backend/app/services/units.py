"""Unit systems with hbar and c as explicit, independently scalable parameters.

Two systems are provided:

- ``physical_cgs()``: Gaussian CGS. hbar and c are CODATA values; the unit
  charge is fixed so that the flux quantum 2*pi*hbar*c/e equals
  4.318e-7 gauss cm^2, the value quoted for the flux-quantization results.
- ``natural()``: hbar = c = e = 1 with energies (and masses) in MeV.

Classical-limit scans multiply hbar only (``scale_hbar``).
"""

import logging
import math

import scipy.constants as const

from ..errors import DomainError
from ..schemas import UnitSystem

logger = logging.getLogger(__name__)

FLUX_QUANTUM_GAUSS_CM2 = 4.318e-7

HBAR_CGS = const.hbar * 1e7  # erg s
C_CGS = const.c * 1e2  # cm/s
MEV_CGS = const.mega * const.electron_volt * 1e7  # erg
ELECTRON_MASS_CGS = const.m_e * 1e3  # g
ELECTRON_MASS_MEV = const.physical_constants["electron mass energy equivalent in MeV"][0]


def physical_cgs() -> UnitSystem:
    """Gaussian CGS units, charge fixed by the quoted flux quantum."""
    e_charge = 2.0 * math.pi * HBAR_CGS * C_CGS / FLUX_QUANTUM_GAUSS_CM2
    return UnitSystem(
        hbar=HBAR_CGS,
        c=C_CGS,
        e_charge=e_charge,
        label="cgs",
        mev=MEV_CGS,
        electron_mass=ELECTRON_MASS_CGS,
    )


def natural() -> UnitSystem:
    """hbar = c = e = 1, energies in MeV."""
    return UnitSystem(
        hbar=1.0,
        c=1.0,
        e_charge=1.0,
        label="natural",
        mev=1.0,
        electron_mass=ELECTRON_MASS_MEV,
    )


def unit_system(label: str) -> UnitSystem:
    """Resolve a unit-system label (``cgs`` or ``natural``)."""
    builders = {"cgs": physical_cgs, "natural": natural}
    try:
        return builders[label]()
    except KeyError:
        raise DomainError(f"unknown unit system {label!r}; expected one of {sorted(builders)}") from None


def flux_quantum(u: UnitSystem) -> float:
    """Phi0 = 2 pi hbar c / e."""
    return 2.0 * math.pi * u.hbar * u.c / u.e_charge


def momentum_from_kinetic(T: float, m: float, u: UnitSystem) -> float:
    """Momentum of a particle with kinetic energy T and mass m.

    Uses p c = sqrt(T (T + 2 m c^2)), algebraically equal to
    sqrt((T + m c^2)^2 - m^2 c^4) without the cancellation at small T.
    """
    if not (math.isfinite(T) and math.isfinite(m)):
        raise DomainError("kinetic energy and mass must be finite")
    if T < 0:
        raise DomainError(f"kinetic energy must be >= 0, got {T}")
    if m < 0:
        raise DomainError(f"mass must be >= 0, got {m}")
    rest = m * u.c * u.c
    return math.sqrt(T * (T + 2.0 * rest)) / u.c


def momentum_from_kinetic_mev(T_mev: float, m: float, u: UnitSystem) -> float:
    """``momentum_from_kinetic`` with T given in MeV."""
    return momentum_from_kinetic(T_mev * u.mev, m, u)


def scale_hbar(u: UnitSystem, s: float) -> UnitSystem:
    """Copy of ``u`` with hbar multiplied by ``s``."""
    if not (math.isfinite(s) and s > 0):
        raise DomainError(f"hbar scale factor must be > 0, got {s}")
    return u.model_copy(update={"hbar": u.hbar * s})
