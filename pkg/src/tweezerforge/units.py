"""Physical constants (CODATA 2018) and the energy conversions shared by all modules.

Internal conventions: atomic units inside the molecular-potential code, SI inside
the array and qubit simulators, MHz for every reported energy.
"""

from dataclasses import dataclass

# CODATA 2018 exact / recommended values
_PLANCK_JS = 6.62607015e-34          # J s (exact)
_BOLTZMANN_JK = 1.380649e-23         # J/K (exact)
_HARTREE_HZ = 6.579683920502e15      # Hz, E_h/h
_BOHR_M = 5.29177210903e-11          # m
_AMU_KG = 1.66053906660e-27          # kg


@dataclass(frozen=True)
class PhysicalConstants:
    """Constant set used throughout the toolkit.

    ``vacuum_permittivity_factor`` is the 4*pi*eps0 denominator of the dipole
    coupling expressed in atomic units, where it equals one; it is kept as an
    explicit field so the dipole formulas read the same in any unit system.
    """

    hartree_per_h: float = _HARTREE_HZ       # Hz
    bohr_radius: float = _BOHR_M             # m
    planck: float = _PLANCK_JS               # J s
    amu: float = _AMU_KG                     # kg
    boltzmann: float = _BOLTZMANN_JK         # J/K
    vacuum_permittivity_factor: float = 1.0  # 4*pi*eps0 in atomic units

    def __post_init__(self):
        for name in ("hartree_per_h", "bohr_radius", "planck", "amu",
                     "boltzmann", "vacuum_permittivity_factor"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"constant {name} must be positive")


CONSTANTS = PhysicalConstants()

# CODATA 2018 mass ratio m_u / m_e, used to express reduced masses in
# electron masses for atomic-unit radial equations.
ELECTRON_MASSES_PER_AMU = 1822.888486209

# Joule value of each supported energy unit; all conversions route through J
# so that chained conversions compose exactly.
_UNIT_TO_JOULE = {
    "Hartree": _HARTREE_HZ * _PLANCK_JS,
    "MHz": 1.0e6 * _PLANCK_JS,
    "Joule": 1.0,
    "Kelvin-equivalent": _BOLTZMANN_JK,
}


def convert_energy(value, from_unit, to_unit):
    """Convert an energy between Hartree, MHz, Joule and Kelvin-equivalent.

    Raises ValueError for an unknown unit tag.
    """
    try:
        scale_from = _UNIT_TO_JOULE[from_unit]
    except KeyError:
        raise ValueError(f"unknown energy unit {from_unit!r}") from None
    try:
        scale_to = _UNIT_TO_JOULE[to_unit]
    except KeyError:
        raise ValueError(f"unknown energy unit {to_unit!r}") from None
    return value * (scale_from / scale_to)


def reduced_mass(m1, m2):
    """Two-body reduced mass m1*m2/(m1+m2), in whatever unit m1 and m2 share."""
    if m1 <= 0.0 or m2 <= 0.0:
        raise ValueError("masses must be positive")
    return m1 * m2 / (m1 + m2)
