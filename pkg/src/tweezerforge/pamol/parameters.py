"""Input parameters and channel basis for the two-isotope excited molecular complex.

One atom carries nuclear spin 1/2 and an excited-state hyperfine constant A;
the other is spinless. The shared excitation lives on either atom, giving a
12-dimensional product basis split into two sectors by which atom is excited.
"""

from dataclasses import dataclass, field

import numpy as np

from ..units import CONSTANTS, reduced_mass

# default isotope masses (amu) of the spin-1/2 / spin-0 pair
MASS_171 = 170.9363302
MASS_174 = 173.9388664

# intercombination-line wavelength (nm) used for the retardation wavenumber
_LAMBDA_NM = 555.802

_K_PHOTON_DEFAULT = 2.0 * np.pi / (_LAMBDA_NM * 1e-9 / CONSTANTS.bohr_radius)


@dataclass(frozen=True)
class PaParameters:
    """Physical inputs of the long-range model.

    A: excited-state hyperfine constant of the spin-1/2 atom (MHz).
    d2: resonant dipole coupling d^2/(4*pi*eps0) (E_h a0^3).
    C6: van der Waals coefficient (E_h a0^6).
    C12: short-range repulsion coefficient (E_h a0^12).
    mu: reduced mass of the pair (amu).
    k_photon: transition wavenumber 2*pi/lambda (1/a0).
    retardation: apply oscillatory kR factors to the dipole exchange.
    """

    A: float = 3957.781
    d2: float = 0.08744313
    C6: float = 2405.364747
    C12: float = 9.318e8
    mu: float = field(default_factory=lambda: reduced_mass(MASS_171, MASS_174))
    k_photon: float = _K_PHOTON_DEFAULT
    retardation: bool = True

    def __post_init__(self):
        # A may be zeroed to isolate the bare exchange spectrum
        if self.A < 0.0:
            raise ValueError("parameter A must be non-negative")
        for name in ("d2", "C6", "C12", "mu", "k_photon"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"parameter {name} must be positive")


@dataclass(frozen=True)
class BasisState:
    """One product state, tagged by which atom holds the excitation."""

    excited: int      # 171 or 174
    m_I: float        # nuclear spin projection of the spin-1/2 atom
    m_J: float        # electronic projection of the excited atom (0 if none)
    m_total: float    # conserved total projection Omega


@dataclass(frozen=True)
class ChannelBasis:
    states: tuple

    def __post_init__(self):
        if len(self.states) != 12:
            raise ValueError("channel basis must contain exactly 12 states")

    def omega_blocks(self):
        """Indices grouped by total projection."""
        blocks = {}
        for i, s in enumerate(self.states):
            blocks.setdefault(s.m_total, []).append(i)
        return blocks


def channel_basis():
    """The 12 product states in Hamiltonian row order.

    Rows 0..5: spin-0 atom excited, ordered by (m_I, m_J).
    Rows 6..11: spin-1/2 atom excited, ordered by (m_J, m_I).
    """
    states = []
    for m_i in (-0.5, 0.5):
        for m_j in (-1.0, 0.0, 1.0):
            states.append(BasisState(174, m_i, m_j, m_i + m_j))
    for m_j in (-1.0, 0.0, 1.0):
        for m_i in (-0.5, 0.5):
            states.append(BasisState(171, m_i, m_j, m_i + m_j))
    return ChannelBasis(tuple(states))
