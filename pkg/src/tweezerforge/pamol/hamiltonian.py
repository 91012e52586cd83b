"""Resonant dipole exchange + hyperfine Hamiltonian on the 12-state basis.

The exchange couples each state with the excitation on one atom to the state
with the same nuclear projection and the excitation moved to the other atom.
Conserved total projection splits the problem into 4x4 blocks (|Omega|=1/2)
and 2x2 blocks (|Omega|=3/2); the blocks of +Omega and -Omega are degenerate.
"""

import numpy as np

from ..units import CONSTANTS
from .parameters import PaParameters, channel_basis

EH_MHZ = CONSTANTS.hartree_per_h / 1e6   # one hartree in MHz

# Overall normalization of the exchange couplings relative to d2/R^3.
# The angular structure fixes the pi:sigma ratio at -2:+1; the absolute scale
# is calibrated against the measured bound-level spectrum.  The naive choice
# (strongest coupling equal to d2/R^3, i.e. 0.5 here) leaves the deep levels
# ~80 MHz too shallow.
EXCHANGE_NORM = 0.7027

_SQ2 = np.sqrt(2.0)


def retardation_factors(u):
    """Long-range oscillatory factors for the pi and sigma dipole components.

    u = k*R. Both tend to 1 for u -> 0.
    """
    cu = np.cos(u)
    fpi = cu + u * np.sin(u)
    fsi = fpi - u * u * cu
    return fpi, fsi


def exchange_couplings(R, params: PaParameters):
    """(c_pi, c_sigma) excitation-exchange couplings at R (a0), in E_h.

    c_pi moves an m=0 excitation between the atoms, c_sigma an m=+-1 one.
    """
    kap = EXCHANGE_NORM * params.d2 / R ** 3
    if params.retardation:
        fpi, fsi = retardation_factors(params.k_photon * R)
    else:
        one = np.ones_like(R) if isinstance(R, np.ndarray) else 1.0
        fpi = fsi = one
    return -2.0 * kap * fpi, kap * fsi


def build_hamiltonian(R, params: PaParameters):
    """Full 12x12 Hermitian interaction matrix at separation R (a0), in MHz.

    Basis order is channel_basis(): rows 0..5 hold the excitation on the
    spin-0 atom (diagonal zero), rows 6..11 on the spin-1/2 atom where the
    hyperfine term A*I.J acts.
    """
    if R <= 0.0:
        raise ValueError("R must be positive")
    c_pi, c_sigma = exchange_couplings(float(R), params)
    c_pi *= EH_MHZ
    c_sigma *= EH_MHZ

    H = np.zeros((12, 12))
    a_idx = lambda m_i, m_j: 3 * int(m_i + 0.5) + int(m_j + 1)
    b_idx = lambda m_j, m_i: 6 + 2 * int(m_j + 1) + int(m_i + 0.5)

    # hyperfine A*I.J on the spin-1/2-excited sector
    for m_j in (-1.0, 0.0, 1.0):
        for m_i in (-0.5, 0.5):
            i = b_idx(m_j, m_i)
            H[i, i] = params.A * m_i * m_j
            if m_i < 0.0 and m_j > -1.0:
                # (A/2) I+ J- between (m_j, -1/2) and (m_j - 1, +1/2)
                j = b_idx(m_j - 1.0, 0.5)
                cjm = np.sqrt(2.0 - m_j * (m_j - 1.0))
                H[i, j] = H[j, i] = 0.5 * params.A * cjm

    # excitation exchange, nuclear projection conserved
    for m_i in (-0.5, 0.5):
        for m_j in (-1.0, 0.0, 1.0):
            i = a_idx(m_i, m_j)
            j = b_idx(m_j, m_i)
            H[i, j] = H[j, i] = c_pi if m_j == 0.0 else c_sigma
    return H


def block_half(R, params: PaParameters):
    """|Omega|=1/2 4x4 blocks on a radius array, eigen-decomposed (E_h).

    Block basis: [A_pi, A_sigma, B_pi, B_sigma] where A/B tag which atom is
    excited and pi/sigma tag the exchange path feeding the state.
    """
    R = np.atleast_1d(np.asarray(R, dtype=float))
    c_pi, c_sigma = exchange_couplings(R, params)
    A_eh = params.A / EH_MHZ
    H = np.zeros((R.size, 4, 4))
    H[:, 0, 2] = c_pi
    H[:, 2, 0] = c_pi
    H[:, 1, 3] = c_sigma
    H[:, 3, 1] = c_sigma
    H[:, 2, 3] = A_eh / _SQ2
    H[:, 3, 2] = A_eh / _SQ2
    H[:, 3, 3] = -A_eh / 2.0
    return np.linalg.eigh(H)


def block_threehalf(R, params: PaParameters):
    """|Omega|=3/2 2x2 blocks on a radius array, eigen-decomposed (E_h)."""
    R = np.atleast_1d(np.asarray(R, dtype=float))
    _, c_sigma = exchange_couplings(R, params)
    A_eh = params.A / EH_MHZ
    H = np.zeros((R.size, 2, 2))
    H[:, 0, 1] = c_sigma
    H[:, 1, 0] = c_sigma
    H[:, 1, 1] = A_eh / 2.0
    return np.linalg.eigh(H)


# F^2 = (I + J_a + J_b)^2 restricted to each block, for centrifugal weights.
F2_HALF = np.array([
    [11.0 / 4.0, _SQ2, 0.0, 0.0],
    [_SQ2, 7.0 / 4.0, 0.0, 0.0],
    [0.0, 0.0, 11.0 / 4.0, _SQ2],
    [0.0, 0.0, _SQ2, 7.0 / 4.0],
])
F2_THREEHALF = np.diag([15.0 / 4.0, 15.0 / 4.0])

# Hyperfine asymptote of each block eigenvalue index, in units of A.
ASYMPTOTE_HALF = (-1.0, 0.0, 0.0, 0.5)
ASYMPTOTE_THREEHALF = (0.0, 0.5)

# <F^2> of each block channel in the exchange-dominated short-range limit,
# where the eigenvectors are even/odd mixtures of one A and one B state.
F2_CHANNEL_HALF = (11.0 / 4.0, 7.0 / 4.0, 7.0 / 4.0, 11.0 / 4.0)
F2_CHANNEL_THREEHALF = (15.0 / 4.0, 15.0 / 4.0)

BASIS = channel_basis()
