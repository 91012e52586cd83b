"""Adiabatic curve extraction and the radial model potential."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from ..units import ELECTRON_MASSES_PER_AMU
from .hamiltonian import (ASYMPTOTE_HALF, ASYMPTOTE_THREEHALF, EH_MHZ,
                          F2_CHANNEL_HALF, F2_CHANNEL_THREEHALF, F2_HALF,
                          F2_THREEHALF, block_half, block_threehalf)
from .parameters import PaParameters

# diagonal eigenvector overlap below this between neighbouring radii means the
# adiabatic continuation is ambiguous
_OVERLAP_MIN = 0.8


@dataclass
class PotentialCurve:
    """One adiabatic curve, +-Omega partners merged.

    V is in MHz relative to the excited spin-0 atomic line; the hyperfine
    asymptote (in MHz) is stored alongside. block/block_index locate the curve
    inside its symmetry block for eigenvector reconstruction; f2_channel is
    the short-range-limit <F^2> used as the default centrifugal weight.
    """

    index: int
    abs_omega: float
    R_grid: np.ndarray
    V: np.ndarray
    attractive: bool
    asymptote: float
    block: str
    block_index: int
    f2_channel: float
    Te: Optional[float] = None


def _tracked_eigh(R_grid, block_fn, params, label):
    w, v = block_fn(R_grid, params)
    # adjacent-radius eigenvector overlap guards the adiabatic labeling
    ov = np.abs(np.einsum("nki,nkj->nij", v[:-1], v[1:]))
    diag = np.diagonal(ov, axis1=1, axis2=2)
    worst = diag.min() if diag.size else 1.0
    if worst < _OVERLAP_MIN:
        k = int(np.unravel_index(np.argmin(diag), diag.shape)[0])
        raise ValueError(
            f"R grid too coarse for adiabatic tracking of the {label} block: "
            f"eigenvector overlap {worst:.3f} between R={R_grid[k]:.3f} and "
            f"R={R_grid[k + 1]:.3f} a0")
    return w, v


def adiabatic_potentials(params: PaParameters, R_grid):
    """Diagonalize the interaction on R_grid and return the 6 adiabatic curves.

    Curves are numbered 1..6 ordered by hyperfine asymptote, then by energy
    at R = 100 a0. Exactly three are attractive.
    """
    R_grid = np.asarray(R_grid, dtype=float)
    if R_grid.ndim != 1 or R_grid.size < 2:
        raise ValueError("R_grid must be a 1-D array with at least 2 samples")
    if R_grid[0] <= 0.0 or np.any(np.diff(R_grid) <= 0.0):
        raise ValueError("R_grid must be strictly increasing and positive")

    w_half, _ = _tracked_eigh(R_grid, block_half, params, "|Omega|=1/2")
    w_three, _ = _tracked_eigh(R_grid, block_threehalf, params, "|Omega|=3/2")

    # ordering probe at a fixed mid-range radius
    probe = np.array([100.0])
    e_half_100 = block_half(probe, params)[0][0]
    e_three_100 = block_threehalf(probe, params)[0][0]

    raw = []
    for k in range(4):
        raw.append(dict(block="half", block_index=k, abs_omega=0.5,
                        V=w_half[:, k] * EH_MHZ,
                        asym=ASYMPTOTE_HALF[k] * params.A,
                        e100=e_half_100[k], f2=F2_CHANNEL_HALF[k]))
    for k in range(2):
        raw.append(dict(block="threehalf", block_index=k, abs_omega=1.5,
                        V=w_three[:, k] * EH_MHZ,
                        asym=ASYMPTOTE_THREEHALF[k] * params.A,
                        e100=e_three_100[k], f2=F2_CHANNEL_THREEHALF[k]))
    raw.sort(key=lambda c: (c["asym"], c["e100"]))

    curves = []
    for n, c in enumerate(raw, start=1):
        curves.append(PotentialCurve(
            index=n, abs_omega=c["abs_omega"], R_grid=R_grid, V=c["V"],
            attractive=bool(c["V"][0] < c["asym"]), asymptote=c["asym"],
            block=c["block"], block_index=c["block_index"],
            f2_channel=c["f2"]))
    return curves


@dataclass
class ModelPotential:
    """Callable radial potential V(R) in MHz; raises outside the sampled range."""

    Te: float
    curve_index: int
    rmin: float
    rmax: float
    _spline: CubicSpline = field(repr=False)

    def __call__(self, R):
        R = np.asarray(R, dtype=float)
        if np.any(R < self.rmin) or np.any(R > self.rmax):
            raise ValueError(
                f"R outside sampled range [{self.rmin}, {self.rmax}] a0")
        return self._spline(R)


def model_potential(curve: PotentialCurve, Te, params: PaParameters, f2=None):
    """Electronic curve + centrifugal + dispersion terms for one Te.

    The centrifugal weight is Te(Te+1) + <F^2> - 2*Omega^2. f2 selects the
    <F^2> evaluation: None uses the curve's short-range channel value,
    "adiabatic" the R-dependent eigenvector expectation, a number is used
    as-is.
    """
    R = curve.R_grid
    if f2 is None:
        f2_val = curve.f2_channel
    elif f2 == "adiabatic":
        block_fn, op = ((block_half, F2_HALF) if curve.block == "half"
                        else (block_threehalf, F2_THREEHALF))
        _, v = block_fn(R, params)
        vec = v[:, :, curve.block_index]
        f2_val = np.einsum("ni,ij,nj->n", vec, op, vec)
    else:
        f2_val = float(f2)

    mu_me = params.mu * ELECTRON_MASSES_PER_AMU
    cent = (Te * (Te + 1.0) + f2_val - 2.0 * curve.abs_omega ** 2) \
        / (2.0 * mu_me * R * R)
    v_mhz = curve.V + (cent - params.C6 / R ** 6 + params.C12 / R ** 12) * EH_MHZ
    spline = CubicSpline(R, v_mhz)
    return ModelPotential(Te=Te, curve_index=curve.index,
                          rmin=R[0], rmax=R[-1], _spline=spline)
