"""Bound-level spectra of the adiabatic curves, and CSV emitters."""

import numpy as np

from ..units import ELECTRON_MASSES_PER_AMU
from .hamiltonian import EH_MHZ
from .numerov import NumerovGrid, solve_bound_states
from .parameters import PaParameters
from .potentials import adiabatic_potentials, model_potential

# Levels below the split are solved on a truncated grid: their outer turning
# points sit well inside it, and the shorter outward integration avoids
# hundreds of e-folds of forbidden-region growth on the full grid.
_WINDOW_SPLIT_MHZ = -20.0
_DEEP_RMAX = 400.0

# shallowest level's forbidden tail must decay by this factor at the edge
_TAIL_DECAY = 1e6
_RMAX_CAP = 8000.0

_DEFAULT_GRID = NumerovGrid(rmin=10.0, rmax=3500.0, step=0.005)


def _tail_ok(model, grid, e_top, mu_me):
    R = grid.radii()
    v = model(R)
    allowed = np.nonzero(v <= e_top)[0]
    if allowed.size == 0:
        return True
    r_turn = R[allowed[-1]]
    kappa = np.sqrt(2.0 * mu_me * abs(e_top) / EH_MHZ)
    return kappa * (grid.rmax - r_turn) >= np.log(_TAIL_DECAY)


def pa_spectrum(params: PaParameters, Te_list, E_window, curve_index=2,
                grid=None, f2=None):
    """Bound levels of one adiabatic curve for each Te, sorted by energy.

    E_window is (low, high) in MHz relative to the curve's own dissociation
    limit; only the negative part is searched. The outer grid edge grows
    automatically until the shallowest level's tail decays by 1e6.
    """
    if grid is None:
        grid = _DEFAULT_GRID
    elif isinstance(grid, tuple):
        grid = NumerovGrid(*grid)
    e_lo, e_hi = float(E_window[0]), float(E_window[1])
    e_hi = min(e_hi, -5e-4)   # levels shallower than the grid can resolve
    if e_lo >= e_hi:
        return []
    mu_me = params.mu * ELECTRON_MASSES_PER_AMU

    out = []
    for Te in Te_list:
        Te = float(Te)
        g = grid
        for _round in range(5):
            curves = adiabatic_potentials(params, g.radii())
            curve = next(c for c in curves if c.index == curve_index)
            model = model_potential(curve, Te, params, f2=f2)

            found = []
            if e_lo < _WINDOW_SPLIT_MHZ:
                deep_hi = min(e_hi, _WINDOW_SPLIT_MHZ)
                deep_grid = NumerovGrid(g.rmin, min(_DEEP_RMAX, g.rmax),
                                        g.step)
                found += solve_bound_states(model, params.mu,
                                            (e_lo, deep_hi), deep_grid)
            if e_hi > _WINDOW_SPLIT_MHZ:
                sh_lo = max(e_lo, _WINDOW_SPLIT_MHZ)
                shallow = solve_bound_states(model, params.mu,
                                             (sh_lo, e_hi), g)
                # drop a duplicate straddling the window split
                for s in shallow:
                    if not any(abs(s.binding_energy - d.binding_energy) < 0.02
                               for d in found):
                        found.append(s)
            found.sort(key=lambda s: s.binding_energy)

            if not found or g.rmax >= _RMAX_CAP:
                break
            if _tail_ok(model, g, found[-1].binding_energy, mu_me):
                break
            g = NumerovGrid(g.rmin, min(g.rmax * 1.25, _RMAX_CAP), g.step)

        for i, s in enumerate(found):
            s.Te = Te
            s.v_index = len(found) - 1 - i
        out += found
    out.sort(key=lambda s: s.binding_energy)
    return out


def spectrum_to_csv(states, fh):
    fh.write("Te,E_MHz,nodes\n")
    for s in states:
        fh.write(f"{s.Te:g},{s.binding_energy:.6f},{s.nodes}\n")


def potentials_to_csv(curves, fh):
    fh.write("R_a0,V_MHz,curve,Te,omega\n")
    for c in curves:
        te = "" if c.Te is None else f"{c.Te:g}"
        for r, v in zip(c.R_grid, c.V):
            fh.write(f"{r:.4f},{v:.6f},{c.index},{te},{c.abs_omega:g}\n")
