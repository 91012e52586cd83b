"""Bound states of a radial potential by Numerov shooting.

Levels are bracketed by node-count bisection, then polished by matching the
log-derivative of outward and inward integrations at the outer turning point.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit
from scipy.optimize import brentq

from ..units import ELECTRON_MASSES_PER_AMU
from .hamiltonian import EH_MHZ

_BISECT_TOL_MHZ = 0.005   # node bracket width before log-derivative polish
_MAX_BISECT = 200


@dataclass(frozen=True)
class NumerovGrid:
    rmin: float = 10.0
    rmax: float = 4000.0
    step: float = 0.005

    def __post_init__(self):
        if not (0.0 < self.rmin < self.rmax) or self.step <= 0.0:
            raise ValueError("grid must satisfy 0 < rmin < rmax, step > 0")

    def radii(self):
        return np.arange(self.rmin, self.rmax, self.step)


@dataclass
class BoundState:
    binding_energy: float        # MHz, negative below the dissociation limit
    v_index: int                 # 0 = shallowest level found, counting down
    nodes: int                   # interior nodes of the wavefunction
    Te: Optional[float] = None
    R: Optional[np.ndarray] = None
    u: Optional[np.ndarray] = None


@njit(cache=True)
def _nodes_outward(Q, h):
    """Outward Numerov from u0=0; counts sign changes of u."""
    n = Q.size
    u_prev = 0.0
    u_cur = 1e-120
    nodes = 0
    h2_12 = h * h / 12.0
    f_prev = 1.0 - h2_12 * Q[0]
    f_cur = 1.0 - h2_12 * Q[1]
    for i in range(1, n - 1):
        f_next = 1.0 - h2_12 * Q[i + 1]
        u_next = ((12.0 - 10.0 * f_cur) * u_cur - f_prev * u_prev) / f_next
        if (u_next < 0.0 and u_cur > 0.0) or (u_next > 0.0 and u_cur < 0.0):
            nodes += 1
        au = abs(u_next)
        if au > 1e100:
            # renormalize against overflow; node positions are unaffected
            u_next *= 1e-100
            u_cur *= 1e-100
        u_prev = u_cur
        u_cur = u_next
        f_prev = f_cur
        f_cur = f_next
    return nodes


@njit(cache=True)
def _match_defect(Q, h, im):
    """Difference of log-derivatives of outward and inward solutions at im.

    Zero at an eigenvalue of the discretized problem.
    """
    n = Q.size
    h2_12 = h * h / 12.0
    # outward: advance (u(k-1), u(k)) from k=1 to k=im
    u_prev = 0.0
    u_cur = 1e-120
    f_prev = 1.0 - h2_12 * Q[0]
    f_cur = 1.0 - h2_12 * Q[1]
    for k in range(1, im):
        f_next = 1.0 - h2_12 * Q[k + 1]
        u_next = ((12.0 - 10.0 * f_cur) * u_cur - f_prev * u_prev) / f_next
        if abs(u_next) > 1e100:
            u_next *= 1e-100
            u_cur *= 1e-100
        u_prev = u_cur
        u_cur = u_next
        f_prev = f_cur
        f_cur = f_next
    # one extra step for u(im+1); scale is consistent with (u_prev, u_cur)
    f_next = 1.0 - h2_12 * Q[im + 1]
    u_p1 = ((12.0 - 10.0 * f_cur) * u_cur - f_prev * u_prev) / f_next
    # inward: advance (v(k+1), v(k)) from k=n-2 down to k=im
    v_next = 0.0
    v_cur = 1e-120
    g_next = 1.0 - h2_12 * Q[n - 1]
    g_cur = 1.0 - h2_12 * Q[n - 2]
    for k in range(n - 2, im, -1):
        g_prev = 1.0 - h2_12 * Q[k - 1]
        v_prev = ((12.0 - 10.0 * g_cur) * v_cur - g_next * v_next) / g_prev
        if abs(v_prev) > 1e100:
            v_prev *= 1e-100
            v_cur *= 1e-100
        v_next = v_cur
        v_cur = v_prev
        g_next = g_cur
        g_cur = g_prev
    g_prev = 1.0 - h2_12 * Q[im - 1]
    v_m1 = ((12.0 - 10.0 * g_cur) * v_cur - g_next * v_next) / g_prev
    if u_cur == 0.0 or v_cur == 0.0:
        return 1e300
    dlo = (u_p1 - u_prev) / (2.0 * h * u_cur)
    dhi = (v_next - v_m1) / (2.0 * h * v_cur)
    return dlo - dhi


@njit(cache=True)
def _wavefunction(Q, h, im):
    """Stitched outward/inward solution, continuous at im (unnormalized)."""
    n = Q.size
    h2_12 = h * h / 12.0
    u = np.zeros(n)
    u[0] = 0.0
    u[1] = 1e-120
    f_prev = 1.0 - h2_12 * Q[0]
    f_cur = 1.0 - h2_12 * Q[1]
    for i in range(1, im + 1):
        f_next = 1.0 - h2_12 * Q[i + 1]
        u[i + 1] = ((12.0 - 10.0 * f_cur) * u[i] - f_prev * u[i - 1]) / f_next
        if abs(u[i + 1]) > 1e100:
            u[: i + 2] *= 1e-100
        f_prev = f_cur
        f_cur = f_next
    w = np.zeros(n)
    w[n - 1] = 0.0
    w[n - 2] = 1e-120
    g_next = 1.0 - h2_12 * Q[n - 1]
    g_cur = 1.0 - h2_12 * Q[n - 2]
    for i in range(n - 2, im - 1, -1):
        g_prev = 1.0 - h2_12 * Q[i - 1]
        w[i - 1] = ((12.0 - 10.0 * g_cur) * w[i] - g_next * w[i + 1]) / g_prev
        if abs(w[i - 1]) > 1e100:
            w[i - 1:] *= 1e-100
        g_next = g_cur
        g_cur = g_prev
    if w[im] != 0.0 and u[im] != 0.0:
        w *= u[im] / w[im]
    u[im:] = w[im:]
    return u


def _count_interior_nodes(u):
    umax = np.max(np.abs(u))
    if umax == 0.0:
        return 0
    s = np.where(np.abs(u) > 1e-12 * umax, np.sign(u), 0.0)
    s = s[s != 0.0]
    return int(np.sum(s[1:] * s[:-1] < 0.0))


def solve_bound_states(V, mu, E_window, grid=NumerovGrid(),
                       keep_wavefunctions=False):
    """All bound levels of V (MHz) with energies inside E_window (MHz).

    V is a callable of R (a0); mu is the reduced mass in amu. Returns
    BoundState records sorted deepest-first; empty list when the window holds
    no level. Raises RuntimeError if a level fails to converge.
    """
    if isinstance(grid, tuple):
        grid = NumerovGrid(*grid)
    e_lo, e_hi = float(E_window[0]), float(E_window[1])
    if not e_lo < e_hi:
        raise ValueError("E_window must be (low, high) with low < high")
    R = grid.radii()
    Vg = np.asarray(V(R), dtype=float)
    mu_me = mu * ELECTRON_MASSES_PER_AMU
    h = grid.step

    def q_at(E):
        return 2.0 * mu_me * (Vg - E) / EH_MHZ

    def nodes_at(E):
        return _nodes_outward(q_at(E), h)

    n_lo = nodes_at(e_lo)
    n_hi = nodes_at(e_hi)
    levels = []
    for v in range(n_lo, n_hi):
        lo, hi = e_lo, e_hi
        it = 0
        while hi - lo > _BISECT_TOL_MHZ:
            it += 1
            if it > _MAX_BISECT:
                raise RuntimeError(
                    f"level {v} did not converge: bracket [{lo}, {hi}] MHz")
            mid = 0.5 * (lo + hi)
            if nodes_at(mid) <= v:
                lo = mid
            else:
                hi = mid
        e_mid = 0.5 * (lo + hi)
        # outermost classically allowed sample at the bracket midpoint
        allowed = np.nonzero(Vg <= e_mid)[0]
        im = int(np.clip(allowed[-1] if allowed.size else R.size // 2,
                         2, R.size - 3))
        try:
            e_star = brentq(lambda E: _match_defect(q_at(E), h, im), lo, hi,
                            xtol=1e-7, rtol=1e-12)
        except ValueError:
            # defect has no sign change in the bracket (pole at the matching
            # point); the bracket midpoint is already inside tolerance
            e_star = e_mid
        u = _wavefunction(q_at(e_star), h, im)
        st = BoundState(binding_energy=e_star, v_index=0,
                        nodes=_count_interior_nodes(u))
        if keep_wavefunctions:
            norm = np.sqrt(np.trapezoid(u * u, R))
            st.R = R
            st.u = u / norm if norm > 0.0 else u
        levels.append(st)
    levels.sort(key=lambda s: s.binding_energy)
    for i, st in enumerate(levels):
        st.v_index = len(levels) - 1 - i
    return levels
