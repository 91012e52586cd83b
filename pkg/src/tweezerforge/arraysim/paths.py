"""Tweezer transport trajectories and clearance tests.

Corridor paths run along lines offset half a pitch from the site rows and
columns, so a moving trap never approaches a stationary site center closer
than pitch/2.  Parabolic paths take the direct chord with a perpendicular
bow and can sweep through the activation radius of intermediate sites;
that difference is the whole point of modeling both.
"""

import math

import numpy as np
from numba import njit

# waypoint count for parabolic arcs; bow sagitta is resolved to ~1% of
# the activation radius at this sampling
_N_ARC = 33


def corridor_path(geometry, src, dst_xy=None, dst=None):
    """Waypoints from site src to site dst (or an explicit off-grid point).

    Shape: half-pitch step out of the source column, vertical run along
    the column corridor, horizontal run along the destination row
    corridor, half-pitch drop onto the destination.
    """
    p = geometry.pitch
    x0, y0 = geometry.site_xy(src)
    if dst_xy is None:
        x1, y1 = geometry.site_xy(dst)
    else:
        x1, y1 = dst_xy
    sx = 1.0 if x1 >= x0 else -1.0
    sy = 1.0 if y1 >= y0 else -1.0
    cx = x0 + sx * p / 2.0          # column corridor
    ry = y1 + sy * p / 2.0          # row corridor past the destination
    pts = [(x0, y0), (cx, y0), (cx, ry), (x1, ry), (x1, y1)]
    out = [pts[0]]
    for q in pts[1:]:
        if abs(q[0] - out[-1][0]) > 1e-12 or abs(q[1] - out[-1][1]) > 1e-12:
            out.append(q)
    return out


def parabolic_path(geometry, src, dst_xy=None, dst=None, bow=1.08):
    """Direct chord with a perpendicular parabolic bow of height `bow` um.

    The bow is pushed to the left of the travel direction.  Within half a
    pitch of either endpoint the arc hugs the chord, so long transports
    still sweep close to sites near their ends.
    """
    x0, y0 = geometry.site_xy(src)
    if dst_xy is None:
        x1, y1 = geometry.site_xy(dst)
    else:
        x1, y1 = dst_xy
    dx, dy = x1 - x0, y1 - y0
    length = math.hypot(dx, dy)
    if length < 1e-12:
        return [(x0, y0), (x1, y1)]
    nx, ny = -dy / length, dx / length     # left normal
    t = np.linspace(0.0, 1.0, _N_ARC)
    h = bow * 4.0 * t * (1.0 - t)
    xs = x0 + t * dx + h * nx
    ys = y0 + t * dy + h * ny
    return list(zip(xs.tolist(), ys.tolist()))


@njit(cache=True)
def _min_dist_to_path(px, py, xs, ys):
    """Minimum distance from point (px, py) to the polyline (xs, ys)."""
    best = 1e300
    for k in range(len(xs) - 1):
        ax, ay = xs[k], ys[k]
        bx, by = xs[k + 1], ys[k + 1]
        vx, vy = bx - ax, by - ay
        vv = vx * vx + vy * vy
        if vv <= 0.0:
            t = 0.0
        else:
            t = ((px - ax) * vx + (py - ay) * vy) / vv
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
        qx, qy = ax + t * vx, ay + t * vy
        d2 = (px - qx) ** 2 + (py - qy) ** 2
        if d2 < best:
            best = d2
    return math.sqrt(best)


@njit(cache=True)
def _near_mask(xs, ys, centers, radius, skip_a, skip_b):
    """Boolean mask of site centers within radius of the polyline.

    skip_a/skip_b are site indices exempt from the test (the move's own
    endpoints); pass -1 to skip nothing.
    """
    n = centers.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        if i == skip_a or i == skip_b:
            continue
        if _min_dist_to_path(centers[i, 0], centers[i, 1], xs, ys) < radius:
            out[i] = True
    return out


def path_near_sites(path, centers, radius, skip=()):
    """Indices of site centers the path approaches within radius."""
    xs = np.array([p[0] for p in path], dtype=np.float64)
    ys = np.array([p[1] for p in path], dtype=np.float64)
    skip_a = skip[0] if len(skip) > 0 else -1
    skip_b = skip[1] if len(skip) > 1 else -1
    mask = _near_mask(xs, ys, np.asarray(centers, dtype=np.float64),
                      float(radius), skip_a, skip_b)
    return np.nonzero(mask)[0]


def path_clearance(path, centers, skip=()):
    """Smallest distance from the path to any non-exempt site center."""
    xs = np.array([p[0] for p in path], dtype=np.float64)
    ys = np.array([p[1] for p in path], dtype=np.float64)
    best = math.inf
    for i, (px, py) in enumerate(np.asarray(centers, dtype=np.float64)):
        if i in skip:
            continue
        best = min(best, _min_dist_to_path(px, py, xs, ys))
    return best
