"""Decay-envelope and fringe fitting, and pulse-error analysis."""

import math

import numpy as np
from scipy import optimize

from .types import FitResult


def _as_xy(points):
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be (T, value) pairs")
    return pts[:, 0], pts[:, 1]


def fit_stretched_exp(points):
    """Fit A*exp(-(T/T2)^n); returns FitResult with params A, T2, n."""
    t, y = _as_xy(points)
    if t.size < 5:
        raise ValueError("need at least 5 points")
    if np.unique(t).size != t.size:
        raise ValueError("T values must be distinct")

    a0 = max(float(np.max(y)), 1e-12)
    # T2 guess: first crossing of A/e, else the median time
    below = np.nonzero(y < a0 / math.e)[0]
    t20 = float(t[below[0]]) if below.size else float(np.median(t))
    t20 = max(t20, 1e-9)
    p0 = [a0, t20, 1.0]

    def model(tt, a, t2, n):
        return a * np.exp(-np.power(np.maximum(tt, 0.0) / t2, n))

    try:
        popt, pcov = optimize.curve_fit(
            model, t, y, p0=p0,
            bounds=([0.0, 1e-12, 0.05], [np.inf, np.inf, 10.0]),
            xtol=1e-14, ftol=1e-14, gtol=1e-14, maxfev=40000)
    except RuntimeError as exc:
        raise RuntimeError(
            f"stretched-exponential fit did not converge: {exc}") from exc
    resid = y - model(t, *popt)
    return FitResult(params={"A": popt[0], "T2": popt[1], "n": popt[2]},
                     covariance=pcov,
                     residual_norm=float(np.linalg.norm(resid)))


def _periodogram_peak(t, y):
    """Dominant nonzero frequency and its complex amplitude."""
    order = np.argsort(t)
    ts, ys = t[order], y[order]
    dt = float(np.median(np.diff(ts)))
    spec = np.fft.rfft(ys - ys.mean())
    freqs = np.fft.rfftfreq(ts.size, dt)
    k = 1 + int(np.argmax(np.abs(spec[1:])))
    return freqs[k], spec[k]


def fit_damped_sinusoid(points):
    """Fit offset + amplitude*exp(-decay*t)*cos(2*pi*f*t + phase).

    The frequency guess comes from the periodogram peak.  Params:
    offset, amplitude, frequency, phase, decay (1/s; 0 = undamped).
    """
    t, y = _as_xy(points)
    if t.size < 6:
        raise ValueError("need at least 6 points to fit 5 parameters")
    f0, peak = _periodogram_peak(t, y)
    if f0 <= 0.0:
        f0 = 1.0 / max(float(np.ptp(t)), 1e-12)
    p0 = [float(np.mean(y)), 2.0 * np.abs(peak) / t.size,
          f0, float(np.angle(peak)), 0.0]

    def model(tt, off, amp, freq, phase, decay):
        return off + amp * np.exp(-decay * tt) * \
            np.cos(2.0 * math.pi * freq * tt + phase)

    try:
        popt, pcov = optimize.curve_fit(
            model, t, y, p0=p0,
            bounds=([-np.inf, 0.0, 0.0, -2.0 * math.pi, 0.0],
                    [np.inf, np.inf, np.inf, 2.0 * math.pi, np.inf]),
            xtol=1e-15, ftol=1e-15, gtol=1e-15, maxfev=60000)
    except RuntimeError as exc:
        raise RuntimeError(f"fringe fit did not converge: {exc}") from exc
    resid = y - model(t, *popt)
    return FitResult(params={"offset": popt[0], "amplitude": popt[1],
                             "frequency": popt[2], "phase": popt[3],
                             "decay": popt[4]},
                     covariance=pcov,
                     residual_norm=float(np.linalg.norm(resid)))


def fringe_contrast(fit):
    """Amplitude normalized by the fitted offset, with propagated error."""
    off = fit.params["offset"]
    amp = fit.params["amplitude"]
    if abs(off) < 1e-12:
        raise ValueError("fitted offset is zero; contrast undefined")
    c = amp / abs(off)
    rel = 0.0
    if amp > 0.0:
        rel = math.hypot(fit.error("amplitude") / amp,
                         fit.error("offset") / off)
    return c, c * rel if amp > 0.0 else fit.error("amplitude") / abs(off)


def contrast_ratio(points_a, points_b):
    """Ratio of fringe contrasts a/b with propagated fit errors."""
    ca, ea = fringe_contrast(fit_damped_sinusoid(points_a))
    cb, eb = fringe_contrast(fit_damped_sinusoid(points_b))
    if cb == 0.0:
        raise ValueError("reference fringe has zero contrast")
    r = ca / cb
    err = r * math.hypot(ea / ca if ca else 0.0, eb / cb)
    return r, err


def pi_pulse_fidelity(rabi, detuning_error=0.0, duration_error=0.0):
    """|0> -> |1> transfer of a nominal pi pulse with control errors.

    Generalized Rabi flopping: P = (O^2/W^2) sin^2(pi W (1+e) / (2 O))
    with W = sqrt(rabi^2 + detuning^2); frequencies in plain Hz.
    """
    if rabi <= 0.0:
        raise ValueError("rabi must be positive")
    w = math.hypot(rabi, detuning_error)
    angle = math.pi * (w / rabi) * (1.0 + duration_error)
    return (rabi / w) ** 2 * math.sin(angle / 2.0) ** 2
