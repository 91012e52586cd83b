"""Histogram and spectroscopy line-shape fitting."""

import math
import warnings

import numpy as np
from scipy import optimize
from scipy.special import erf
from scipy.stats import skewnorm

from .model import HistogramModel


class FitError(RuntimeError):
    """Fit failure; carries the last parameter iterate when available."""

    def __init__(self, message, last_params=None):
        super().__init__(message)
        self.last_params = last_params


def _gauss_mass(mu, sigma, lo, hi):
    s = math.sqrt(2.0) * sigma
    return 0.5 * (erf((hi - mu) / s) - erf((lo - mu) / s))


def _mixture_density(x, F, sigma_D, mu_D, a, b, sigma_B, mu_B, c, x_max):
    """Renormalized mixture with closed-form component norms."""
    dark = np.exp(-0.5 * ((x - mu_D) / sigma_D) ** 2) \
        / (math.sqrt(2.0 * math.pi) * sigma_D) + a * np.exp(-b * x)
    n_dark = _gauss_mass(mu_D, sigma_D, 0.0, x_max) \
        + a / b * (1.0 - math.exp(-b * x_max))
    bright = skewnorm.pdf(x, c, loc=mu_B, scale=sigma_B)
    n_bright = skewnorm.cdf(x_max, c, loc=mu_B, scale=sigma_B) \
        - skewnorm.cdf(0.0, c, loc=mu_B, scale=sigma_B)
    return (1.0 - F) * dark / n_dark + F * bright / n_bright


def _split_guess(counts):
    """Two-means split of the count axis for initial peak estimates."""
    t = float(np.mean(counts))
    for _ in range(20):
        lo = counts[counts < t]
        hi = counts[counts >= t]
        if lo.size == 0 or hi.size == 0:
            break
        t_new = 0.5 * (lo.mean() + hi.mean())
        if abs(t_new - t) < 1e-9:
            break
        t = t_new
    lo = counts[counts < t]
    hi = counts[counts >= t]
    return lo, hi


def fit_histogram(counts):
    """Weighted least squares of the two-peak mixture on binned counts.

    Returns (HistogramModel, covariance); residual diagnostics are
    attached to the model.  Raises FitError on non-convergence (with the
    last iterate) or when the fitted peaks collapse onto one another.
    """
    counts = np.asarray(counts, dtype=float)
    if counts.size < 1000:
        raise ValueError("need at least 1000 samples to fit the mixture")
    if np.ptp(counts) == 0.0:
        raise FitError("degenerate data: all counts identical")

    hist, edges = np.histogram(counts, bins="fd")
    centers = 0.5 * (edges[:-1] + edges[1:])
    width = edges[1] - edges[0]
    sigma = np.sqrt(np.maximum(hist, 1.0))
    x_max = float(edges[-1] + 2.0 * width)
    n_tot = counts.size

    lo, hi = _split_guess(counts)
    if lo.size == 0 or hi.size == 0:
        raise FitError("degenerate data: single peak")
    span = float(np.ptp(counts))
    p0 = np.array([
        hi.size / counts.size,                       # F
        max(lo.std(), 0.05 * span), lo.mean(),       # sigma_D, mu_D
        0.01 / span, 10.0 / span,                    # a, b
        max(hi.std(), 0.05 * span), hi.mean(),       # sigma_B, mu_B
        1.0,                                         # c
    ])
    lower = [0.0, 1e-6 * span, -np.inf, 0.0, 1e-3 / span,
             1e-6 * span, -np.inf, -50.0]
    upper = [1.0, span, np.inf, np.inf, np.inf, span, np.inf, 50.0]

    def residuals(p):
        pred = n_tot * width * _mixture_density(centers, *p, x_max)
        return (hist - pred) / sigma

    res = optimize.least_squares(residuals, p0, bounds=(lower, upper),
                                 xtol=1e-12, ftol=1e-12, max_nfev=20000)
    if not res.success:
        raise FitError(f"histogram fit did not converge: {res.message}",
                       last_params=res.x)
    p = res.x

    if abs(p[6] - p[2]) < (p[1] + p[5]):
        raise FitError("fitted peaks overlap: data looks single-peaked",
                       last_params=p)

    dof = max(len(hist) - len(p), 1)
    chi2 = float(2.0 * res.cost)
    jtj = res.jac.T @ res.jac
    try:
        cov = np.linalg.inv(jtj) * chi2 / dof
    except np.linalg.LinAlgError:
        cov = np.linalg.pinv(jtj) * chi2 / dof

    model = HistogramModel(F=p[0], sigma_D=p[1], mu_D=p[2], a=p[3], b=p[4],
                           sigma_B=p[5], mu_B=p[6], c=p[7], x_max=x_max)
    model.fit_diagnostics = {
        "chi2": chi2, "dof": dof, "reduced_chi2": chi2 / dof,
        "bin_edges": edges, "residuals": residuals(p),
    }
    return model, cov


def _double_lorentzian(x, off, x1, w1, a1, x2, w2, a2):
    l1 = a1 * (w1 / 2.0) ** 2 / ((x - x1) ** 2 + (w1 / 2.0) ** 2)
    l2 = a2 * (w2 / 2.0) ** 2 / ((x - x2) ** 2 + (w2 / 2.0) ** 2)
    return off - l1 - l2


def fit_double_lorentzian(x, y):
    """Fit a constant minus two Lorentzian dips.

    Returns (centers, widths, amplitudes, covariance) with centers
    sorted ascending.  Warns when one dip's amplitude is consistent
    with zero.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 8:
        raise ValueError("need at least 8 points bracketing both dips")

    off0 = float(np.max(y))
    depth = off0 - y
    span = float(x.max() - x.min())
    k1 = int(np.argmax(depth))
    # second guess: deepest point at least span/6 away from the first
    far = np.abs(x - x[k1]) > span / 6.0
    k2 = int(np.argmax(np.where(far, depth, -np.inf))) if far.any() else k1
    w0 = span / 10.0
    p0 = [off0, x[k1], w0, max(depth[k1], 1e-6),
          x[k2], w0, max(depth[k2], 1e-6)]
    bounds = ([-np.inf, x.min() - span, 1e-9 * span, 0.0,
               x.min() - span, 1e-9 * span, 0.0],
              [np.inf, x.max() + span, 10.0 * span, np.inf,
               x.max() + span, 10.0 * span, np.inf])
    try:
        popt, pcov = optimize.curve_fit(
            _double_lorentzian, x, y, p0=p0, bounds=bounds,
            xtol=1e-14, ftol=1e-14, gtol=1e-14, maxfev=40000)
    except RuntimeError as exc:
        raise FitError(f"double Lorentzian fit did not converge: {exc}",
                       last_params=np.asarray(p0)) from exc

    # order the two dips by center, permuting the covariance to match
    order = [0, 1, 2, 3, 4, 5, 6]
    if popt[4] < popt[1]:
        order = [0, 4, 5, 6, 1, 2, 3]
    popt = popt[order]
    pcov = pcov[np.ix_(order, order)]

    centers = popt[[1, 4]]
    widths = popt[[2, 5]]
    amps = popt[[3, 6]]
    errs = np.sqrt(np.maximum(np.diag(pcov), 0.0))
    # amplitudes a millionth of the data range are zero for any purpose
    floor = 1e-6 * max(float(np.ptp(y)), 1e-30)
    for i, (amp, err) in enumerate(zip(amps, errs[[3, 6]])):
        if amp < 2.0 * err + floor:
            warnings.warn(f"dip {i + 1} amplitude {amp:.3g} consistent with "
                          "zero: data may contain a single dip")
    return centers, widths, amps, pcov
