import math

import numpy as np
import pytest
from scipy.optimize import brentq
from scipy.special import erf
from scipy.stats import chisquare, skewnorm

from tweezerforge.imaging import (HistogramModel, optimize_threshold,
                                  sample_histogram)
from tweezerforge.imaging.model import _quad, reference_model


MODEL = reference_model()


def _gauss_cdf_mass(mu, sigma, lo, hi):
    s = math.sqrt(2.0) * sigma
    return 0.5 * (erf((hi - mu) / s) - erf((lo - mu) / s))


def _dark_above_closed_form(m, x_th):
    # independent closed-form check of the quadrature error integrals
    num = _gauss_cdf_mass(m.mu_D, m.sigma_D, x_th, m.x_max) \
        + m.a / m.b * (math.exp(-m.b * x_th) - math.exp(-m.b * m.x_max))
    den = _gauss_cdf_mass(m.mu_D, m.sigma_D, 0.0, m.x_max) \
        + m.a / m.b * (1.0 - math.exp(-m.b * m.x_max))
    return num / den


def _bright_below_closed_form(m, x_th):
    lo = skewnorm.cdf(0.0, m.c, loc=m.mu_B, scale=m.sigma_B)
    hi = skewnorm.cdf(m.x_max, m.c, loc=m.mu_B, scale=m.sigma_B)
    at = skewnorm.cdf(x_th, m.c, loc=m.mu_B, scale=m.sigma_B)
    return (at - lo) / (hi - lo)


def test_model_validation():
    with pytest.raises(ValueError):
        HistogramModel(F=1.2, sigma_D=1, mu_D=0, a=0, b=1, sigma_B=1,
                       mu_B=10, c=0)
    with pytest.raises(ValueError):
        HistogramModel(F=0.5, sigma_D=-1, mu_D=0, a=0, b=1, sigma_B=1,
                       mu_B=10, c=0)
    with pytest.raises(ValueError):
        HistogramModel(F=0.5, sigma_D=1, mu_D=0, a=0.1, b=-2, sigma_B=1,
                       mu_B=10, c=0)


def test_densities_are_normalized():
    for f in (MODEL.p_dark, MODEL.p_bright, MODEL.mixture):
        assert _quad(f, 0.0, MODEL.x_max,
                     landmarks=(MODEL.mu_D, MODEL.mu_B)) == \
            pytest.approx(1.0, abs=1e-9)


def test_error_integrals_match_closed_forms():
    for x_th in (40.0, 80.0, 124.78, 200.0):
        assert MODEL.dark_above(x_th) == \
            pytest.approx(_dark_above_closed_form(MODEL, x_th), rel=1e-9)
        assert MODEL.bright_below(x_th) == \
            pytest.approx(_bright_below_closed_form(MODEL, x_th), rel=1e-9)


def test_threshold_satisfies_density_balance():
    # at the optimum the weighted densities cross:
    # (1-F) p_D(x) = F p_B(x)
    rep = optimize_threshold(MODEL)
    x_star = brentq(
        lambda x: (1 - MODEL.F) * MODEL.p_dark(x)
        - MODEL.F * MODEL.p_bright(x), 60.0, 140.0, xtol=1e-10)
    assert rep.threshold == pytest.approx(x_star, abs=1e-4)
    assert rep.reliable


def test_reference_operating_point():
    rep = optimize_threshold(MODEL)
    assert 1.3e-3 < 1.0 - rep.fidelity < 1.6e-3
    assert rep.threshold == pytest.approx(124.78, abs=0.1)
    assert rep.survival is None


def test_minimum_error_below_endpoints_and_unimodal_near_optimum():
    rep = optimize_threshold(MODEL)
    e_min = 1.0 - rep.fidelity
    assert e_min <= MODEL.error(0.0)
    assert e_min <= MODEL.error(MODEL.x_max)
    xs = np.linspace(rep.threshold - 30, rep.threshold + 30, 21)
    errs = [MODEL.error(x) for x in xs]
    k = int(np.argmin(errs))
    assert np.all(np.diff(errs[:k + 1]) <= 1e-15) or k == 0
    assert np.all(np.diff(errs[k:]) >= -1e-15)


def test_disjoint_supports_give_unit_fidelity():
    m = HistogramModel(F=0.4, sigma_D=1.0, mu_D=20.0, a=0.0, b=1.0,
                       sigma_B=1.0, mu_B=120.0, c=0.0)
    rep = optimize_threshold(m)
    assert rep.fidelity == pytest.approx(1.0, abs=1e-12)
    # any threshold in the gap is equivalent; the report's must lie there
    assert 20.0 < rep.threshold < 120.0
    assert rep.E0 < 1e-12 and rep.E1 < 1e-12
    # spot-check the equivalence across the gap
    for x_th in (40.0, 70.0, 100.0):
        assert m.error(x_th) < 1e-12


def test_symmetric_gaussians_cross_at_midpoint():
    m = HistogramModel(F=0.5, sigma_D=5.0, mu_D=40.0, a=0.0, b=1.0,
                       sigma_B=5.0, mu_B=80.0, c=0.0)
    rep = optimize_threshold(m)
    assert rep.threshold == pytest.approx(60.0, abs=1e-3)


def test_overlapping_distributions_flagged():
    # bright peak sits below the dark peak, so thresholding above is
    # worse than chance and the minimum error exceeds 0.5
    m = HistogramModel(F=0.5, sigma_D=8.0, mu_D=90.0, a=0.0, b=1.0,
                       sigma_B=8.0, mu_B=40.0, c=0.0)
    rep = optimize_threshold(m)
    assert not rep.reliable
    # exactly identical peaks sit at chance, which is not flagged
    m2 = HistogramModel(F=0.5, sigma_D=10.0, mu_D=50.0, a=0.0, b=1.0,
                        sigma_B=10.0, mu_B=50.0, c=0.0)
    rep2 = optimize_threshold(m2)
    assert rep2.fidelity == pytest.approx(0.5, abs=1e-9)
    assert rep2.reliable


def test_sampling_reproducible_and_bounded():
    a = sample_histogram(MODEL, 5000, seed=12)
    b = sample_histogram(MODEL, 5000, seed=12)
    assert np.array_equal(a, b)
    assert a.min() >= 0.0 and a.max() <= MODEL.x_max


def test_single_component_limits():
    dark_only = HistogramModel(F=0.0, sigma_D=9.0, mu_D=25.0, a=0.03,
                               b=0.04, sigma_B=40.0, mu_B=150.0, c=4.0)
    x = sample_histogram(dark_only, 40000, seed=3)
    mean_true = _quad(lambda t: t * dark_only.p_dark(t), 0.0,
                      dark_only.x_max, landmarks=(25.0, 150.0))
    assert abs(x.mean() - mean_true) < 3.0 * x.std() / math.sqrt(x.size)

    bright_only = HistogramModel(F=1.0, sigma_D=9.0, mu_D=25.0, a=0.03,
                                 b=0.04, sigma_B=40.0, mu_B=150.0, c=4.0)
    y = sample_histogram(bright_only, 20000, seed=3)
    assert y.min() > 40.0   # no dark counts at all


def test_samples_match_analytic_mixture():
    n = 100000
    x = sample_histogram(MODEL, n, seed=4)
    edges = np.linspace(0.0, MODEL.x_max, 60)
    hist, _ = np.histogram(x, bins=edges)
    expected = np.array([
        n * _quad(MODEL.mixture, lo, hi, landmarks=(MODEL.mu_D, MODEL.mu_B))
        for lo, hi in zip(edges[:-1], edges[1:])])
    keep = expected > 5.0
    # fold the sparse tail mass into the last kept bin
    obs = np.append(hist[keep][:-1], hist[~keep].sum() + hist[keep][-1])
    exp = np.append(expected[keep][:-1],
                    expected[~keep].sum() + expected[keep][-1])
    stat, p = chisquare(obs, exp * obs.sum() / exp.sum())
    assert p > 0.01
