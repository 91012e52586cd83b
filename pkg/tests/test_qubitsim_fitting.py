import math

import numpy as np
import pytest

from tweezerforge.qubitsim import (
    contrast_ratio,
    fit_damped_sinusoid,
    fit_stretched_exp,
    fringe_contrast,
    pi_pulse_fidelity,
)


def _fringe(t, offset, amp, freq, phase, decay):
    return offset + amp * np.exp(-decay * t) * \
        np.cos(2 * math.pi * freq * t + phase)


def test_noise_free_cosine_exact_recovery():
    t = np.linspace(0.0, 1.0, 200)
    y = _fringe(t, 0.5, 0.4, 3.0, 0.7, 0.0)
    fit = fit_damped_sinusoid(np.column_stack([t, y]))
    assert fit.params["offset"] == pytest.approx(0.5, abs=1e-9)
    assert fit.params["amplitude"] == pytest.approx(0.4, abs=1e-9)
    assert fit.params["frequency"] == pytest.approx(3.0, abs=1e-9)
    assert fit.params["phase"] == pytest.approx(0.7, abs=1e-9)
    assert fit.params["decay"] == pytest.approx(0.0, abs=1e-9)
    assert fit.residual_norm < 1e-9


def test_damped_fringe_recovery():
    t = np.linspace(0.0, 2.0, 400)
    y = _fringe(t, 0.48, 0.45, 5.5, -1.1, 0.8)
    fit = fit_damped_sinusoid(np.column_stack([t, y]))
    for name, want in (("offset", 0.48), ("amplitude", 0.45),
                       ("frequency", 5.5), ("phase", -1.1), ("decay", 0.8)):
        assert fit.params[name] == pytest.approx(want, rel=1e-6, abs=1e-8)


def test_rabi_frequency_recovered_from_noisy_data():
    # MHz-scale flopping with weak damping and shot noise
    rng = np.random.default_rng(0)
    t = np.linspace(0.0, 4e-6, 240)
    y = _fringe(t, 0.5, -0.5, 1.3e6, 0.0, 4e4)
    fit = fit_damped_sinusoid(np.column_stack([t, y + rng.normal(0, 0.01,
                                                                 t.size)]))
    pull = (fit.params["frequency"] - 1.3e6) / fit.error("frequency")
    assert abs(pull) < 3.0


def test_fringe_fit_needs_enough_points():
    t = np.linspace(0.0, 1.0, 5)
    y = _fringe(t, 0.5, 0.4, 2.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        fit_damped_sinusoid(np.column_stack([t, y]))
    with pytest.raises(ValueError):
        fit_damped_sinusoid([[0.0, 1.0, 2.0]])


def test_fringe_contrast_error_propagation():
    t = np.linspace(0.0, 1.0, 300)
    rng = np.random.default_rng(4)
    y = _fringe(t, 0.5, 0.35, 4.0, 0.3, 0.0) + rng.normal(0, 0.01, t.size)
    fit = fit_damped_sinusoid(np.column_stack([t, y]))
    c, err = fringe_contrast(fit)
    assert c == pytest.approx(0.7, abs=0.05)
    assert 0.0 < err < 0.05


def test_contrast_ratio_between_two_fringes():
    t = np.linspace(0.0, 1.0, 150)
    a = _fringe(t, 0.5, 0.991 * 0.45, 3.0, 0.2, 0.0)
    b = _fringe(t, 0.5, 0.45, 3.0, 0.2, 0.0)
    r, err = contrast_ratio(np.column_stack([t, a]), np.column_stack([t, b]))
    assert r == pytest.approx(0.991, abs=1e-9)
    assert err < 1e-9


def test_stretched_exp_exact_recovery():
    t = np.linspace(0.02, 1.8, 24)
    y = 0.97 * np.exp(-((t / 0.67) ** 1.2))
    fit = fit_stretched_exp(np.column_stack([t, y]))
    assert fit.params["A"] == pytest.approx(0.97, rel=1e-6)
    assert fit.params["T2"] == pytest.approx(0.67, rel=1e-6)
    assert fit.params["n"] == pytest.approx(1.2, rel=1e-6)


def test_stretched_exp_input_validation():
    t = np.linspace(0, 1, 4)
    with pytest.raises(ValueError):
        fit_stretched_exp(np.column_stack([t, np.exp(-t)]))
    t = np.array([0.1, 0.2, 0.2, 0.3, 0.4])
    with pytest.raises(ValueError):
        fit_stretched_exp(np.column_stack([t, np.exp(-t)]))


@pytest.mark.parametrize("row", [
    (0.97, 4.3, 1.0), (0.97, 0.67, 1.2), (0.98, 0.130, 2.0),
    (0.98, 0.122, 2.3), (0.99, 0.077, 1.8),
])
def test_measured_decay_rows_recovered_at_one_percent_noise(row):
    a, t2, n = row
    rng = np.random.default_rng(hash(row) % 2 ** 32)
    t = np.linspace(0.05, 2.5, 30) * t2
    y = a * np.exp(-((t / t2) ** n)) + rng.normal(0.0, 0.01, t.size)
    fit = fit_stretched_exp(np.column_stack([t, y]))
    for name, want in (("A", a), ("T2", t2), ("n", n)):
        err = fit.error(name)
        assert abs(fit.params[name] - want) < 3.0 * err + 1e-6


def test_pi_pulse_fidelity_limits():
    assert pi_pulse_fidelity(1e6) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        pi_pulse_fidelity(0.0)
    # generalized Rabi at detuning = rabi: W = sqrt(2) Omega
    want = 0.5 * math.sin(math.pi * math.sqrt(2.0) / 2.0) ** 2
    assert pi_pulse_fidelity(1e6, detuning_error=1e6) == \
        pytest.approx(want, rel=1e-12)
    # pure area error: sin^2(pi (1 + e) / 2)
    assert pi_pulse_fidelity(1e6, duration_error=0.1) == \
        pytest.approx(math.sin(math.pi * 1.1 / 2.0) ** 2, rel=1e-12)


def test_pi_pulse_operating_regime():
    # ~7% relative detuning error costs about half a percent
    fid = pi_pulse_fidelity(1e6, detuning_error=0.07e6)
    assert fid == pytest.approx(0.995, abs=2e-3)
    assert fid < 1.0
