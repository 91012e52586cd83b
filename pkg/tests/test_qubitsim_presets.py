import math

import numpy as np
import pytest

from tweezerforge.qubitsim import (
    EXTRA_399_SCATTER_RATE,
    LARMOR_HZ,
    PRESETS,
    TRAP_SCATTER_RATE,
    NoiseModel,
    Pulse,
    Wait,
    contrast_curve,
    curve_from_csv,
    curve_to_csv,
    fit_stretched_exp,
    hahn_echo_sequence,
    load_noise,
    load_sequence,
    noise_from_dict,
    noise_to_dict,
    preset,
    ramsey_sequence,
    save_noise,
    save_sequence,
    sequence_from_dict,
    sequence_to_dict,
)


def test_preset_names_and_lookup():
    assert set(PRESETS) == {"echo-noimaging", "echo-399", "ramsey-noimaging",
                            "ramsey-556", "ramsey-399"}
    assert preset("echo-399").kind == "echo"
    with pytest.raises(KeyError, match="unknown preset"):
        preset("nope")


def test_scatter_rates_match_echo_times():
    assert TRAP_SCATTER_RATE == pytest.approx(1.0 / 4.3, rel=1e-12)
    total = TRAP_SCATTER_RATE + EXTRA_399_SCATTER_RATE
    assert total == pytest.approx(1.0 / 0.67, rel=1e-12)
    assert preset("echo-399").noise.scatter_rate == \
        pytest.approx(EXTRA_399_SCATTER_RATE)
    assert preset("echo-noimaging").noise.scatter_rate == 0.0


def test_sigma_calibration_hits_one_over_e():
    # gamma*T + (2 pi sigma T)^2 / 2 == 1 at T = T2* for the ramsey rows
    for name in ("ramsey-noimaging", "ramsey-556", "ramsey-399"):
        spec = preset(name)
        gamma = spec.noise.trap_scatter_rate + spec.noise.scatter_rate
        sigma = spec.noise.quasistatic_sigma
        total = gamma * spec.t2 + \
            0.5 * (2 * math.pi * sigma * spec.t2) ** 2
        assert total == pytest.approx(1.0, rel=1e-12)


def test_larmor_operating_point():
    assert LARMOR_HZ == 1875.0
    assert preset("ramsey-noimaging").noise.larmor == LARMOR_HZ


def test_preset_sequences():
    spec = preset("ramsey-556")
    seq = spec.sequence(0.1, delta_t=1e-4)
    assert seq.total_wait == pytest.approx(0.1 + 1e-4)
    assert len(seq.elements) == 3
    seq = preset("echo-399").sequence(0.02)
    assert len(seq.elements) == 5


@pytest.mark.parametrize("name", ["ramsey-noimaging", "ramsey-556",
                                  "ramsey-399"])
def test_ramsey_presets_reproduce_t2_star(name):
    spec = preset(name)
    Ts = np.linspace(0.15, 2.2, 9) * spec.t2
    rows = contrast_curve(spec.kind, Ts, spec.noise,
                          n_trajectories=3000, seed=3)
    assert all(r["ok"] for r in rows)
    fit = fit_stretched_exp([(r["T"], r["contrast"]) for r in rows])
    assert fit.params["T2"] == pytest.approx(spec.t2, rel=0.05)
    assert 1.5 < fit.params["n"] < 2.2  # quasistatic-dominated decay


def test_echo_preset_reproduces_t2():
    spec = preset("echo-399")
    Ts = np.linspace(0.1, 1.6, 7) * spec.t2
    rows = contrast_curve(spec.kind, Ts, spec.noise,
                          n_trajectories=3000, seed=4)
    fit = fit_stretched_exp([(r["T"], r["contrast"]) for r in rows])
    assert fit.params["T2"] == pytest.approx(spec.t2, rel=0.05)
    assert 0.9 < fit.params["n"] < 1.1  # scattering-dominated decay


def test_echo_399_short_time_contrast():
    spec = preset("echo-399")
    rows = contrast_curve("echo", [0.020], spec.noise,
                          n_trajectories=10000, seed=11)
    assert rows[0]["ok"]
    assert 0.96 <= rows[0]["contrast"] <= 1.0


def test_contrast_curve_seed_reproducible():
    noise = preset("ramsey-556").noise
    a = contrast_curve("ramsey", [0.05], noise, n_trajectories=400, seed=2)
    b = contrast_curve("ramsey", [0.05], noise, n_trajectories=400, seed=2)
    assert a == b


def test_contrast_curve_input_validation():
    with pytest.raises(ValueError):
        contrast_curve("rabi", [0.1], NoiseModel())
    with pytest.raises(ValueError):
        contrast_curve("ramsey", [0.1], NoiseModel())  # larmor 0, no delta_ts


def test_curve_csv_roundtrip(tmp_path):
    rows = [{"T": 0.01, "contrast": 0.93, "stderr": 0.004, "ok": True},
            {"T": 0.02, "contrast": math.nan, "stderr": math.nan,
             "ok": False}]
    path = tmp_path / "curve.csv"
    curve_to_csv(rows, path)
    assert path.read_text().splitlines()[0] == "T_s,contrast,stderr"
    back = curve_from_csv(path)
    assert back[0] == rows[0]
    assert back[1]["ok"] is False
    assert math.isnan(back[1]["contrast"])


def test_sequence_json_roundtrip(tmp_path):
    seq = hahn_echo_sequence(0.02, delta_t=3e-4, rabi=2e5)
    back = sequence_from_dict(sequence_to_dict(seq))
    assert back.elements == seq.elements
    path = tmp_path / "seq.json"
    save_sequence(seq, path)
    assert load_sequence(path).elements == seq.elements
    # plain lists of elements serialize too
    d = sequence_to_dict([Pulse(0.0, math.pi), Wait(0.1, True)])
    assert d["elements"][1]["exposed"] is True


def test_noise_json_roundtrip(tmp_path):
    noise = preset("ramsey-399").noise
    assert noise_from_dict(noise_to_dict(noise)) == noise
    path = tmp_path / "noise.json"
    save_noise(noise, path)
    assert load_noise(path) == noise


def test_sequence_dict_rejects_unknown_types():
    with pytest.raises(TypeError):
        sequence_to_dict([object()])
    with pytest.raises(ValueError):
        sequence_from_dict({"elements": [{"type": "detune"}]})


def test_nominal_rows_are_the_measured_tables():
    want = {"echo-noimaging": (0.97, 4.3, 1.0),
            "echo-399": (0.97, 0.67, 1.2),
            "ramsey-noimaging": (0.98, 0.130, 2.0),
            "ramsey-556": (0.98, 0.122, 2.3),
            "ramsey-399": (0.99, 0.077, 1.8)}
    for name, (contrast, t2, n) in want.items():
        spec = preset(name)
        assert (spec.contrast, spec.t2, spec.n) == (contrast, t2, n)
