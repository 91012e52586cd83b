"""Contrast-decay curves from fringe scans, plus JSON/CSV plumbing."""

import csv
import json
import math

import numpy as np

from .bloch import hahn_echo_sequence, ramsey_sequence, simulate_sequence
from .fitting import fit_damped_sinusoid, fringe_contrast
from .types import NoiseModel, Pulse, PulseSequence, Wait

_SEQUENCES = {"ramsey": ramsey_sequence, "echo": hahn_echo_sequence}


def _fringe_scan(kind, T, noise, delta_ts, n_trajectories, seeds):
    build = _SEQUENCES[kind]
    vals = np.empty(delta_ts.size)
    errs = np.empty(delta_ts.size)
    for i, (dt, seed) in enumerate(zip(delta_ts, seeds)):
        vals[i], errs[i] = simulate_sequence(
            build(T, delta_t=dt), noise=noise,
            n_trajectories=n_trajectories, seed=seed)
    return vals, errs


def contrast_curve(kind, T_values, noise, delta_ts=None,
                   n_trajectories=2000, seed=None, n_fringe_points=33):
    """Fringe-fit contrast at each T; rows of {T, contrast, stderr, ok}.

    Each T gets an independent fringe scan over delta_ts (defaults to two
    Larmor periods), a damped-sinusoid fit, and the amplitude/offset
    contrast.  A fit that fails to converge marks the row ok=False with
    NaN contrast instead of raising.
    """
    if kind not in _SEQUENCES:
        raise ValueError(f"kind must be one of {sorted(_SEQUENCES)}")
    if delta_ts is None:
        if noise is None or noise.larmor <= 0.0:
            raise ValueError("delta_ts required when larmor is zero")
        delta_ts = np.linspace(0.0, 2.0 / noise.larmor, n_fringe_points)
    delta_ts = np.asarray(delta_ts, dtype=float)

    T_values = np.asarray(T_values, dtype=float)
    children = np.random.SeedSequence(seed).spawn(
        T_values.size * delta_ts.size)
    rows = []
    for j, T in enumerate(T_values):
        seeds = children[j * delta_ts.size:(j + 1) * delta_ts.size]
        vals, _ = _fringe_scan(kind, float(T), noise, delta_ts,
                               n_trajectories, seeds)
        try:
            fit = fit_damped_sinusoid(np.column_stack([delta_ts, vals]))
            contrast, err = fringe_contrast(fit)
            rows.append({"T": float(T), "contrast": float(contrast),
                         "stderr": float(err), "ok": True})
        except (RuntimeError, ValueError):
            rows.append({"T": float(T), "contrast": math.nan,
                         "stderr": math.nan, "ok": False})
    return rows


def curve_to_csv(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["T_s", "contrast", "stderr"])
        for row in rows:
            writer.writerow([repr(row["T"]), repr(row["contrast"]),
                             repr(row["stderr"])])


def curve_from_csv(path):
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for rec in reader:
            contrast = float(rec["contrast"])
            rows.append({"T": float(rec["T_s"]), "contrast": contrast,
                         "stderr": float(rec["stderr"]),
                         "ok": not math.isnan(contrast)})
    return rows


def sequence_to_dict(seq):
    elements = seq.elements if isinstance(seq, PulseSequence) else seq
    out = []
    for el in elements:
        if isinstance(el, Pulse):
            d = {"type": "pulse", "phase": el.phase, "area": el.area}
            if el.rabi is not None:
                d["rabi"] = el.rabi
            out.append(d)
        elif isinstance(el, Wait):
            out.append({"type": "wait", "duration": el.duration,
                        "exposed": el.exposed})
        else:
            raise TypeError(f"unknown sequence element {el!r}")
    return {"elements": out}


def sequence_from_dict(data):
    elements = []
    for d in data["elements"]:
        if d["type"] == "pulse":
            elements.append(Pulse(phase=d["phase"], area=d["area"],
                                  rabi=d.get("rabi")))
        elif d["type"] == "wait":
            elements.append(Wait(duration=d["duration"],
                                 exposed=d.get("exposed", False)))
        else:
            raise ValueError(f"unknown element type {d['type']!r}")
    return PulseSequence(elements)


def noise_to_dict(noise):
    return {"scatter_rate": noise.scatter_rate,
            "trap_scatter_rate": noise.trap_scatter_rate,
            "quasistatic_sigma": noise.quasistatic_sigma,
            "larmor": noise.larmor,
            "raman_fraction": noise.raman_fraction,
            "readout_infidelity": noise.readout_infidelity}


def noise_from_dict(data):
    return NoiseModel(**data)


def save_sequence(seq, path):
    with open(path, "w") as fh:
        json.dump(sequence_to_dict(seq), fh, indent=2)
        fh.write("\n")


def load_sequence(path):
    with open(path) as fh:
        return sequence_from_dict(json.load(fh))


def save_noise(noise, path):
    with open(path, "w") as fh:
        json.dump(noise_to_dict(noise), fh, indent=2)
        fh.write("\n")


def load_noise(path):
    with open(path) as fh:
        return noise_from_dict(json.load(fh))
