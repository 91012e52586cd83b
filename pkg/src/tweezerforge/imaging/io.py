"""File formats for counts, image triplets, and fidelity reports."""

import json

import numpy as np

from .model import HistogramModel
from .modelfree import TripleImageRecord

# report keys use the histogram-model symbol names verbatim
_MODEL_KEYS = ("F", "sigma_D", "mu_D", "a", "b", "sigma_B", "mu_B", "c")


def read_counts(path):
    """Photon counts from a single-column CSV or a JSON array."""
    text = open(path).read().strip()
    if text.startswith("["):
        return np.asarray(json.loads(text), dtype=float)
    vals = []
    for line in text.split("\n"):
        line = line.strip()
        if not line:
            continue
        try:
            vals.append(float(line))
        except ValueError:
            if vals:
                raise
            continue   # header line
    return np.asarray(vals, dtype=float)


def write_counts(path, counts):
    with open(path, "w") as fh:
        fh.write("count\n")
        for v in counts:
            fh.write(f"{v:.6f}\n")


def read_triple_records(path):
    """Triplets from CSV columns site,shot,b1,b2,b3."""
    records = []
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if header[-3:] != ["b1", "b2", "b3"]:
            raise ValueError("expected header ending in b1,b2,b3")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            b1, b2, b3 = (bool(int(v)) for v in parts[-3:])
            records.append(TripleImageRecord(b1, b2, b3))
    return records


def write_triple_records(path, records):
    with open(path, "w") as fh:
        fh.write("site,shot,b1,b2,b3\n")
        for i, r in enumerate(records):
            fh.write(f"0,{i},{int(r.b1)},{int(r.b2)},{int(r.b3)}\n")


def model_to_dict(model):
    return {k: float(getattr(model, k)) for k in _MODEL_KEYS}


def model_from_dict(d):
    return HistogramModel(**{k: float(d[k]) for k in _MODEL_KEYS})


def report_to_dict(report):
    out = {
        "threshold": report.threshold,
        "fidelity": report.fidelity,
        "E0": report.E0,
        "E1": report.E1,
        "reliable": report.reliable,
    }
    if report.survival is not None:
        out["survival"] = report.survival
    return out
