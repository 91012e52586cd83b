"""Stochastic loading of a tweezer array from a dual-species MOT."""

import numpy as np

from .types import ArrayState, DUAL, EMPTY, ISO1, ISO2


def _sample_with_rng(geometry, model, rng):
    u = rng.random(geometry.n_sites)
    occ = np.full(geometry.n_sites, EMPTY, dtype=np.int8)
    occ[u < model.p1] = ISO1
    occ[(u >= model.p1) & (u < model.p1 + model.p2)] = ISO2
    occ[(u >= model.p1 + model.p2)
        & (u < model.p1 + model.p2 + model.p_dual)] = DUAL
    return ArrayState(geometry, occ)


def sample_loading(geometry, model):
    """Draw an independent per-site occupancy from the loading model."""
    rng = np.random.default_rng(model.seed)
    return _sample_with_rng(geometry, model, rng)
