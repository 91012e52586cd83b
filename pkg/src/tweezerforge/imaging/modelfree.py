"""Three-image model-free fidelity and survival estimation.

Conditioning on agreement of the flanking images isolates the middle
image's error: a record (1,0,1) can essentially only arise from a missed
detection (the atom demonstrably survived to the third image), and
(0,1,0) from a false positive.  Survival is pooled over consecutive
bright-to-next transitions.
"""

from dataclasses import dataclass

import numpy as np
from scipy.stats import beta


@dataclass(frozen=True)
class TripleImageRecord:
    b1: bool
    b2: bool
    b3: bool


def clopper_pearson(k, n, alpha=0.05):
    """Exact binomial confidence interval; [0, 1] when n == 0."""
    if n == 0:
        return 0.0, 1.0
    lo = beta.ppf(alpha / 2.0, k, n - k + 1) if k > 0 else 0.0
    hi = beta.ppf(1.0 - alpha / 2.0, k + 1, n - k) if k < n else 1.0
    return float(lo), float(hi)


def model_free_fidelity(records, alpha=0.05):
    """Estimate (fidelity, survival, breakdown) from image triplets.

    False-negative rate: N(1,0,1)/N(1,*,1).  False-positive rate:
    N(0,1,0)/N(0,*,0).  Fidelity weights the two by the observed bright
    fraction of the middle image.  Undefined rates (empty conditioning
    set) enter the fidelity as zero and are flagged in the breakdown
    with a [0, 1] interval.
    """
    if not records:
        raise ValueError("no records")
    b = np.array([[r.b1, r.b2, r.b3] for r in records], dtype=bool)

    n_1x1 = int(np.sum(b[:, 0] & b[:, 2]))
    n_101 = int(np.sum(b[:, 0] & ~b[:, 1] & b[:, 2]))
    n_0x0 = int(np.sum(~b[:, 0] & ~b[:, 2]))
    n_010 = int(np.sum(~b[:, 0] & b[:, 1] & ~b[:, 2]))

    surv_den = int(np.sum(b[:, 0]) + np.sum(b[:, 1]))
    surv_num = int(np.sum(b[:, 0] & b[:, 1]) + np.sum(b[:, 1] & b[:, 2]))

    p_bright = float(np.mean(b[:, 1]))
    fn = n_101 / n_1x1 if n_1x1 else float("nan")
    fp = n_010 / n_0x0 if n_0x0 else float("nan")
    survival = surv_num / surv_den if surv_den else float("nan")

    err = p_bright * (fn if n_1x1 else 0.0) \
        + (1.0 - p_bright) * (fp if n_0x0 else 0.0)
    fidelity = 1.0 - err

    # the raw conditional re-detection probability folds the miss rate in
    # with real atom loss; divide it back out for a per-image loss estimate
    loss_defined = bool(surv_den) and bool(n_1x1) and fn < 1.0
    if loss_defined:
        surv_lo, surv_hi = clopper_pearson(surv_num, surv_den, alpha)
        loss = 1.0 - min(survival / (1.0 - fn), 1.0)
        loss_ci = (max(1.0 - surv_hi / (1.0 - fn), 0.0),
                   min(1.0 - surv_lo / (1.0 - fn), 1.0))
    else:
        loss = float("nan")
        loss_ci = (0.0, 1.0)

    breakdown = {
        "n_records": len(records),
        "n_1x1": n_1x1, "n_101": n_101,
        "n_0x0": n_0x0, "n_010": n_010,
        "false_negative": fn,
        "false_negative_ci": clopper_pearson(n_101, n_1x1, alpha),
        "false_negative_defined": bool(n_1x1),
        "false_positive": fp,
        "false_positive_ci": clopper_pearson(n_010, n_0x0, alpha),
        "false_positive_defined": bool(n_0x0),
        "survival_num": surv_num, "survival_den": surv_den,
        "survival_ci": clopper_pearson(surv_num, surv_den, alpha),
        "survival_defined": bool(surv_den),
        "loss_per_image": loss,
        "loss_per_image_ci": loss_ci,
        "loss_per_image_defined": loss_defined,
        "bright_fraction": p_bright,
    }
    return fidelity, survival, breakdown


def synth_triple_records(n_records, p_bright=0.55, miss=8e-4, loss=1.2e-2,
                         false_positive=0.0, seed=None):
    """Generate triplets with programmed per-image miss and loss rates.

    An atom is loaded with probability p_bright, may be lost after each
    image with probability `loss`, and each image independently misses a
    present atom with probability `miss` or fires on an empty site with
    probability `false_positive`.
    """
    rng = np.random.default_rng(seed)
    loaded = rng.random(n_records) < p_bright
    alive = np.empty((n_records, 3), dtype=bool)
    alive[:, 0] = loaded
    alive[:, 1] = alive[:, 0] & (rng.random(n_records) >= loss)
    alive[:, 2] = alive[:, 1] & (rng.random(n_records) >= loss)
    u = rng.random((n_records, 3))
    reads = np.where(alive, u >= miss, u < false_positive)
    return [TripleImageRecord(bool(r[0]), bool(r[1]), bool(r[2]))
            for r in reads]
