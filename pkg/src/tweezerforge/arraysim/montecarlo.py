"""Monte Carlo estimates over stochastic loading and loss."""

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .execute import _execute_with_rng, target_satisfied
from .loading import _sample_with_rng
from .planner import PlanOptions, plan_rearrangement
from .types import ArrayGeometry, InfeasiblePlanError, LossModel, \
    checkerboard_target


def default_workers():
    """Worker count from TWEEZERFORGE_THREADS, else 1."""
    try:
        n = int(os.environ.get("TWEEZERFORGE_THREADS", "1"))
    except ValueError:
        return 1
    return max(1, n)


def _run_trial(geometry, loading, target, loss, opts, child_seed):
    rng = np.random.default_rng(child_seed)
    state = _sample_with_rng(geometry, loading, rng)
    try:
        plan = plan_rearrangement(state, target, opts)
    except InfeasiblePlanError:
        return False
    final, _ = _execute_with_rng(state, plan, loss, rng)
    return target_satisfied(final, target)


def success_probability(geometry, loading, target, loss=None, opts=None,
                        n_trials=1000, seed=None, n_workers=None):
    """Fraction of loading draws rearranged into the full target.

    Infeasible loadings count as failures.  Each trial gets its own seed
    stream spawned from `seed`, so results do not depend on n_workers.
    Returns (p, stderr) with the binomial standard error.
    """
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    loss = loss or LossModel()
    opts = opts or PlanOptions()
    children = np.random.SeedSequence(seed).spawn(n_trials)
    if n_workers is None:
        n_workers = default_workers()

    def chunk(idx):
        return sum(_run_trial(geometry, loading, target, loss, opts,
                              children[t]) for t in idx)

    if n_workers <= 1:
        n_ok = chunk(range(n_trials))
    else:
        splits = np.array_split(np.arange(n_trials), n_workers)
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            n_ok = sum(pool.map(chunk, [s for s in splits if s.size]))
    p = n_ok / n_trials
    return p, math.sqrt(p * (1.0 - p) / n_trials)


def scaling_benchmark(target_sizes, loading, opts=None, trials=100,
                      seed=None, geometry=None):
    """Mean planning cost per checkerboard target size.

    Each size uses `geometry` when given (sizes that do not fit are
    marked infeasible), else a square array of twice the target side.
    Trials whose loading draw cannot cover the target are skipped;
    a size with no feasible draw at all is marked infeasible too.
    Returns rows of {target_size, feasible, mean_moves, mean_batches,
    stderr} where stderr is the standard error of the move count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    opts = opts or PlanOptions()
    root = np.random.SeedSequence(seed)
    rows = []
    for size in target_sizes:
        geom = geometry or ArrayGeometry(2 * size, 2 * size)
        if size > min(geom.rows, geom.cols):
            rows.append({"target_size": size, "feasible": False,
                         "mean_moves": math.nan, "mean_batches": math.nan,
                         "stderr": math.nan})
            continue
        target = checkerboard_target(geom, size)
        moves, batches = [], []
        for child in root.spawn(trials):
            rng = np.random.default_rng(child)
            state = _sample_with_rng(geom, loading, rng)
            try:
                plan = plan_rearrangement(state, target, opts)
            except InfeasiblePlanError:
                continue
            moves.append(plan.n_moves())
            batches.append(plan.n_batches())
        if not moves:
            rows.append({"target_size": size, "feasible": False,
                         "mean_moves": math.nan, "mean_batches": math.nan,
                         "stderr": math.nan})
            continue
        moves = np.array(moves, dtype=float)
        rows.append({
            "target_size": size,
            "feasible": True,
            "mean_moves": float(moves.mean()),
            "mean_batches": float(np.mean(batches)),
            "stderr": float(moves.std(ddof=1) / math.sqrt(len(moves)))
            if len(moves) > 1 else 0.0,
        })
    return rows


def benchmark_to_csv(rows, fh):
    fh.write("target_size,mean_moves,mean_batches,stderr\n")
    for r in rows:
        if not r["feasible"]:
            fh.write(f"{r['target_size']},infeasible,infeasible,infeasible\n")
            continue
        fh.write(f"{r['target_size']},{r['mean_moves']:.3f},"
                 f"{r['mean_batches']:.3f},{r['stderr']:.4f}\n")
