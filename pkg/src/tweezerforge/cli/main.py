"""Command-line front end: one nested-subcommand entry point per engine.

Every stochastic subcommand requires --seed and reruns byte-identically.
Output files are never overwritten unless --force is given.  Each
invocation prints a one-line JSON summary to stdout; exit codes are
0 success, 2 usage error, 1 computation error.
"""

import argparse
import csv
import json
import math
import re
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .. import qubitsim
from ..arraysim import (
    ArrayGeometry,
    ArrayState,
    InfeasiblePlanError,
    LoadingModel,
    LossModel,
    PlanOptions,
    TargetPattern,
    benchmark_to_csv,
    checkerboard_target,
    plan_rearrangement,
    sample_loading,
    scaling_benchmark,
    stripe_target,
    success_probability,
)
from ..imaging import (
    fit_histogram,
    model_free_fidelity,
    model_from_dict,
    model_to_dict,
    optimize_threshold,
    read_counts,
    read_triple_records,
    report_to_dict,
    sample_histogram,
    synth_triple_records,
    write_counts,
    write_triple_records,
)
from ..imaging.model import reference_model
from ..pamol import (
    NumerovGrid,
    PaParameters,
    adiabatic_potentials,
    lb_density_ratio,
    pa_spectrum,
    potentials_to_csv,
    spectrum_to_csv,
)
from ..units import convert_energy


class CliError(RuntimeError):
    """Computation-stage failure; maps to exit code 1."""


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


class UsageError(RuntimeError):
    """Bad argument combination not caught by argparse; exit code 2."""


def _out_path(path, force):
    path = Path(path)
    if path.exists() and not force:
        raise CliError(f"refusing to overwrite {path}; pass --force")
    if str(path.parent) not in (".", "") and not path.parent.exists():
        path.parent.mkdir(parents=True)
    return path


def _sibling(path, suffix):
    path = Path(path)
    return path.with_name(path.stem + suffix)


def _parse_floats(text):
    try:
        return [float(Fraction(tok)) for tok in text.split(",") if tok]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse number list {text!r}") from None


def _parse_pair(text, name):
    vals = _parse_floats(text)
    if len(vals) != 2:
        raise UsageError(f"{name} needs exactly two comma-separated values")
    return vals[0], vals[1]


def _parse_times(text):
    # either "a:b:n" (n linearly spaced values) or a comma list
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError("time range must be start:stop:count")
        try:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"cannot parse time range {text!r}") from None
        return [float(v) for v in np.linspace(lo, hi, n)]
    return _parse_floats(text)


def _parse_sizes(text):
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            return list(range(int(lo), int(hi) + 1))
        except ValueError:
            raise UsageError(f"cannot parse size range {text!r}") from None
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise UsageError(f"cannot parse size list {text!r}") from None


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError(f"input file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"invalid JSON in {path}: {exc}") from None


def _pa_params(args):
    cfg = _load_json(args.config) if args.config else {}
    try:
        return PaParameters(**cfg)
    except (TypeError, ValueError) as exc:
        raise CliError(f"bad parameter config: {exc}") from None


def _target_pattern(spec, geometry):
    kind, _, arg = spec.partition(":")
    if kind == "checkerboard":
        return checkerboard_target(geometry, int(arg))
    if kind == "stripes":
        return stripe_target(geometry, int(arg))
    try:
        text = Path(spec).read_text()
    except OSError:
        raise UsageError(
            f"target {spec!r} is neither checkerboard:N, stripes:N, "
            "nor a readable pattern file") from None
    return TargetPattern.from_text(text, pitch=geometry.pitch)


def _loading_model(args):
    probs = _parse_floats(args.load)
    if len(probs) == 2:
        probs.append(0.0)
    if len(probs) != 3:
        raise UsageError("--load needs p1,p2 or p1,p2,p_dual")
    return LoadingModel(p1=probs[0], p2=probs[1], p_dual=probs[2],
                        seed=args.seed)


def _loss_model(args):
    return LossModel(mode=args.loss_mode,
                     activation_radius=args.activation_radius,
                     p_loss_near=args.p_loss_near,
                     p_loss_transport=args.p_loss_transport)


def _plan_options(args):
    return PlanOptions(mode=args.mode, bow=args.bow,
                       parallel=not args.no_batching)


# ---------------------------------------------------------------- rearrange

def _cmd_rearrange_plan(args):
    geometry = ArrayGeometry(args.rows, args.cols, args.pitch)
    if args.occupancy:
        state = ArrayState.from_text(Path(args.occupancy).read_text(),
                                     pitch=args.pitch)
        geometry = state.geometry
    elif args.load:
        if args.seed is None:
            raise UsageError("--seed is required when sampling with --load")
        state = sample_loading(geometry, _loading_model(args))
    else:
        raise UsageError("need either --occupancy or --load")
    target = _target_pattern(args.target, geometry)

    try:
        plan = plan_rearrangement(state, target, _plan_options(args))
    except InfeasiblePlanError as exc:
        return {"feasible": False, "reason": str(exc),
                "n_moves": 0, "n_batches": 0}

    summary = {"feasible": True, "n_moves": plan.n_moves(),
               "n_batches": plan.n_batches(),
               "phases": plan.phase_sequence(),
               "notes": list(plan.notes)}
    if args.out:
        out = _out_path(args.out, args.force)
        # move indices may be numpy ints depending on the loading path
        moves = [{"species": int(m.species), "src": int(m.src),
                  "dst": int(m.dst), "batch": int(m.batch_id), "phase": ph}
                 for m, ph in zip(plan.moves, plan.phases)]
        with open(out, "w") as fh:
            json.dump({"rows": geometry.rows, "cols": geometry.cols,
                       "pitch": geometry.pitch, "moves": moves,
                       "notes": list(plan.notes)}, fh, indent=2)
            fh.write("\n")
        summary["out"] = str(out)
    return summary


def _cmd_rearrange_simulate(args):
    geometry = ArrayGeometry(args.rows, args.cols, args.pitch)
    target = _target_pattern(args.target, geometry)
    loading = _loading_model(args)
    p, err = success_probability(geometry, loading, target,
                                 loss=_loss_model(args),
                                 opts=_plan_options(args),
                                 n_trials=args.trials, seed=args.seed)
    return {"success_probability": p, "stderr": err, "trials": args.trials}


def _cmd_rearrange_bench(args):
    sizes = _parse_sizes(args.sizes)
    loading = _loading_model(args)
    rows = scaling_benchmark(sizes, loading, opts=_plan_options(args),
                             trials=args.trials, seed=args.seed)
    out = _out_path(args.out, args.force)
    with open(out, "w") as fh:
        benchmark_to_csv(rows, fh)
    feasible = [r["target_size"] for r in rows if r["feasible"]]
    return {"out": str(out), "sizes": sizes, "feasible_sizes": feasible}


# ----------------------------------------------------------------------- pa

def _cmd_pa_potentials(args):
    params = _pa_params(args)
    grid = np.linspace(args.rmin, args.rmax, args.n_points)
    curves = adiabatic_potentials(params, grid)
    out = _out_path(args.out, args.force)
    with open(out, "w") as fh:
        potentials_to_csv(curves, fh)
    return {"out": str(out), "n_curves": len(curves),
            "n_attractive": sum(c.attractive for c in curves),
            "asymptotes_mhz": sorted({c.asymptote for c in curves})}


def _cmd_pa_spectrum(args):
    params = _pa_params(args)
    te_list = _parse_floats(args.Te)
    window = _parse_pair(args.window, "--window")
    grid = None
    if args.grid:
        vals = _parse_floats(args.grid)
        if len(vals) != 3:
            raise UsageError("--grid needs rmin,rmax,step")
        grid = NumerovGrid(rmin=vals[0], rmax=vals[1], step=vals[2])
    states = pa_spectrum(params, te_list, window, curve_index=args.curve,
                         grid=grid)
    out = _out_path(args.out, args.force)
    with open(out, "w") as fh:
        spectrum_to_csv(states, fh)
    summary = {"out": str(out), "n_levels": len(states),
               "levels_mhz": [s.binding_energy for s in states]}
    if args.emit_plotdata:
        plot = _out_path(_sibling(out, "_potentials.csv"), args.force)
        curves = adiabatic_potentials(params, np.linspace(10.0, 300.0, 2000))
        with open(plot, "w") as fh:
            potentials_to_csv(curves, fh)
        summary["plotdata"] = str(plot)
    return summary


def _cmd_pa_lb(args):
    ratio = lb_density_ratio(args.gamma_a, args.gamma_b)
    return {"gamma_a": args.gamma_a, "gamma_b": args.gamma_b,
            "density_ratio": ratio}


# ------------------------------------------------------------------ imaging

def _cmd_imaging_fit(args):
    counts = read_counts(args.input)
    model, _ = fit_histogram(counts)
    out = _out_path(args.out, args.force)
    with open(out, "w") as fh:
        json.dump(model_to_dict(model), fh, indent=2)
        fh.write("\n")
    return {"out": str(out), **model_to_dict(model)}


def _cmd_imaging_threshold(args):
    model = model_from_dict(_load_json(args.model))
    report = optimize_threshold(model)
    summary = report_to_dict(report)
    if args.emit_plotdata:
        plot = _out_path(args.emit_plotdata, args.force)
        xs = np.linspace(0.0, model.x_max, 512)
        with open(plot, "w") as fh:
            fh.write("x,error\n")
            for x in xs:
                fh.write(f"{float(x)!r},{float(model.error(x))!r}\n")
        summary["plotdata"] = str(plot)
    return summary


def _cmd_imaging_modelfree(args):
    records = read_triple_records(args.input)
    fidelity, survival, breakdown = model_free_fidelity(records,
                                                        alpha=args.alpha)
    return {"fidelity": fidelity, "survival": survival, **breakdown}


def _cmd_imaging_synth(args):
    out = _out_path(args.out, args.force)
    if args.kind == "counts":
        model = model_from_dict(_load_json(args.model)) if args.model \
            else reference_model()
        counts = sample_histogram(model, args.n, seed=args.seed)
        write_counts(out, counts)
    else:
        records = synth_triple_records(args.n, p_bright=args.p_bright,
                                       miss=args.miss, loss=args.loss,
                                       false_positive=args.false_positive,
                                       seed=args.seed)
        write_triple_records(out, records)
    return {"out": str(out), "kind": args.kind, "n": args.n,
            "seed": args.seed}


# -------------------------------------------------------------------- qubit

def _qubit_noise(args):
    if args.preset:
        return qubitsim.preset(args.preset).noise
    if args.noise:
        return qubitsim.noise_from_dict(_load_json(args.noise))
    raise UsageError("need --preset or --noise")


def _cmd_qubit_simulate(args):
    if args.sequence:
        seq = qubitsim.load_sequence(args.sequence)
        noise = _qubit_noise(args)
        p1, err = qubitsim.simulate_sequence(seq, noise=noise,
                                             n_trajectories=args.trials,
                                             seed=args.seed)
        return {"p1": p1, "stderr": err, "trials": args.trials}

    if not args.T:
        raise UsageError("need --T for a contrast curve, or --sequence")
    noise = _qubit_noise(args)
    if not args.out:
        raise UsageError("--out is required for a contrast curve")
    kind = args.kind or (qubitsim.preset(args.preset).kind if args.preset
                         else None)
    if kind is None:
        raise UsageError("need --kind when --noise is given without --preset")
    times = _parse_times(args.T)
    rows = qubitsim.contrast_curve(kind, times, noise,
                                   n_trajectories=args.trials,
                                   seed=args.seed,
                                   n_fringe_points=args.fringe_points)
    out = _out_path(args.out, args.force)
    qubitsim.curve_to_csv(rows, out)
    summary = {"out": str(out), "kind": kind, "n_ok": sum(r["ok"]
                                                          for r in rows)}
    if args.emit_plotdata:
        # raw fringe of the first T value, same derived seeds as row 0
        plot = _out_path(_sibling(out, "_fringe.csv"), args.force)
        delta_ts = np.linspace(0.0, 2.0 / noise.larmor, args.fringe_points)
        children = np.random.SeedSequence(args.seed).spawn(
            len(times) * delta_ts.size)
        build = (qubitsim.ramsey_sequence if kind == "ramsey"
                 else qubitsim.hahn_echo_sequence)
        with open(plot, "w") as fh:
            fh.write("delta_t_s,p1,stderr\n")
            for dt, child in zip(delta_ts, children[:delta_ts.size]):
                p1, err = qubitsim.simulate_sequence(
                    build(times[0], delta_t=float(dt)), noise=noise,
                    n_trajectories=args.trials, seed=child)
                fh.write(f"{dt!r},{p1!r},{err!r}\n")
        summary["plotdata"] = str(plot)
    return summary


def _read_xy_csv(path):
    rows = []
    try:
        with open(path, newline="") as fh:
            for rec in csv.reader(fh):
                if not rec:
                    continue
                try:
                    x, y = float(rec[0]), float(rec[1])
                except ValueError:
                    continue  # header line
                if math.isfinite(x) and math.isfinite(y):
                    rows.append((x, y))  # NaN rows are flagged fit failures
    except FileNotFoundError:
        raise CliError(f"input file not found: {path}") from None
    if not rows:
        raise CliError(f"no numeric (x, y) rows in {path}")
    return rows


def _cmd_qubit_fit(args):
    points = _read_xy_csv(args.input)
    try:
        if args.kind == "stretched":
            fit = qubitsim.fit_stretched_exp(points)
        else:
            fit = qubitsim.fit_damped_sinusoid(points)
    except (RuntimeError, ValueError) as exc:
        raise CliError(str(exc)) from None
    return {"kind": args.kind, "params": dict(fit.params),
            "errors": {k: fit.error(k) for k in fit.params},
            "residual_norm": fit.residual_norm}


def _cmd_qubit_presets(args):
    out = {}
    for name, spec in sorted(qubitsim.PRESETS.items()):
        out[name] = {"kind": spec.kind, "contrast": spec.contrast,
                     "t2_s": spec.t2, "n": spec.n,
                     "noise": qubitsim.noise_to_dict(spec.noise)}
    return out


# -------------------------------------------------------------------- units

def _cmd_units_convert(args):
    try:
        result = convert_energy(args.value, args.from_unit, args.to_unit)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"value": args.value, "from": args.from_unit,
            "to": args.to_unit, "result": result}


# ------------------------------------------------------------------- parser

def _add_plan_options(p):
    p.add_argument("--mode", choices=["corridor", "parabolic"],
                   default="corridor", help="transport path style")
    p.add_argument("--bow", type=float, default=1.08,
                   help="parabolic bow depth, um")
    p.add_argument("--no-batching", action="store_true",
                   help="one move per batch")


def _add_loss_options(p):
    p.add_argument("--loss-mode", choices=["ideal", "proximity"],
                   default="ideal", help="loss model during execution")
    p.add_argument("--activation-radius", type=float, default=1.0,
                   help="lit-path loss radius, um")
    p.add_argument("--p-loss-near", type=float, default=1.0,
                   help="loss probability inside the radius")
    p.add_argument("--p-loss-transport", type=float, default=0.0,
                   help="per-move cargo loss probability")


def _add_grid_options(p):
    p.add_argument("--rows", type=int, default=10, help="grid rows")
    p.add_argument("--cols", type=int, default=10, help="grid columns")
    p.add_argument("--pitch", type=float, default=5.0,
                   help="site spacing, um")


class _Parser(argparse.ArgumentParser):
    # let values like "-1000,0" pass as arguments, not unknown flags
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+[\d.,:eE+-]*$")


def build_parser():
    parser = _Parser(
        prog="tweezerforge",
        description="Dual-isotope tweezer-array toolkit: rearrangement, "
                    "photoassociation spectra, imaging analysis, qubit "
                    "coherence.")
    sub = parser.add_subparsers(dest="group", required=True,
                                metavar="{rearrange,pa,imaging,qubit,units}")

    rearrange = sub.add_parser("rearrange",
                               help="two-species sorting simulations")
    rsub = rearrange.add_subparsers(dest="command", required=True)

    p = rsub.add_parser("plan", help="plan moves for one occupancy")
    _add_grid_options(p)
    p.add_argument("--occupancy", help="occupancy text file ('.12D' grid)")
    p.add_argument("--load", help="sample loading: p1,p2[,p_dual]")
    p.add_argument("--seed", type=int, help="RNG seed (required with --load)")
    p.add_argument("--target", required=True,
                   help="checkerboard:N, stripes:N, or pattern file")
    p.add_argument("--out", help="write the plan as JSON")
    p.add_argument("--force", action="store_true",
                   help="overwrite existing outputs")
    _add_plan_options(p)
    p.set_defaults(handler=_cmd_rearrange_plan)

    p = rsub.add_parser("simulate", help="Monte Carlo success probability")
    _add_grid_options(p)
    p.add_argument("--load", required=True, help="loading probs p1,p2[,pd]")
    p.add_argument("--target", required=True,
                   help="checkerboard:N, stripes:N, or pattern file")
    p.add_argument("--trials", type=int, default=1000,
                   help="Monte Carlo trials")
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    _add_plan_options(p)
    _add_loss_options(p)
    p.set_defaults(handler=_cmd_rearrange_simulate)

    p = rsub.add_parser("bench", help="move-count scaling vs target size")
    p.add_argument("--sizes", required=True, help="e.g. 2..8 or 2,4,6")
    p.add_argument("--load", default="0.5,0.5",
                   help="loading probs p1,p2[,pd]")
    p.add_argument("--trials", type=int, default=100,
                   help="instances per size")
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    p.add_argument("--out", default="bench.csv", help="CSV output path")
    p.add_argument("--force", action="store_true",
                   help="overwrite existing outputs")
    _add_plan_options(p)
    p.set_defaults(handler=_cmd_rearrange_bench)

    pa = sub.add_parser("pa", help="photoassociation long-range model")
    psub = pa.add_subparsers(dest="command", required=True)

    p = psub.add_parser("potentials", help="adiabatic curves on an R grid")
    p.add_argument("--config", help="JSON with model parameter overrides")
    p.add_argument("--rmin", type=float, default=10.0, help="grid start, a0")
    p.add_argument("--rmax", type=float, default=300.0, help="grid end, a0")
    p.add_argument("--n-points", type=int, default=2000, help="grid samples")
    p.add_argument("--out", default="potentials.csv", help="CSV output path")
    p.add_argument("--force", action="store_true",
                   help="overwrite existing outputs")
    p.set_defaults(handler=_cmd_pa_potentials)

    p = psub.add_parser("spectrum", help="bound levels of one curve")
    p.add_argument("--config", help="JSON with model parameter overrides")
    p.add_argument("--Te", default="1/2,3/2",
                   help="excited projections, e.g. 1/2,3/2")
    p.add_argument("--window", default="-1000,0",
                   help="energy window in MHz: low,high")
    p.add_argument("--curve", type=int, default=2,
                   help="adiabatic curve index (1..6)")
    p.add_argument("--grid", help="Numerov grid rmin,rmax,step in a0")
    p.add_argument("--out", default="spectrum.csv", help="CSV output path")
    p.add_argument("--emit-plotdata", action="store_true",
                   help="also write the potential curves CSV")
    p.add_argument("--force", action="store_true",
                   help="overwrite existing outputs")
    p.set_defaults(handler=_cmd_pa_spectrum)

    p = psub.add_parser("lb", help="near-threshold level-density ratio")
    p.add_argument("--gamma-a", type=float, required=True,
                   help="linewidth of the denser line (MHz)")
    p.add_argument("--gamma-b", type=float, default=1.0,
                   help="reference linewidth (MHz)")
    p.set_defaults(handler=_cmd_pa_lb)

    imaging = sub.add_parser("imaging", help="detection-histogram analysis")
    isub = imaging.add_subparsers(dest="command", required=True)

    p = isub.add_parser("fit", help="fit the two-component count model")
    p.add_argument("--input", required=True, help="counts CSV or JSON")
    p.add_argument("--out", required=True, help="fitted model JSON")
    p.add_argument("--force", action="store_true",
                   help="overwrite existing outputs")
    p.set_defaults(handler=_cmd_imaging_fit)

    p = isub.add_parser("threshold", help="optimal discrimination threshold")
    p.add_argument("--model", required=True, help="model JSON path")
    p.add_argument("--emit-plotdata", metavar="CSV",
                   help="write error-vs-threshold curve")
    p.add_argument("--force", action="store_true",
                   help="overwrite existing outputs")
    p.set_defaults(handler=_cmd_imaging_threshold)

    p = isub.add_parser("modelfree", help="triple-image fidelity estimator")
    p.add_argument("--input", required=True, help="triples CSV")
    p.add_argument("--alpha", type=float, default=0.05,
                   help="CI significance level")
    p.set_defaults(handler=_cmd_imaging_modelfree)

    p = isub.add_parser("synth", help="generate synthetic validation data")
    p.add_argument("--kind", choices=["counts", "triples"],
                   default="triples", help="dataset type")
    p.add_argument("--n", type=int, required=True, help="samples/records")
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    p.add_argument("--model", help="model JSON for counts (default built-in)")
    p.add_argument("--p-bright", type=float, default=0.55,
                   help="loading probability for triples")
    p.add_argument("--miss", type=float, default=8e-4,
                   help="false-negative rate for triples")
    p.add_argument("--loss", type=float, default=1.2e-2,
                   help="per-image loss for triples")
    p.add_argument("--false-positive", type=float, default=0.0,
                   help="false-positive rate for triples")
    p.add_argument("--out", required=True, help="output CSV")
    p.add_argument("--force", action="store_true",
                   help="overwrite existing outputs")
    p.set_defaults(handler=_cmd_imaging_synth)

    qubit = sub.add_parser("qubit", help="Bloch-vector coherence Monte Carlo")
    qsub = qubit.add_subparsers(dest="command", required=True)

    p = qsub.add_parser("simulate", help="contrast curve or one sequence")
    p.add_argument("--preset", help="named noise preset")
    p.add_argument("--noise", help="noise model JSON")
    p.add_argument("--kind", choices=["ramsey", "echo"],
                   help="sequence family (defaults to the preset's)")
    p.add_argument("--T", help="wait times: comma list or start:stop:count")
    p.add_argument("--sequence", help="simulate one sequence JSON instead")
    p.add_argument("--trials", type=int, default=2000,
                   help="trajectories per point")
    p.add_argument("--fringe-points", type=int, default=33,
                   help="fringe samples per T")
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    p.add_argument("--out", help="curve CSV path (curve mode)")
    p.add_argument("--emit-plotdata", action="store_true",
                   help="also write the first-T fringe CSV")
    p.add_argument("--force", action="store_true",
                   help="overwrite existing outputs")
    p.set_defaults(handler=_cmd_qubit_simulate)

    p = qsub.add_parser("fit", help="fit a decay curve or a fringe")
    p.add_argument("--input", required=True, help="two-column CSV")
    p.add_argument("--kind", choices=["stretched", "sinusoid"],
                   default="stretched", help="fit family")
    p.set_defaults(handler=_cmd_qubit_fit)

    p = qsub.add_parser("presets", help="list the named noise presets")
    p.set_defaults(handler=_cmd_qubit_presets)

    units = sub.add_parser("units", help="energy unit conversions")
    usub = units.add_subparsers(dest="command", required=True)

    p = usub.add_parser("convert", help="convert an energy value")
    p.add_argument("--value", type=float, required=True)
    p.add_argument("--from", dest="from_unit", required=True,
                   metavar="UNIT", help="Hartree, MHz, Joule, or "
                                        "Kelvin-equivalent")
    p.add_argument("--to", dest="to_unit", required=True, metavar="UNIT",
                   help="Hartree, MHz, Joule, or Kelvin-equivalent")
    p.set_defaults(handler=_cmd_units_convert)

    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    try:
        summary = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CliError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    except (OSError, ValueError, RuntimeError) as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}),
              file=sys.stderr)
        return 1

    print(json.dumps(summary, sort_keys=True, default=_json_default))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
