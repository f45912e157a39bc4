"""Experiment command line: dataset generation, training runs with trace and
summary files, and optimizer comparisons.

Subcommands:
  run       train one model, write trace.csv / summary.json / model.csv
  gen-data  materialize a dataset as CSV files
  compare   run GLPA against SGDM, RMSProp, Adam on the same task and seed
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import data as data_mod
from . import diagnostics
from .losses import LossKind, outer_value
from .model import NetworkShape, forward_batch, init_params, inner_eval
from .solvers import FitReport, SolverConfig, baseline_fit, glpa_fit, lpa_fit
from .subsolvers import AdmmConfig

SCHEMA_VERSION = 1


def _f17(x: float) -> float:
    # round-trip through 17 significant digits (the serialization contract)
    return float(f"{x:.17g}")


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--loss", choices=[k.value for k in LossKind], default="quadratic")
    p.add_argument("--solver", choices=["lpa", "glpa", "sgdm", "rmsprop", "adam"],
                   default="lpa")
    p.add_argument("--q", type=int, default=None,
                   help="hidden neurons (default: adaptive size from m and d)")
    p.add_argument("--t", type=float, default=1e5)
    p.add_argument("--step-tol", type=float, default=1e-2)
    p.add_argument("--max-outer", type=int, default=500)
    p.add_argument("--c", type=float, default=1e-3)
    p.add_argument("--tau", type=float, default=0.5)
    p.add_argument("--max-backtracks", type=int, default=10)
    p.add_argument("--rho", type=float, default=1e-2)
    p.add_argument("--eps", type=float, default=1e-2)
    p.add_argument("--admm-max-iters", type=int, default=20)
    p.add_argument("--noise-sigma", type=float, default=None,
                   help="enable training-target noise with this sigma_tilde")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--init", choices=["zero", "uniform", "wide"], default="uniform")
    p.add_argument("--pair", type=str, default="0,1",
                   help="digit pair A,B for the digits task")
    p.add_argument("--train-frac", type=float, default=0.7)
    p.add_argument("--data", type=str, default=None,
                   help="CSV path (digits export or custom dataset)")
    p.add_argument("--out", type=str, default="out")
    p.add_argument("--n-train", type=int, default=289)
    p.add_argument("--n-test", type=int, default=121)
    p.add_argument("--normalize", action="store_true",
                   help="divide digit pixels by 16")
    p.add_argument("--lr", type=float, default=1e-3)
    p.add_argument("--momentum", type=float, default=0.9)
    p.add_argument("--iters", type=int, default=1000,
                   help="iteration count for the first-order baselines")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="signet",
                                     description="Sigmoid-network training "
                                                 "via composite optimization")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="train one model and write result files")
    p_run.add_argument("--task", choices=["franke", "digits", "custom-csv"],
                       required=True)
    _add_common_flags(p_run)
    p_run.add_argument("--save-model", action="store_true",
                       help="also write model.csv with the final parameters")

    p_gen = sub.add_parser("gen-data", help="write datasets as CSV")
    p_gen.add_argument("--task", choices=["franke", "digits"], required=True)
    p_gen.add_argument("--n-train", type=int, default=289)
    p_gen.add_argument("--n-test", type=int, default=121)
    p_gen.add_argument("--noise-sigma", type=float, default=None)
    p_gen.add_argument("--pair", type=str, default="0,1")
    p_gen.add_argument("--train-frac", type=float, default=0.7)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--data", type=str, default=None)
    p_gen.add_argument("--normalize", action="store_true")
    p_gen.add_argument("--out", type=str, default="out")

    p_cmp = sub.add_parser("compare",
                           help="GLPA vs SGDM/RMSProp/Adam on one task")
    p_cmp.add_argument("--task", choices=["franke", "digits", "custom-csv"],
                       required=True)
    _add_common_flags(p_cmp)
    return parser


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(v) for v in text.split(","))
    except ValueError:
        raise ValueError(f"--pair expects 'A,B', got {text!r}") from None
    return a, b


def _load_task(args) -> tuple[data_mod.Dataset, data_mod.Dataset]:
    if args.task == "franke":
        noise = (data_mod.NoiseSpec(args.noise_sigma, args.seed)
                 if args.noise_sigma is not None else None)
        return data_mod.make_franke_datasets(args.n_train, args.n_test, noise)
    if args.task == "digits":
        records = data_mod.load_digits_csv(args.data)
        a, b = _parse_pair(args.pair)
        return data_mod.make_binary_task(records, a, b, args.train_frac,
                                         args.seed, args.normalize)
    if args.task == "custom-csv":
        if args.data is None:
            raise ValueError("custom-csv task needs --data")
        loss = LossKind(args.loss)
        task = (data_mod.TaskKind.BINARY if loss is LossKind.HINGE
                else data_mod.TaskKind.REGRESSION)
        full = data_mod.load_dataset_csv(args.data, task)
        n_train = int(args.train_frac * full.m)
        rng = np.random.default_rng(args.seed)
        perm = rng.permutation(full.m)
        tr = data_mod.Dataset(full.inputs[perm[:n_train]],
                              full.targets[perm[:n_train]], task)
        te = data_mod.Dataset(full.inputs[perm[n_train:]],
                              full.targets[perm[n_train:]], task)
        return tr, te
    raise ValueError(f"unknown task {args.task!r}")


def _validate_combo(loss: LossKind, task_kind: data_mod.TaskKind):
    if loss is LossKind.HINGE and task_kind is not data_mod.TaskKind.BINARY:
        raise ValueError("hinge loss needs a binary classification task")
    if loss is not LossKind.HINGE and task_kind is data_mod.TaskKind.BINARY:
        raise ValueError("classification tasks use the hinge loss")


def _solver_config(args) -> SolverConfig:
    return SolverConfig(t=args.t, step_tol=args.step_tol, max_outer=args.max_outer,
                        c=args.c, tau=args.tau, max_backtracks=args.max_backtracks,
                        admm=AdmmConfig(rho=args.rho, eps=args.eps,
                                        max_iters=args.admm_max_iters))


def _fit(args, train, shape, loss, theta0) -> FitReport:
    cfg = _solver_config(args)
    if args.solver == "lpa":
        return lpa_fit(train.inputs, train.targets, shape, loss, cfg, theta0)
    if args.solver == "glpa":
        return glpa_fit(train.inputs, train.targets, shape, loss, cfg, theta0)
    return baseline_fit(train.inputs, train.targets, shape, loss, args.solver,
                        theta0, lr=args.lr, momentum=args.momentum,
                        iters=args.iters)


def _write_trace(report: FitReport, path: Path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "objective", "step_norm", "eta", "admm_iters",
                         "elapsed_s"])
        for rec in report.trace:
            writer.writerow([rec.k, f"{rec.objective:.17g}",
                             f"{rec.step_norm:.17g}", f"{rec.eta:.17g}",
                             rec.admm_iters, f"{rec.elapsed:.17g}"])


def _metrics(theta, shape, loss, train, test):
    if train.task is data_mod.TaskKind.BINARY:
        return {
            "training_errors": diagnostics.classification_errors(theta, shape, train),
            "test_errors": diagnostics.classification_errors(theta, shape, test),
            "training_size": train.m,
            "test_size": test.m,
        }
    pred_tr = forward_batch(theta, shape, train.inputs)
    pred_te = forward_batch(theta, shape, test.inputs)
    return {
        "train_rms_error": _f17(diagnostics.rms_error(pred_tr, train.targets)),
        "train_max_error": _f17(diagnostics.max_error(pred_tr, train.targets)),
        "test_rms_error": _f17(diagnostics.rms_error(pred_te, test.targets)),
        "test_max_error": _f17(diagnostics.max_error(pred_te, test.targets)),
    }


def _config_echo(args) -> dict:
    echo = {}
    for key, value in sorted(vars(args).items()):
        if key == "command":
            continue
        echo[key] = _f17(value) if isinstance(value, float) else value
    return echo


def cmd_run(args) -> int:
    loss = LossKind(args.loss)
    train, test = _load_task(args)
    _validate_combo(loss, train.task)
    q = args.q if args.q is not None else diagnostics.adaptive_network_size(
        train.m, train.d)
    shape = NetworkShape(d=train.d, q=q)
    theta0 = init_params(shape, args.init, args.seed)

    started = time.perf_counter()
    report = _fit(args, train, shape, loss, theta0)
    elapsed = time.perf_counter() - started

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_trace(report, out / "trace.csv")

    ev = inner_eval(report.theta_star, shape, train.inputs, train.targets, loss)
    rank, full_row_rank = diagnostics.jacobian_rank(ev.J)
    summary = {
        "schema_version": SCHEMA_VERSION,
        "config": _config_echo(args),
        "q": q,
        "n_params": shape.n,
        "adaptive_q": diagnostics.adaptive_network_size(train.m, train.d),
        "final_objective": _f17(report.final_objective),
        "iterations": len(report.trace),
        "converged": report.converged,
        "stop_reason": report.stop_reason,
        "elapsed_s": _f17(elapsed),
        "jacobian_rank": rank,
        "full_row_rank": full_row_rank,
        "metrics": _metrics(report.theta_star, shape, loss, train, test),
    }
    with open(out / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    if args.save_model:
        with open(out / "model.csv", "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["theta"])
            for v in report.theta_star:
                writer.writerow([f"{v:.17g}"])
    print(f"wrote {out / 'summary.json'} (final objective "
          f"{report.final_objective:.6g}, {len(report.trace)} iterations)")
    return 0


def cmd_gen_data(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.task == "franke":
        noise = (data_mod.NoiseSpec(args.noise_sigma, args.seed)
                 if args.noise_sigma is not None else None)
        train, test = data_mod.make_franke_datasets(args.n_train, args.n_test, noise)
    else:
        records = data_mod.load_digits_csv(args.data)
        a, b = _parse_pair(args.pair)
        train, test = data_mod.make_binary_task(records, a, b, args.train_frac,
                                                args.seed, args.normalize)
    data_mod.save_dataset_csv(train, out / "train.csv")
    data_mod.save_dataset_csv(test, out / "test.csv")
    print(f"wrote {out / 'train.csv'} ({train.m} rows) and "
          f"{out / 'test.csv'} ({test.m} rows)")
    return 0


def cmd_compare(args) -> int:
    loss = LossKind(args.loss)
    train, test = _load_task(args)
    _validate_combo(loss, train.task)
    q = args.q if args.q is not None else diagnostics.adaptive_network_size(
        train.m, train.d)
    shape = NetworkShape(d=train.d, q=q)
    theta0 = init_params(shape, args.init, args.seed)
    cfg = _solver_config(args)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    finals = {}
    report = glpa_fit(train.inputs, train.targets, shape, loss, cfg, theta0)
    for rec in report.trace:
        rows.append(("glpa", rec.k, rec.objective))
    finals["glpa"] = report.final_objective
    for name in ("sgdm", "rmsprop", "adam"):
        rep = baseline_fit(train.inputs, train.targets, shape, loss, name,
                           theta0, lr=args.lr, momentum=args.momentum,
                           iters=args.iters)
        for rec in rep.trace:
            rows.append((name, rec.k, rec.objective))
        finals[name] = rep.final_objective
    with open(out / "compare.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["solver", "k", "objective"])
        for solver, k, obj in rows:
            writer.writerow([solver, k, f"{obj:.17g}"])
    with open(out / "compare_summary.json", "w", encoding="utf-8") as fh:
        json.dump({"schema_version": SCHEMA_VERSION,
                   "config": _config_echo(args),
                   "final_objectives": {k: _f17(v) for k, v in finals.items()}},
                  fh, indent=2)
        fh.write("\n")
    print("final objectives: " +
          ", ".join(f"{k}={v:.6g}" for k, v in finals.items()))
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(args)
        if args.command == "gen-data":
            return cmd_gen_data(args)
        return cmd_compare(args)
    except (ValueError, FloatingPointError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
