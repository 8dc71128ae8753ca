"""Command-line front end: run the case studies, plot, self-check gradients.

Outputs are deterministic functions of the arguments; nothing from the
clock or the environment reaches the files.  Config precedence is
built-in defaults < JSON config file (--config) < individual flags.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .datagen import Case1Config, Case2Config
from .nn import gradient_check_suite
from .svg import line_chart
from .trainer import TrainerConfig, case1_scenario, case2_scenario, run_lifecycle

STEP_COLUMNS = ("step", "mse_physinet", "mse_nn_only", "mse_physics_only",
                "w_physi", "w_nn", "weight_ratio")
SNAPSHOT_COLUMNS = ("step", "variant", "x", "y_hat")
SUMMARY_COLUMNS = ("seed", "step", "mse_physinet", "mse_nn_only", "mse_physics_only")

# JSON config keys: trainer keys mirror the flag names; the rest override
# the selected case's measurement process.
_TRAINER_KEYS = ("steps", "points_per_step", "epochs", "minibatch", "lr", "test_size")
_CASE1_KEYS = ("a", "b", "noise_std", "x_low", "x_high")
_CASE2_KEYS = ("a0_true", "a0_model", "omega_low", "omega_high", "noise_std")
_OTHER_KEYS = ("case", "seeds", "out")
VALID_CONFIG_KEYS = sorted(set(_TRAINER_KEYS + _CASE1_KEYS + _CASE2_KEYS + _OTHER_KEYS))

GRADCHECK_TOLERANCE = 1e-5


def _f17(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_f17(v) for v in row])


def _summary_steps(steps: int) -> list[int]:
    # step 0 plus every tenth step ending in 9, as in the result tables
    return [0] + [s for s in range(9, steps, 10)]


def _parse_seeds(text: str) -> list[int]:
    try:
        seeds = [int(part) for part in str(text).split(",") if part != ""]
    except ValueError:
        raise ValueError(f"seeds must be a comma-separated integer list, got {text!r}")
    if not seeds:
        raise ValueError("at least one seed is required")
    return seeds


def _load_config_file(path) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a flat JSON object")
    unknown = sorted(set(data) - set(VALID_CONFIG_KEYS))
    if unknown:
        raise ValueError(
            f"unknown config keys {unknown}; valid keys: {VALID_CONFIG_KEYS}")
    return data


def cmd_run(args) -> int:
    overrides = {}
    if args.config:
        try:
            overrides = _load_config_file(args.config)
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        return overrides.get(key, default)

    case = pick(args.case, "case", None)
    if case not in ("case1", "case2"):
        print("error: --case must be case1 or case2", file=sys.stderr)
        return 1
    try:
        seeds = _parse_seeds(pick(args.seeds, "seeds", None) or "")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out_dir = pick(args.out, "out", "physinet_runs")

    base = TrainerConfig()
    trainer_kwargs = dict(
        steps=int(pick(args.steps, "steps", base.steps)),
        points_per_step=int(pick(args.points_per_step, "points_per_step",
                                 base.points_per_step)),
        epochs_per_step=int(pick(args.epochs, "epochs", base.epochs_per_step)),
        minibatch_size=int(pick(args.minibatch, "minibatch", base.minibatch_size)),
        test_set_size=int(pick(args.test_size, "test_size", base.test_set_size)),
        learning_rate=float(pick(args.lr, "lr", base.learning_rate)),
    )

    try:
        if case == "case1":
            c = Case1Config()
            cfg = Case1Config(**{k: float(overrides.get(k, getattr(c, k)))
                                 for k in _CASE1_KEYS})
            scenario = case1_scenario(cfg)
        else:
            c = Case2Config()
            cfg = Case2Config(**{k: float(overrides.get(k, getattr(c, k)))
                                 for k in _CASE2_KEYS})
            scenario = case2_scenario(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory: {exc}", file=sys.stderr)
        return 1

    summary_rows = []
    try:
        for seed in seeds:
            config = TrainerConfig(seed=seed, **trainer_kwargs)
            result = run_lifecycle(scenario, config)

            steps_path = os.path.join(out_dir, f"steps_{case}_{seed}.csv")
            _write_csv(steps_path, STEP_COLUMNS, [
                (r.step, r.mse_physinet, r.mse_nn_only, r.mse_physics_only,
                 r.w_physi, r.w_nn, r.weight_ratio)
                for r in result.records])

            snap_path = os.path.join(out_dir, f"snapshots_{case}_{seed}.csv")
            snap_rows = []
            for snap in result.snapshots:
                for x, yh in zip(snap.inputs, snap.predictions):
                    snap_rows.append((snap.step, snap.variant, float(x), float(yh)))
            _write_csv(snap_path, SNAPSHOT_COLUMNS, snap_rows)

            model_path = os.path.join(out_dir, f"model_{case}_{seed}.json")
            with open(model_path, "w") as fh:
                json.dump(result.physinet.to_dict(), fh, indent=2)
                fh.write("\n")

            by_step = {r.step: r for r in result.records}
            for s in _summary_steps(config.steps):
                r = by_step[s]
                summary_rows.append((seed, s, r.mse_physinet, r.mse_nn_only,
                                     r.mse_physics_only))
            print(f"wrote {steps_path}")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1

    summary_path = os.path.join(out_dir, f"summary_{case}.csv")
    try:
        _write_csv(summary_path, SUMMARY_COLUMNS, summary_rows)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {summary_path}")
    return 0


def _read_steps_csv(path):
    """Parse a steps CSV; raises ValueError naming the offending line."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: line 1: empty file")
        missing = [c for c in STEP_COLUMNS if c not in header]
        if missing:
            raise ValueError(f"{path}: line 1: missing columns {missing}")
        col = {name: header.index(name) for name in STEP_COLUMNS}
        rows = []
        for lineno, parts in enumerate(reader, start=2):
            if not parts:
                continue
            try:
                rows.append({name: float(parts[col[name]]) for name in STEP_COLUMNS})
            except (ValueError, IndexError):
                raise ValueError(f"{path}: line {lineno}: malformed row {parts!r}")
    if not rows:
        raise ValueError(f"{path}: line 2: no data rows")
    return rows


def cmd_plot(args) -> int:
    try:
        rows = _read_steps_csv(args.input)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    steps = [r["step"] for r in rows]
    if args.kind == "mse":
        series = [
            ("physinet", steps, [r["mse_physinet"] for r in rows]),
            ("nn_only", steps, [r["mse_nn_only"] for r in rows]),
            ("physics_only", steps, [r["mse_physics_only"] for r in rows]),
        ]
        svg = line_chart(series, x_label="step", y_label="test MSE (log scale)",
                         log_y=True)
    else:
        # the curve starts at the step-0 post-training ratio; NaN
        # sentinels (w_nn == 0) are dropped by the chart
        series = [("w_physi / w_nn", steps, [r["weight_ratio"] for r in rows])]
        svg = line_chart(series, x_label="step", y_label="weight ratio")

    try:
        with open(args.out, "w") as fh:
            fh.write(svg)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


def cmd_gradcheck(args) -> int:
    perturb = None
    if args.corrupt:
        def perturb(grads):
            grads[0].ravel()[0] += 1e-3
    max_err, worst = gradient_check_suite(args.seed, perturb=perturb)
    print(f"max relative error: {max_err:.3e} (tolerance {GRADCHECK_TOLERANCE:.0e})")
    if max_err < GRADCHECK_TOLERANCE:
        print("gradient check passed")
        return 0
    sizes, trial, array_index, flat_index = worst
    kind = "weights" if array_index % 2 == 0 else "biases"
    layer = array_index // 2
    print(f"gradient check FAILED at architecture {list(sizes)}, trial {trial}, "
          f"layer {layer} {kind}, flat index {flat_index}", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="physinet",
        description="Hybrid physics + neural network case-study runner")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a case study over one or more seeds")
    run.add_argument("--case", choices=("case1", "case2"))
    run.add_argument("--seeds", help="comma-separated seed list, e.g. 1,2,3")
    run.add_argument("--steps", type=int)
    run.add_argument("--points-per-step", type=int, dest="points_per_step")
    run.add_argument("--epochs", type=int)
    run.add_argument("--minibatch", type=int)
    run.add_argument("--lr", type=float)
    run.add_argument("--test-size", type=int, dest="test_size")
    run.add_argument("--config", help="JSON config file (defaults < file < flags)")
    run.add_argument("--out", help="output directory (default physinet_runs)")
    run.set_defaults(func=cmd_run)

    plot = sub.add_parser("plot", help="render a steps CSV as an SVG chart")
    plot.add_argument("--input", required=True, help="steps CSV from `run`")
    plot.add_argument("--kind", choices=("mse", "weight_ratio"), required=True)
    plot.add_argument("--out", required=True, help="output SVG path")
    plot.set_defaults(func=cmd_plot)

    grad = sub.add_parser("gradcheck",
                          help="verify analytic gradients against finite differences")
    grad.add_argument("--seed", type=int, default=0)
    grad.add_argument("--corrupt", action="store_true",
                      help="negative control: inject a gradient error")
    grad.set_defaults(func=cmd_gradcheck)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
