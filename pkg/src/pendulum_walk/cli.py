"""Command-line frontend.

Subcommands map 1:1 onto the library surface: ``escape`` (exact and
simulated escape times), ``arrange`` (pendulum constructions), ``brute``
(exhaustive arrangement search), ``budget`` (constrained continuous
optimum), ``experiment`` (random-environment sweeps from a JSON config),
and ``verify`` (property suites).

Exit codes are a stable contract: 0 success, 1 property-suite failure,
2 usage or config error, 3 domain error, 4 size-cap violation.  Every
randomized subcommand takes a ``--seed`` (default: 1729, never the
clock) and prints it, so any run can be replayed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .arrangements import is_pendulum, mirror_permutation, pendulum_arrangement
from .errors import DimensionError, DomainError, SizeCapError, StepLimitError
from .escape import expected_escape_closed_form, expected_escape_linear_system
from .experiments import run_d_sweep, run_variance_sweep, write_records_csv
from .optimize import BudgetConstraint, brute_force_max, brute_force_min, budget_optimal
from .simulate import estimate_escape
from .verify import SUITE_NAMES, run_suites

DEFAULT_SEED = 1729

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_SIZE_CAP = 4


def _parse_vector(text: str) -> list[float]:
    tokens = [tok for tok in text.replace(" ", "").split(",") if tok]
    if not tokens:
        raise ValueError("empty vector")
    return [float(tok) for tok in tokens]


def _format_vector(values) -> str:
    return ",".join(repr(float(v)) for v in values)


def cmd_escape(args) -> int:
    p = _parse_vector(args.p)
    if args.method in ("closed", "all"):
        print(f"closed {expected_escape_closed_form(p)!r}")
    if args.method in ("linear", "all"):
        print(f"linear {expected_escape_linear_system(p)!r}")
    if args.method in ("simulate", "all"):
        est = estimate_escape(p, args.trials, args.seed, threads=args.threads)
        print(
            f"simulate {est.mean!r} std_error {est.std_error!r} "
            f"trials {est.trials} seed {est.seed} rng {est.rng}"
        )
    if args.method == "all":
        closed = expected_escape_closed_form(p)
        linear = expected_escape_linear_system(p)
        print(f"discrepancy closed_vs_linear {abs(closed - linear)!r}")
    return EXIT_OK


def cmd_arrange(args) -> int:
    vector = _parse_vector(args.p)
    if args.mode == "check":
        print(f"pendulum {str(is_pendulum(vector)).lower()}")
        return EXIT_OK
    if args.mode == "pendulum":
        arranged = pendulum_arrangement(vector)
    elif args.mode == "mirror-pendulum":
        pend = pendulum_arrangement(vector)
        arranged = mirror_permutation(len(vector)).apply(pend)
    else:  # sorted
        arranged = np.sort(np.asarray(vector, dtype=np.float64), kind="stable")
    print(f"arrangement {_format_vector(arranged)}")
    print(f"escape {expected_escape_closed_form(arranged)!r}")
    return EXIT_OK


def cmd_brute(args) -> int:
    p = _parse_vector(args.p)
    search = brute_force_max if args.direction == "max" else brute_force_min
    report = search(p, top=args.top, threads=args.threads)
    print(f"evaluations {report.evaluations}")
    print(f"optimal_value {report.optimal_value!r}")
    for arrangement in sorted(report.optimal_arrangements):
        print(f"optimal {_format_vector(arrangement)}")
    for rank, (arrangement, value) in enumerate(report.ranked_list or [], start=1):
        print(f"rank {rank} value {value!r} arrangement {_format_vector(arrangement)}")
    if args.direction == "max":
        pend = pendulum_arrangement(p)
        expected = {
            tuple(pend.tolist()),
            tuple(mirror_permutation(len(p)).apply(pend).tolist()),
        }
        match = report.optimal_arrangements == expected
        print(f"pendulum_pair_is_argmax {str(match).lower()}")
    return EXIT_OK


def cmd_budget(args) -> int:
    constraint = BudgetConstraint(a=args.a, b=args.b, d=args.d)
    vector = budget_optimal(constraint)
    if args.a == 0.0 and args.b > 0.0:
        print("note: per-entry cap is 0 with a positive budget; nothing to allocate")
    print(f"arrangement {_format_vector(vector)}")
    print(f"escape {expected_escape_closed_form(vector)!r}")
    return EXIT_OK


def _load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        config = json.load(handle)
    if not isinstance(config, dict) or "experiment" not in config:
        raise ValueError("config must be a JSON object with an 'experiment' field")
    return config


def _scale(config: dict, full_scale: bool) -> tuple[int, int]:
    instantiations = int(config.get("instantiations", 200))
    perm_samples = int(config.get("perm_samples", 200))
    if full_scale:
        full = config.get("full_scale", {})
        instantiations = int(full.get("instantiations", 1000))
        perm_samples = int(full.get("perm_samples", 1000))
    return instantiations, perm_samples


def cmd_experiment(args) -> int:
    config = _load_config(args.config)
    kind = config["experiment"]
    seed = int(config.get("seed", DEFAULT_SEED))
    instantiations, perm_samples = _scale(config, args.full_scale)
    os.makedirs(args.output_dir, exist_ok=True)
    print(f"seed {seed}")

    if kind == "variance_sweep":
        x_values = [float(x) for x in config.get("x_values", [])]
        if not x_values:
            raise ValueError("variance_sweep config needs a nonempty 'x_values' grid")
        records = run_variance_sweep(
            x_values,
            d=int(config["d"]),
            instantiations=instantiations,
            seed=seed,
            perm_samples=perm_samples,
            include_minimal=bool(config.get("include_minimal", True)),
        )
        out_path = os.path.join(args.output_dir, config.get("output", "variance_sweep.csv"))
        write_records_csv(records, out_path)
        _print_aggregates(records)
        print(f"wrote {out_path}")
        return EXIT_OK

    if kind == "d_sweep":
        d_values = [int(d) for d in config.get("d_values", [])]
        distributions = config.get("distributions", [])
        if not d_values or not distributions:
            raise ValueError("d_sweep config needs nonempty 'd_values' and 'distributions'")
        for dist in distributions:
            records = run_d_sweep(
                d_values,
                lo=float(dist["lo"]),
                hi=float(dist["hi"]),
                instantiations=instantiations,
                perm_samples=perm_samples,
                seed=seed,
            )
            out_path = os.path.join(
                args.output_dir, dist.get("output", f"d_sweep_{dist['lo']}_{dist['hi']}.csv")
            )
            write_records_csv(records, out_path)
            _print_aggregates(records)
            print(f"wrote {out_path}")
        return EXIT_OK

    raise ValueError(f"unknown experiment kind {kind!r}")


def _print_aggregates(records) -> None:
    for rec in records:
        if rec.instantiation != -1:
            continue
        grid = f"x={rec.x!r}" if rec.x is not None else f"d={rec.d}"
        print(
            f"{rec.experiment} {grid} d={rec.d} {rec.arrangement} "
            f"mean_log10_escape {rec.log10_escape:.6f}"
        )


def cmd_verify(args) -> int:
    print(f"seed {args.seed}")
    results = run_suites(args.suite, trials=args.trials, seed=args.seed, threads=args.threads)
    failed = False
    for res in results:
        print(f"{res.name}: checks {res.checks} failures {res.failures}")
        if not res.passed and not failed:
            failed = True
            print(f"counterexample: {res.first_counterexample}")
    return EXIT_PROPERTY_FAILURE if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pendulum-walk",
        description="Escape times of heterogeneous walks on a line and the "
        "arrangements that extremize them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    escape = sub.add_parser("escape", help="expected escape time of a transition vector")
    escape.add_argument("--p", required=True, help="comma-separated probabilities in [0, 1)")
    escape.add_argument("--method", choices=["closed", "linear", "simulate", "all"], default="closed")
    escape.add_argument("--trials", type=int, default=100_000)
    escape.add_argument("--seed", type=int, default=DEFAULT_SEED)
    escape.add_argument("--threads", type=int, default=1)
    escape.set_defaults(func=cmd_escape)

    arrange = sub.add_parser("arrange", help="pendulum and sorted arrangements")
    arrange.add_argument("--p", required=True)
    arrange.add_argument(
        "--mode", choices=["pendulum", "mirror-pendulum", "sorted", "check"], default="pendulum"
    )
    arrange.set_defaults(func=cmd_arrange)

    brute = sub.add_parser("brute", help="exhaustive search over arrangements")
    brute.add_argument("--p", required=True)
    brute.add_argument("--direction", choices=["max", "min"], default="max")
    brute.add_argument("--top", type=int, default=None, help="also list the best k arrangements")
    brute.add_argument("--threads", type=int, default=1)
    brute.set_defaults(func=cmd_brute)

    budget = sub.add_parser("budget", help="optimum under a box-with-budget constraint")
    budget.add_argument("--a", type=float, required=True, help="per-entry cap in [0, 1)")
    budget.add_argument("--b", type=float, required=True, help="total budget, >= 0")
    budget.add_argument("--d", type=int, required=True)
    budget.set_defaults(func=cmd_budget)

    experiment = sub.add_parser("experiment", help="run a sweep described by a JSON config")
    experiment.add_argument("config", help="path to the sweep configuration")
    experiment.add_argument("--output-dir", default=".")
    experiment.add_argument(
        "--full-scale", action="store_true",
        help="use the config's full_scale instantiation counts (default 1000/1000)",
    )
    experiment.set_defaults(func=cmd_experiment)

    verify = sub.add_parser("verify", help="run randomized/exhaustive property suites")
    verify.add_argument("--suite", choices=list(SUITE_NAMES), default="all")
    verify.add_argument("--trials", type=int, default=200)
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--threads", type=int, default=1)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except (DomainError, DimensionError, StepLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
