"""Command-line interface.

Three subcommands: ``run`` executes a configured experiment and writes one
CSV, ``validate`` checks a problem's operator assumptions, ``repro`` runs
the full three-example comparison with the benchmark defaults.  Exit codes:
0 success, 1 solver or validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .harness import (
    ALGORITHMS,
    ExperimentConfig,
    PROBLEMS,
    build_problem,
    run_experiment,
    write_csv,
)
from .problems import (
    check_example1_gradient,
    check_monotone,
    estimate_lipschitz,
    solution_residual,
)
from .solvers import SolverFailure

__all__ = ["cli_main", "main"]


def _algo_list(raw: str) -> tuple[str, ...]:
    names = tuple(part.strip() for part in raw.split(",") if part.strip())
    if not names:
        raise argparse.ArgumentTypeError("no algorithms given")
    unknown = [name for name in names if name not in ALGORITHMS]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown algorithms {unknown}; choose from {', '.join(ALGORITHMS)}"
        )
    return names


def _default_max_iter(problem: str) -> int:
    return 50 if problem == "ex3" else 200


def _cmd_run(args) -> int:
    cfg = ExperimentConfig(
        problem=args.problem,
        algorithms=args.algos,
        m=args.m,
        grid_points=args.grid_points,
        seed=args.seed,
        n_trials=args.trials,
        max_iter=args.max_iter
        if args.max_iter is not None
        else _default_max_iter(args.problem),
        stop_tol=args.stop_tol,
        output_path=args.out,
    )
    rows = run_experiment(cfg)
    write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_validate(args) -> int:
    cfg = ExperimentConfig(
        problem=args.problem, m=args.m, grid_points=args.grid_points, seed=args.seed
    )
    problem = build_problem(cfg, trial=0)
    all_ok = True

    def line(label: str, ok: bool, detail: str) -> None:
        nonlocal all_ok
        all_ok = all_ok and ok
        print(f"{label}: {'PASS' if ok else 'FAIL'} ({detail})")

    mono = check_monotone(problem, n_samples=args.samples, seed=args.seed)
    line(
        "monotone",
        mono.passed,
        f"min inner {mono.min_inner:.3e} over {mono.n_samples} pairs",
    )
    estimate = estimate_lipschitz(problem, n_samples=args.samples, seed=args.seed)
    lips_ok = estimate <= problem.L_claimed * (1.0 + 1e-6)
    line(
        "lipschitz",
        lips_ok,
        f"estimate {estimate:.6g} vs claimed {problem.L_claimed:.6g}",
    )
    residual = solution_residual(problem)
    residual_tol = (
        10.0 * problem.grid.h**2 if problem.grid is not None else 1e-8
    )
    line(
        "solution-residual",
        residual <= residual_tol,
        f"{residual:.3e} <= {residual_tol:.3e}",
    )
    if args.problem == "ex1":
        grad = check_example1_gradient(seed=args.seed)
        line(
            "gradient",
            grad.passed,
            f"max rel err {grad.max_rel_error:.3e} at {grad.n_points} points",
        )
    return 0 if all_ok else 1


def _cmd_repro(args) -> int:
    os.makedirs(args.outdir, exist_ok=True)
    settings = {
        "ex1": {"max_iter": 200},
        "ex2": {"max_iter": 200, "m": 5},
        "ex3": {"max_iter": 50, "grid_points": 101},
    }
    for problem, extra in settings.items():
        cfg = ExperimentConfig(
            problem=problem,
            algorithms=ALGORITHMS,
            seed=args.seed,
            n_trials=1,
            stop_tol=0.0,
            **extra,
        )
        rows = run_experiment(cfg)
        path = os.path.join(args.outdir, f"{problem}_comparison.csv")
        write_csv(rows, path)
        print(f"{problem}: wrote {len(rows)} rows to {path}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vi-extragrad",
        description="Extragradient solvers and benchmarks for variational inequalities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment and write a CSV")
    p_run.add_argument("--problem", required=True, choices=PROBLEMS)
    p_run.add_argument(
        "--algos",
        type=_algo_list,
        default=ALGORITHMS,
        help="comma-separated algorithm list (default: all)",
    )
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--trials", type=int, default=1)
    p_run.add_argument("--max-iter", type=int, default=None)
    p_run.add_argument("--m", type=int, default=5, help="ex2 dimension")
    p_run.add_argument("--grid-points", type=int, default=101, help="ex3 grid size")
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--stop-tol", type=float, default=0.0)
    p_run.set_defaults(func=_cmd_run)

    p_val = sub.add_parser("validate", help="check operator assumptions of a problem")
    p_val.add_argument("--problem", required=True, choices=PROBLEMS)
    p_val.add_argument("--seed", type=int, default=0)
    p_val.add_argument("--samples", type=int, default=1000)
    p_val.add_argument("--m", type=int, default=5)
    p_val.add_argument("--grid-points", type=int, default=101)
    p_val.set_defaults(func=_cmd_validate)

    p_rep = sub.add_parser(
        "repro", help="run the full three-example comparison with benchmark defaults"
    )
    p_rep.add_argument("--seed", type=int, default=0)
    p_rep.add_argument("--outdir", default="results")
    p_rep.set_defaults(func=_cmd_repro)

    return parser


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except SolverFailure as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
