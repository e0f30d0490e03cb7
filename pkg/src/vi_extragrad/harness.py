"""Experiment orchestration: seeding, timing, CSV persistence.

A config names a problem, an ordered list of algorithms and the trial
layout; :func:`run_experiment` turns it into one :class:`ResultRow` per
iteration.  Rows are assembled in (algorithm, trial, iter) order regardless
of how the underlying runs are scheduled, so output files are deterministic
up to the timing column.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .hilbert import Grid, HVec
from .problems import (
    ProblemInstance,
    make_example1,
    make_example2,
    make_example3,
)
from .solvers import ALGORITHMS, Schedules, SolverFailure, run

__all__ = [
    "PROBLEMS",
    "CSV_HEADER",
    "ExperimentConfig",
    "ResultRow",
    "default_init_style",
    "build_problem",
    "build_initial_points",
    "paper_schedules",
    "run_experiment",
    "write_csv",
    "read_csv",
]

PROBLEMS = ("ex1", "ex2", "ex3")
CSV_HEADER = (
    "problem",
    "algorithm",
    "trial",
    "iter",
    "error",
    "residual",
    "lambda",
    "theta",
    "elapsed_ms",
)
FAILED_SENTINEL = "failed"
THREADS_ENV_VAR = "VI_EXTRAGRAD_THREADS"

# Sub-stream tag separating initial-point draws from problem-matrix draws
# within the same trial seed.
_INIT_STREAM = 0x1217


@dataclass(frozen=True)
class ExperimentConfig:
    problem: str
    algorithms: tuple[str, ...] = ALGORITHMS
    m: int = 5
    grid_points: int = 101
    seed: int = 0
    n_trials: int = 1
    max_iter: int = 200
    init_style: str = ""
    stop_tol: float = 0.0
    output_path: str = ""

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}; expected one of {PROBLEMS}")
        if not self.algorithms:
            raise ValueError("algorithms must be nonempty")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ValueError(f"unknown algorithms {unknown}; expected from {ALGORITHMS}")
        if self.n_trials < 1:
            raise ValueError("n_trials must be at least 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.grid_points < 2:
            raise ValueError("grid_points must be at least 2")
        object.__setattr__(self, "algorithms", tuple(self.algorithms))


@dataclass(frozen=True)
class ResultRow:
    problem: str
    algorithm: str
    trial: int
    iter: int
    error: float
    residual: float
    lam: float
    theta: float
    elapsed_ms: float


def default_init_style(problem: str) -> str:
    return {"ex1": "rand_unit", "ex2": "rand_scaled:10", "ex3": "exp_profile"}[problem]


def build_problem(cfg: ExperimentConfig, trial: int) -> ProblemInstance:
    """Problem instance for one trial; ex2 redraws its matrix per trial."""
    if cfg.problem == "ex1":
        return make_example1()
    if cfg.problem == "ex2":
        return make_example2(cfg.m, seed=cfg.seed + trial)
    return make_example3(Grid(cfg.grid_points))


def build_initial_points(
    cfg: ExperimentConfig, problem: ProblemInstance, trial: int
) -> tuple[HVec, HVec]:
    """Starting pair for one trial; both points coincide by design."""
    style = cfg.init_style or default_init_style(cfg.problem)
    rng = np.random.default_rng([cfg.seed + trial, _INIT_STREAM])
    weights = problem.x_star.weights
    if style == "rand_unit":
        coords = rng.random(problem.dim)
    elif style.startswith("rand_scaled:"):
        factor = float(style.split(":", 1)[1])
        coords = factor * rng.random(problem.dim)
    elif style == "exp_profile":
        if problem.grid is None:
            raise ValueError("exp_profile requires a grid-based problem")
        coords = 10.0 * np.exp(problem.grid.nodes)
    else:
        raise ValueError(f"unknown init_style {style!r}")
    x0 = HVec(coords, weights)
    return x0, x0


def paper_schedules(
    algorithm: str, problem: ProblemInstance, stop_tol: float = 0.0
) -> Schedules:
    """Benchmark parameterisation of one algorithm.

    The adaptive Mann schemes use the module defaults; the Armijo scheme uses
    a smaller acceptance factor (mu = 0.4) and halving trials; the fixed-step
    scheme needs the claimed Lipschitz constant for its 0.99/L step.
    """
    if algorithm in ("misegm", "mitegm"):
        return Schedules(stop_tol=stop_tol)
    if algorithm in ("masegm", "mategm"):
        return Schedules(theta=0.0, stop_tol=stop_tol)
    if algorithm == "hsegm":
        return Schedules(theta=0.0, lambda1=0.99 / problem.L_claimed, stop_tol=stop_tol)
    if algorithm == "vsegm":
        return Schedules(theta=0.0, mu=0.4, armijo_ell=0.5, stop_tol=stop_tol)
    if algorithm == "tvegm":
        return Schedules(theta=0.0, lambda1=1.0, mu=0.5, stop_tol=stop_tol)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _run_single(
    problem_label: str,
    algorithm: str,
    trial: int,
    problem: ProblemInstance,
    x0: HVec,
    x1: HVec,
    max_iter: int,
    stop_tol: float,
) -> list[ResultRow]:
    """One (algorithm, trial) run as rows; failures become a marker row."""
    sched = paper_schedules(algorithm, problem, stop_tol=stop_tol)

    def to_row(rec) -> ResultRow:
        return ResultRow(
            problem=problem_label,
            algorithm=algorithm,
            trial=trial,
            iter=rec.n,
            error=rec.error,
            residual=rec.residual,
            lam=rec.lam,
            theta=rec.theta,
            elapsed_ms=rec.elapsed_ns / 1e6,
        )

    try:
        trace = run(algorithm, problem, sched, x0, x1, max_iter)
    except SolverFailure as exc:
        rows = [to_row(rec) for rec in exc.partial_records]
        last_ms = rows[-1].elapsed_ms if rows else 0.0
        failing_iter = exc.iteration if exc.iteration is not None else len(rows) + 1
        rows.append(
            ResultRow(
                problem=problem_label,
                algorithm=algorithm,
                trial=trial,
                iter=failing_iter,
                error=math.nan,
                residual=math.nan,
                lam=math.nan,
                theta=math.nan,
                elapsed_ms=last_ms,
            )
        )
        return rows
    return [to_row(rec) for rec in trace.records]


def _worker_count(n_tasks: int) -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "")
    if raw:
        try:
            requested = int(raw)
        except ValueError as exc:
            raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from exc
        if requested < 1:
            raise ValueError(f"{THREADS_ENV_VAR} must be >= 1, got {requested}")
    else:
        requested = os.cpu_count() or 1
    return max(1, min(requested, n_tasks))


def run_experiment(cfg: ExperimentConfig) -> list[ResultRow]:
    """All runs of the config, flattened in (algorithm, trial, iter) order."""
    problems = {trial: build_problem(cfg, trial) for trial in range(cfg.n_trials)}
    initials = {
        trial: build_initial_points(cfg, problems[trial], trial)
        for trial in range(cfg.n_trials)
    }
    tasks = [
        (algorithm, trial)
        for algorithm in cfg.algorithms
        for trial in range(cfg.n_trials)
    ]

    def execute(task: tuple[str, int]) -> list[ResultRow]:
        algorithm, trial = task
        x0, x1 = initials[trial]
        return _run_single(
            cfg.problem,
            algorithm,
            trial,
            problems[trial],
            x0,
            x1,
            cfg.max_iter,
            cfg.stop_tol,
        )

    workers = _worker_count(len(tasks))
    if workers == 1 or len(tasks) == 1:
        chunks = [execute(task) for task in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(execute, tasks))
    return [row for chunk in chunks for row in chunk]


# ---------------------------------------------------------------------------
# CSV persistence
# ---------------------------------------------------------------------------


def _format_float(value: float) -> str:
    return f"{value:.17g}"


def _serialize(row: ResultRow) -> list[str]:
    error_cell = FAILED_SENTINEL if math.isnan(row.error) else _format_float(row.error)
    return [
        row.problem,
        row.algorithm,
        str(row.trial),
        str(row.iter),
        error_cell,
        _format_float(row.residual),
        _format_float(row.lam),
        _format_float(row.theta),
        _format_float(row.elapsed_ms),
    ]


def write_csv(rows: Iterable[ResultRow], path: str) -> None:
    """Write rows under the fixed header; floats keep 17 significant digits."""
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for row in rows:
                writer.writerow(_serialize(row))
    except OSError as exc:
        raise OSError(f"cannot write CSV {path!r}: {exc}") from exc


def read_csv(path: str) -> list[ResultRow]:
    """Parse a results file, insisting on the exact schema."""
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise OSError(f"cannot read CSV {path!r}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file; expected header {','.join(CSV_HEADER)}")
        if tuple(header) != CSV_HEADER:
            raise ValueError(
                f"{path}: wrong header {','.join(header)!r}; "
                f"expected {','.join(CSV_HEADER)!r}"
            )
        rows = []
        for line_no, cells in enumerate(reader, start=2):
            if len(cells) != len(CSV_HEADER):
                raise ValueError(
                    f"{path}:{line_no}: expected {len(CSV_HEADER)} fields, got {len(cells)}"
                )
            try:
                error = math.nan if cells[4] == FAILED_SENTINEL else float(cells[4])
                rows.append(
                    ResultRow(
                        problem=cells[0],
                        algorithm=cells[1],
                        trial=int(cells[2]),
                        iter=int(cells[3]),
                        error=error,
                        residual=float(cells[5]),
                        lam=float(cells[6]),
                        theta=float(cells[7]),
                        elapsed_ms=float(cells[8]),
                    )
                )
            except ValueError as exc:
                raise ValueError(f"{path}:{line_no}: malformed row: {exc}") from exc
    return rows
