"""Solvers and benchmarks for monotone, Lipschitz variational inequalities."""

from .harness import (
    CSV_HEADER,
    ExperimentConfig,
    PROBLEMS,
    ResultRow,
    build_initial_points,
    build_problem,
    paper_schedules,
    read_csv,
    run_experiment,
    write_csv,
)
from .hilbert import (
    Grid,
    HVec,
    combine,
    from_coords,
    grid_vector,
    inner,
    norm,
    trapezoid_weights,
)
from .problems import (
    GradientCheckReport,
    MonotonicityReport,
    ProblemInstance,
    check_example1_gradient,
    check_monotone,
    estimate_lipschitz,
    make_example1,
    make_example2,
    make_example3,
    solution_residual,
    spectral_norm,
)
from .projections import (
    Ball,
    Box,
    FeasibleSet,
    Halfspace,
    WholeSpace,
    contains,
    halfspace_from_subgradient_step,
    project,
)
from .solvers import (
    ALGORITHMS,
    IterationRecord,
    IterationTrace,
    Schedules,
    SolverFailure,
    SolverState,
    StepInternals,
    inertia_theta,
    run,
    step_size_update,
)

__version__ = "0.1.0"
