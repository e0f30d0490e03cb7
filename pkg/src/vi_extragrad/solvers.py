"""Extragradient-family solvers for monotone variational inequalities.

Seven single-step schemes run behind one driver:

==========  =================================================================
key         update
==========  =================================================================
misegm      inertial extrapolation, projected trial point, halfspace
            correction projection, Mann averaging, self-adaptive step size
mitegm      as ``misegm`` but with an explicit forward-backward-forward
            correction instead of the second projection
masegm      ``misegm`` with the extrapolation disabled
mategm      ``mitegm`` with the extrapolation disabled
hsegm       fixed step 0.99/L, halfspace correction, anchored averaging
            toward the initial point
vsegm       Armijo backtracking step size, halfspace correction, viscosity
            averaging toward a contraction of the current iterate
tvegm       self-adaptive step size, explicit correction, viscosity averaging
==========  =================================================================

A step consumes and returns an immutable :class:`SolverState` plus an
:class:`IterationRecord`; :func:`run` owns iteration bookkeeping, timing and
failure handling.  The self-adaptive step size never increases and stays
above ``min(lambda1, mu / L)``, which is what lets the adaptive schemes run
without knowing the Lipschitz constant.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Callable, Optional

from .hilbert import HVec, _check_compatible, combine, norm
from .problems import ProblemInstance
from .projections import halfspace_from_subgradient_step, project

__all__ = [
    "ALGORITHMS",
    "Schedules",
    "SolverState",
    "IterationRecord",
    "IterationTrace",
    "StepInternals",
    "SolverFailure",
    "inertia_theta",
    "step_size_update",
    "misegm_step",
    "mitegm_step",
    "masegm_step",
    "mategm_step",
    "hsegm_step",
    "vsegm_step",
    "tvegm_step",
    "run",
]

ALGORITHMS = ("misegm", "mitegm", "masegm", "mategm", "hsegm", "vsegm", "tvegm")

# Branch threshold standing in for the exact equality tests "x_n = x_{n-1}"
# and "A w_n = A y_n"; prevents overflow in the two quotient rules.
DISPLACEMENT_TOL = 1e-14


def default_alpha(n: int) -> float:
    return 1.0 / (n + 1)


def default_beta(n: int) -> float:
    return 0.5 * (1.0 - default_alpha(n))


def default_eps(n: int) -> float:
    return 100.0 / (n + 1) ** 2


class SolverFailure(RuntimeError):
    """A run produced non-finite state or a line search could not finish."""

    def __init__(self, message: str, iteration: Optional[int] = None, partial_records=()):
        super().__init__(message)
        self.iteration = iteration
        self.partial_records = tuple(partial_records)


@dataclass(frozen=True)
class Schedules:
    """All schedule parameters of the seven schemes.

    Defaults follow the benchmark settings: ``alpha_n = 1/(n+1)``,
    ``beta_n = 0.5 (1 - alpha_n)``, inertia cap 0.4 with budget
    ``eps_n = 100/(n+1)^2``, initial step 1 and step-size factor ``mu = 0.5``.
    ``stop_tol`` is the residual threshold of the early-exit test; the
    benchmark harness sets it to 0 so runs are stopped by iteration count.
    """

    theta: float = 0.4
    lambda1: float = 1.0
    mu: float = 0.5
    alpha_rule: Callable[[int], float] = default_alpha
    beta_rule: Callable[[int], float] = default_beta
    eps_rule: Callable[[int], float] = default_eps
    contraction_coeff: float = 0.9
    armijo_ell: float = 0.5
    armijo_max_m: int = 60
    stop_tol: float = 1e-12

    def __post_init__(self):
        if self.theta < 0.0:
            raise ValueError("theta must be >= 0")
        if not self.lambda1 > 0.0:
            raise ValueError("lambda1 must be positive")
        if not 0.0 < self.mu < 1.0:
            raise ValueError("mu must lie in (0, 1)")
        if not 0.0 <= self.contraction_coeff < 1.0:
            raise ValueError("contraction_coeff must lie in [0, 1)")
        if not 0.0 < self.armijo_ell < 1.0:
            raise ValueError("armijo_ell must lie in (0, 1)")
        if self.armijo_max_m < 1:
            raise ValueError("armijo_max_m must be at least 1")
        if self.stop_tol < 0.0:
            raise ValueError("stop_tol must be >= 0")

    def alpha_at(self, n: int) -> float:
        alpha = self.alpha_rule(n)
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha_rule({n}) = {alpha} outside (0, 1)")
        return alpha

    def mann_coeffs(self, n: int) -> tuple[float, float]:
        alpha = self.alpha_at(n)
        beta = self.beta_rule(n)
        if not 0.0 < beta < 1.0 - alpha:
            raise ValueError(f"beta_rule({n}) = {beta} outside (0, 1 - alpha)")
        return alpha, beta

    def eps_at(self, n: int) -> float:
        eps = self.eps_rule(n)
        if not eps > 0.0:
            raise ValueError(f"eps_rule({n}) = {eps} must be positive")
        return eps


@dataclass(frozen=True)
class SolverState:
    """Mutable-by-replacement per-run state; one instance per iteration."""

    n: int
    x_curr: HVec
    x_prev: HVec
    lam: float
    anchor_x0: HVec
    last_theta: float = 0.0
    stopped: bool = False
    stop_reason: str = ""


@dataclass(frozen=True)
class IterationRecord:
    """What the trace keeps per iteration.

    ``error`` is the distance of the incoming iterate to the known solution;
    ``residual`` is the trial-point gap that also drives the early exit.
    """

    n: int
    error: float
    lam: float
    theta: float
    residual: float
    elapsed_ns: int = 0


@dataclass(frozen=True)
class StepInternals:
    """Intermediate quantities of one step, exposed for invariant checks."""

    w: HVec
    y: HVec
    z: Optional[HVec]
    aw: Optional[HVec]
    ay: Optional[HVec]
    lam: float
    lam_next: float
    theta: float
    displacement: float
    armijo_rejects: int = 0


@dataclass(frozen=True)
class IterationTrace:
    algorithm: str
    problem: str
    records: tuple[IterationRecord, ...]
    stop_reason: str
    x_final: HVec


def _theta_from_displacement(displacement: float, eps_n: float, theta_cap: float) -> float:
    if not eps_n > 0.0:
        raise ValueError("eps_n must be positive")
    if theta_cap < 0.0:
        raise ValueError("theta_cap must be >= 0")
    if displacement <= DISPLACEMENT_TOL:
        return theta_cap
    return min(eps_n / displacement, theta_cap)


def inertia_theta(x_curr: HVec, x_prev: HVec, eps_n: float, theta_cap: float) -> float:
    """Extrapolation coefficient ``min(eps_n / ||x_n - x_{n-1}||, cap)``.

    Falls back to the cap itself when the iterates coincide, so the product
    ``theta_n ||x_n - x_{n-1}||`` never exceeds ``eps_n``.
    """
    return _theta_from_displacement(
        norm(combine(1.0, x_curr, -1.0, x_prev)), eps_n, theta_cap
    )


def step_size_update(
    lam: float, mu: float, w: HVec, y: HVec, aw: HVec, ay: HVec
) -> float:
    """Self-adaptive rule ``min(mu ||w - y|| / ||Aw - Ay||, lam)``.

    Keeps the current value when the operator gap vanishes; the result never
    exceeds ``lam``, so the step-size sequence is nonincreasing.
    """
    if not lam > 0.0:
        raise ValueError("lam must be positive")
    if not 0.0 < mu < 1.0:
        raise ValueError("mu must lie in (0, 1)")
    gap = norm(combine(1.0, aw, -1.0, ay))
    if gap <= DISPLACEMENT_TOL:
        return lam
    return min(mu * norm(combine(1.0, w, -1.0, y)) / gap, lam)


def _error_to_solution(state: SolverState, problem: ProblemInstance) -> float:
    return norm(combine(1.0, state.x_curr, -1.0, problem.x_star))


def _emit(probe, **kwargs) -> None:
    if probe is not None:
        probe(StepInternals(**kwargs))


def _extragradient_step(
    state: SolverState,
    problem: ProblemInstance,
    sched: Schedules,
    *,
    inertial: bool,
    subgradient: bool,
    probe=None,
) -> tuple[SolverState, IterationRecord]:
    """Shared core of the four Mann-averaged adaptive schemes.

    ``subgradient`` selects the halfspace correction projection; otherwise the
    correction is the explicit ``z = y - lam (Ay - Aw)``.
    """
    n = state.n
    alpha, beta = sched.mann_coeffs(n)
    step_back = combine(1.0, state.x_curr, -1.0, state.x_prev)
    displacement = norm(step_back)
    theta_n = (
        _theta_from_displacement(displacement, sched.eps_at(n), sched.theta)
        if inertial
        else 0.0
    )
    # w = x + theta (x - x_prev); written this way w equals x exactly when the
    # iterates coincide, matching the residual test at a fixed point
    w = combine(1.0, state.x_curr, theta_n, step_back)
    aw = problem.apply_A(w)
    y = project(problem.set, combine(1.0, w, -state.lam, aw))
    residual = norm(combine(1.0, w, -1.0, y))
    record = IterationRecord(
        n=n,
        error=_error_to_solution(state, problem),
        lam=state.lam,
        theta=theta_n,
        residual=residual,
    )
    if residual <= sched.stop_tol:
        _emit(
            probe,
            w=w, y=y, z=None, aw=aw, ay=None,
            lam=state.lam, lam_next=state.lam,
            theta=theta_n, displacement=displacement,
        )
        next_state = replace(
            state, x_curr=y, last_theta=theta_n, stopped=True, stop_reason="residual"
        )
        return next_state, record
    ay = problem.apply_A(y)
    if subgradient:
        halfspace = halfspace_from_subgradient_step(w, state.lam, aw, y)
        z = project(halfspace, combine(1.0, w, -state.lam, ay))
    else:
        z = combine(1.0, y, -state.lam, combine(1.0, ay, -1.0, aw))
    x_next = combine(1.0 - alpha - beta, w, beta, z)
    lam_next = step_size_update(state.lam, sched.mu, w, y, aw, ay)
    _emit(
        probe,
        w=w, y=y, z=z, aw=aw, ay=ay,
        lam=state.lam, lam_next=lam_next,
        theta=theta_n, displacement=displacement,
    )
    next_state = replace(
        state,
        n=n + 1,
        x_curr=x_next,
        x_prev=state.x_curr,
        lam=lam_next,
        last_theta=theta_n,
    )
    return next_state, record


def misegm_step(state, problem, sched, *, probe=None):
    """Inertial Mann-averaged subgradient-extragradient step."""
    return _extragradient_step(
        state, problem, sched, inertial=True, subgradient=True, probe=probe
    )


def mitegm_step(state, problem, sched, *, probe=None):
    """Inertial Mann-averaged forward-backward-forward step."""
    return _extragradient_step(
        state, problem, sched, inertial=True, subgradient=False, probe=probe
    )


def masegm_step(state, problem, sched, *, probe=None):
    """As :func:`misegm_step` with the extrapolation disabled (w = x)."""
    return _extragradient_step(
        state, problem, sched, inertial=False, subgradient=True, probe=probe
    )


def mategm_step(state, problem, sched, *, probe=None):
    """As :func:`mitegm_step` with the extrapolation disabled (w = x)."""
    return _extragradient_step(
        state, problem, sched, inertial=False, subgradient=False, probe=probe
    )


def hsegm_step(state, problem, sched, *, probe=None):
    """Fixed-step halfspace scheme anchored at the initial iterate.

    The step size is whatever the run was initialised with (0.99/L in the
    benchmark configuration) and never changes.
    """
    n = state.n
    alpha = sched.alpha_at(n)
    x = state.x_curr
    ax = problem.apply_A(x)
    y = project(problem.set, combine(1.0, x, -state.lam, ax))
    residual = norm(combine(1.0, x, -1.0, y))
    record = IterationRecord(
        n=n,
        error=_error_to_solution(state, problem),
        lam=state.lam,
        theta=0.0,
        residual=residual,
    )
    if residual <= sched.stop_tol:
        _emit(
            probe,
            w=x, y=y, z=None, aw=ax, ay=None,
            lam=state.lam, lam_next=state.lam, theta=0.0, displacement=0.0,
        )
        return replace(state, x_curr=y, stopped=True, stop_reason="residual"), record
    halfspace = halfspace_from_subgradient_step(x, state.lam, ax, y)
    ay = problem.apply_A(y)
    corrected = project(halfspace, combine(1.0, x, -state.lam, ay))
    x_next = combine(alpha, state.anchor_x0, 1.0 - alpha, corrected)
    _emit(
        probe,
        w=x, y=y, z=corrected, aw=ax, ay=ay,
        lam=state.lam, lam_next=state.lam, theta=0.0, displacement=0.0,
    )
    return replace(state, n=n + 1, x_curr=x_next, x_prev=x), record


def vsegm_step(state, problem, sched, *, probe=None):
    """Armijo-backtracking halfspace scheme with viscosity averaging.

    The step size restarts from 1 each iteration and is halved (factor
    ``armijo_ell``) until ``lam ||Ax - Ay|| <= mu ||x - y||`` holds for the
    trial point ``y = P_C(x - lam Ax)``.
    """
    n = state.n
    alpha = sched.alpha_at(n)
    x = state.x_curr
    ax = problem.apply_A(x)
    lam = 1.0
    y = ay = None
    rejects = 0
    for m in range(sched.armijo_max_m + 1):
        lam = sched.armijo_ell**m
        y = project(problem.set, combine(1.0, x, -lam, ax))
        ay = problem.apply_A(y)
        lhs = lam * norm(combine(1.0, ax, -1.0, ay))
        rhs = sched.mu * norm(combine(1.0, x, -1.0, y))
        if lhs <= rhs:
            break
        rejects += 1
    else:
        raise SolverFailure(
            f"Armijo backtracking exhausted {sched.armijo_max_m} halvings; "
            "operator looks non-Lipschitz around the current iterate",
            iteration=n,
        )
    residual = norm(combine(1.0, x, -1.0, y))
    record = IterationRecord(
        n=n,
        error=_error_to_solution(state, problem),
        lam=lam,
        theta=0.0,
        residual=residual,
    )
    if residual <= sched.stop_tol:
        _emit(
            probe,
            w=x, y=y, z=None, aw=ax, ay=ay,
            lam=lam, lam_next=lam, theta=0.0, displacement=0.0,
            armijo_rejects=rejects,
        )
        return (
            replace(state, x_curr=y, lam=lam, stopped=True, stop_reason="residual"),
            record,
        )
    halfspace = halfspace_from_subgradient_step(x, lam, ax, y)
    z = project(halfspace, combine(1.0, x, -lam, ay))
    x_next = combine(alpha * sched.contraction_coeff, x, 1.0 - alpha, z)
    _emit(
        probe,
        w=x, y=y, z=z, aw=ax, ay=ay,
        lam=lam, lam_next=lam, theta=0.0, displacement=0.0,
        armijo_rejects=rejects,
    )
    return replace(state, n=n + 1, x_curr=x_next, x_prev=x, lam=lam), record


def tvegm_step(state, problem, sched, *, probe=None):
    """Adaptive-step forward-backward-forward scheme with viscosity averaging."""
    n = state.n
    alpha = sched.alpha_at(n)
    x = state.x_curr
    ax = problem.apply_A(x)
    y = project(problem.set, combine(1.0, x, -state.lam, ax))
    residual = norm(combine(1.0, x, -1.0, y))
    record = IterationRecord(
        n=n,
        error=_error_to_solution(state, problem),
        lam=state.lam,
        theta=0.0,
        residual=residual,
    )
    if residual <= sched.stop_tol:
        _emit(
            probe,
            w=x, y=y, z=None, aw=ax, ay=None,
            lam=state.lam, lam_next=state.lam, theta=0.0, displacement=0.0,
        )
        return replace(state, x_curr=y, stopped=True, stop_reason="residual"), record
    ay = problem.apply_A(y)
    z = combine(1.0, y, -state.lam, combine(1.0, ay, -1.0, ax))
    x_next = combine(alpha * sched.contraction_coeff, x, 1.0 - alpha, z)
    lam_next = step_size_update(state.lam, sched.mu, x, y, ax, ay)
    _emit(
        probe,
        w=x, y=y, z=z, aw=ax, ay=ay,
        lam=state.lam, lam_next=lam_next, theta=0.0, displacement=0.0,
    )
    return replace(state, n=n + 1, x_curr=x_next, x_prev=x, lam=lam_next), record


STEP_FUNCTIONS = {
    "misegm": misegm_step,
    "mitegm": mitegm_step,
    "masegm": masegm_step,
    "mategm": mategm_step,
    "hsegm": hsegm_step,
    "vsegm": vsegm_step,
    "tvegm": tvegm_step,
}


def run(
    algorithm: str,
    problem: ProblemInstance,
    sched: Schedules,
    x0: HVec,
    x1: HVec,
    max_iter: int,
    stop_tol: Optional[float] = None,
    probe=None,
) -> IterationTrace:
    """Iterate one scheme until ``max_iter`` steps or the residual exit fires.

    ``stop_tol`` overrides the schedule's residual threshold when given.
    Timing covers the solver steps only and is recorded cumulatively.  Failed
    arithmetic is reported as :class:`SolverFailure` carrying the iteration
    index and the records produced so far.
    """
    if algorithm not in STEP_FUNCTIONS:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    _check_compatible(x0, problem.x_star)
    _check_compatible(x1, problem.x_star)
    if stop_tol is not None:
        sched = replace(sched, stop_tol=stop_tol)
    step = STEP_FUNCTIONS[algorithm]
    state = SolverState(
        n=1, x_curr=x1, x_prev=x0, lam=sched.lambda1, anchor_x0=x0
    )
    records: list[IterationRecord] = []
    cumulative_ns = 0
    stop_reason = "max_iter"
    for _ in range(max_iter):
        started = time.perf_counter_ns()
        try:
            state, record = step(state, problem, sched, probe=probe)
        except SolverFailure as exc:
            raise SolverFailure(
                str(exc), iteration=exc.iteration, partial_records=records
            ) from exc
        except ValueError as exc:
            raise SolverFailure(
                f"iteration {state.n}: {exc}",
                iteration=state.n,
                partial_records=records,
            ) from exc
        cumulative_ns += time.perf_counter_ns() - started
        records.append(replace(record, elapsed_ns=cumulative_ns))
        if state.stopped:
            stop_reason = state.stop_reason
            break
    return IterationTrace(
        algorithm=algorithm,
        problem=problem.name,
        records=tuple(records),
        stop_reason=stop_reason,
        x_final=state.x_curr,
    )
