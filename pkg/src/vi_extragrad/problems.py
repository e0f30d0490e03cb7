"""Benchmark variational-inequality instances with known solutions.

Three instances are provided:

* ``ex1`` - the gradient of a smooth box-constrained objective on R^2,
* ``ex2`` - a random positive-semidefinite linear operator on R^m,
* ``ex3`` - an integral operator on the unit ball of discretised L^2([0,1]).

Each instance carries its feasible set, the known solution and a claimed
Lipschitz constant.  Empirical validators for the monotonicity and Lipschitz
assumptions live here too, so the claims are checked rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .hilbert import (
    Grid,
    HVec,
    _fresh,
    combine,
    from_coords,
    grid_vector,
    inner,
    norm,
    trapezoid_weights,
)
from .projections import Ball, Box, FeasibleSet, Halfspace, WholeSpace, project

__all__ = [
    "ProblemInstance",
    "MonotonicityReport",
    "GradientCheckReport",
    "make_example1",
    "make_example2",
    "make_example3",
    "check_monotone",
    "estimate_lipschitz",
    "check_example1_gradient",
    "example1_objective",
    "spectral_norm",
    "solution_residual",
]

MONOTONE_TOL = -1e-10


@dataclass(frozen=True)
class ProblemInstance:
    """Operator, feasible set and known solution of one benchmark problem.

    The factory functions validate the fixed-point residual of ``x_star``;
    instances built directly (e.g. test fixtures) skip that check.
    """

    name: str
    dim: int
    apply_A: Callable[[HVec], HVec]
    set: FeasibleSet
    x_star: HVec
    L_claimed: float
    seed: int = 0
    grid: Optional[Grid] = None


def solution_residual(p: ProblemInstance) -> float:
    """Fixed-point residual ``||x* - P_C(x* - A x*)||`` of the stored solution."""
    step = combine(1.0, p.x_star, -1.0, p.apply_A(p.x_star))
    return norm(combine(1.0, p.x_star, -1.0, project(p.set, step)))


def _require_residual(p: ProblemInstance, tol: float) -> ProblemInstance:
    res = solution_residual(p)
    if res > tol:
        raise ValueError(
            f"{p.name}: stored solution fails the fixed-point check "
            f"(residual {res:.3e} > {tol:.3e})"
        )
    return p


def example1_objective(coords) -> float:
    """Objective whose gradient defines the ``ex1`` operator."""
    x1, x2 = float(coords[0]), float(coords[1])
    return 1.0 + x1 * x1 - math.exp(-x2 * x2)


def _example1_operator(x: HVec) -> HVec:
    x1, x2 = x.coords
    return _fresh(
        np.array([2.0 * x1, 2.0 * x2 * math.exp(-x2 * x2)]), x.weights
    )


def make_example1() -> ProblemInstance:
    """2-d gradient system on the box [-5, 5]^2 with solution at the origin."""
    ones = np.ones(2)
    box = Box(from_coords(-5.0 * ones), from_coords(5.0 * ones))
    p = ProblemInstance(
        name="ex1",
        dim=2,
        apply_A=_example1_operator,
        set=box,
        x_star=from_coords(np.zeros(2)),
        L_claimed=2.0,
    )
    return _require_residual(p, 1e-8 * (1.0 + norm(p.x_star)))


def spectral_norm(mat, max_iter: int = 200, rtol: float = 1e-12) -> float:
    """Largest singular value by power iteration on ``mat.T @ mat``."""
    mat = np.asarray(mat, dtype=np.float64)
    gram = mat.T @ mat
    v = np.ones(gram.shape[0]) / math.sqrt(gram.shape[0])
    est = 0.0
    for _ in range(max_iter):
        w = gram @ v
        length = float(np.linalg.norm(w))
        if length == 0.0:
            return 0.0
        v = w / length
        new_est = float(v @ gram @ v)
        if abs(new_est - est) <= rtol * max(abs(new_est), 1.0):
            est = new_est
            break
        est = new_est
    return math.sqrt(max(est, 0.0))


def _example2_matrices(m: int, seed: int):
    """Random PSD-plus-skew system matrix and its parts (N, U, D, M)."""
    rng = np.random.default_rng(seed)
    n_mat = rng.uniform(0.0, 2.0, size=(m, m))
    upper = np.zeros((m, m))
    iu = np.triu_indices(m, k=1)
    upper[iu] = rng.uniform(-2.0, 2.0, size=iu[0].size)
    u_mat = upper - upper.T
    d_mat = np.diag(rng.uniform(0.0, 2.0, size=m))
    m_mat = n_mat @ n_mat.T + u_mat + d_mat
    return n_mat, u_mat, d_mat, m_mat


def make_example2(m: int = 5, seed: int = 0) -> ProblemInstance:
    """Random linear operator ``x -> Mx`` on the box [-2, 5]^m, solution 0.

    ``M = N N^T + U + D`` with N and the diagonal of D uniform in [0, 2] and
    U skew-symmetric with entries in [-2, 2], so M is positive semidefinite
    along the symmetric part.  Deterministic for a fixed seed.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    _, _, _, m_mat = _example2_matrices(m, seed)
    box = Box(from_coords(np.full(m, -2.0)), from_coords(np.full(m, 5.0)))

    def apply(x: HVec) -> HVec:
        return x.with_coords(m_mat @ x.coords)

    p = ProblemInstance(
        name="ex2",
        dim=m,
        apply_A=apply,
        set=box,
        x_star=from_coords(np.zeros(m)),
        L_claimed=spectral_norm(m_mat),
        seed=seed,
    )
    return _require_residual(p, 1e-8 * (1.0 + norm(p.x_star)))


def make_example3(grid: Grid) -> ProblemInstance:
    """Integral-operator problem on the unit ball of discretised L^2([0,1]).

    The operator is ``(Ax)(t) = x(t) - int_0^1 G(t,s) cos(x(s)) ds + h(t)``
    with the rank-one kernel ``G(t,s) = c * (t e^t)(s e^s)`` and
    ``h(t) = c * t e^t`` for ``c = 2 / (e sqrt(e^2 - 1))``; the zero function
    solves the problem exactly since ``int_0^1 s e^s ds = 1``.  Quadrature is
    the grid's composite trapezoidal rule, so ``A(0)`` is O(h^2) rather than
    exactly zero and the solution check is relaxed accordingly.
    """
    nodes = grid.nodes
    weights = trapezoid_weights(grid)
    scale = 2.0 / (math.e * math.sqrt(math.e**2 - 1.0))
    gamma = nodes * np.exp(nodes)
    h_vec = scale * gamma
    kernel_rows = scale * np.outer(gamma, gamma) * weights[None, :]

    def apply(x: HVec) -> HVec:
        return x.with_coords(x.coords - kernel_rows @ np.cos(x.coords) + h_vec)

    zero = grid_vector(grid, np.zeros(grid.n_points))
    p = ProblemInstance(
        name="ex3",
        dim=grid.n_points,
        apply_A=apply,
        set=Ball(center=zero, radius=1.0),
        x_star=zero,
        L_claimed=2.0,
        grid=grid,
    )
    return _require_residual(p, 10.0 * grid.h**2)


# ---------------------------------------------------------------------------
# Empirical validators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonotonicityReport:
    passed: bool
    min_inner: float
    n_samples: int
    witness_x: HVec = field(repr=False, default=None)
    witness_y: HVec = field(repr=False, default=None)


@dataclass(frozen=True)
class GradientCheckReport:
    passed: bool
    max_rel_error: float
    n_points: int


def _region_scale(set_: FeasibleSet) -> float:
    match set_:
        case Box(lo=lo, hi=hi):
            return float(np.max(hi.coords - lo.coords)) / 2.0
        case Ball(radius=radius):
            return float(radius)
        case Halfspace(anchor=anchor):
            return 1.0 + norm(anchor)
        case WholeSpace():
            return 1.0
    raise TypeError(f"not a feasible set: {set_!r}")


def _sample_region(set_: FeasibleSet, weights: np.ndarray, rng) -> HVec:
    """Draw a point from the feasible set inflated by a factor of two.

    Iterates of the solvers are not all projected, so the validators sample
    beyond the set itself.
    """
    match set_:
        case Box(lo=lo, hi=hi):
            center = 0.5 * (lo.coords + hi.coords)
            halfwidth = 0.5 * (hi.coords - lo.coords)
            coords = center + 2.0 * halfwidth * rng.uniform(-1.0, 1.0, lo.dim)
            return HVec(coords, weights)
        case Ball(center=center, radius=radius):
            direction = HVec(rng.standard_normal(center.dim), weights)
            length = norm(direction)
            if length == 0.0:
                return center
            r = 2.0 * radius * rng.random() ** (1.0 / center.dim)
            return combine(1.0, center, r / length, direction)
        case Halfspace(a=a, anchor=anchor):
            v = combine(
                1.0, anchor, 2.0, HVec(rng.standard_normal(anchor.dim), weights)
            )
            overshoot = inner(a, combine(1.0, v, -1.0, anchor))
            nsq = inner(a, a)
            if overshoot > 0.0 and nsq > 0.0:
                v = combine(1.0, v, -2.0 * overshoot / nsq, a)
            return v
        case WholeSpace():
            return HVec(2.0 * rng.standard_normal(len(weights)), weights)
    raise TypeError(f"not a feasible set: {set_!r}")


def check_monotone(
    p: ProblemInstance, n_samples: int = 1000, seed: int = 0
) -> MonotonicityReport:
    """Sample pairs around the feasible set and report min <Ax - Ay, x - y>."""
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    rng = np.random.default_rng(seed)
    weights = p.x_star.weights
    best = math.inf
    wx = wy = None
    for _ in range(n_samples):
        x = _sample_region(p.set, weights, rng)
        y = _sample_region(p.set, weights, rng)
        value = inner(
            combine(1.0, p.apply_A(x), -1.0, p.apply_A(y)),
            combine(1.0, x, -1.0, y),
        )
        if value < best:
            best, wx, wy = value, x, y
    return MonotonicityReport(
        passed=best >= MONOTONE_TOL,
        min_inner=best,
        n_samples=n_samples,
        witness_x=wx,
        witness_y=wy,
    )


def estimate_lipschitz(
    p: ProblemInstance, n_samples: int = 1000, seed: int = 0
) -> float:
    """Lower bound on the Lipschitz constant from sampled difference quotients.

    Pairs mix region-scale separations, coordinate-axis steps and small random
    directions; the largest ratio ``||Ax - Ay|| / ||x - y||`` is returned.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    rng = np.random.default_rng(seed)
    weights = p.x_star.weights
    step = 1e-3 * max(_region_scale(p.set), 1.0)
    best = 0.0

    def ratio(x: HVec, y: HVec) -> float:
        gap = norm(combine(1.0, x, -1.0, y))
        if gap <= 0.0:
            return 0.0
        return norm(combine(1.0, p.apply_A(x), -1.0, p.apply_A(y))) / gap

    for k in range(n_samples):
        x = _sample_region(p.set, weights, rng)
        best = max(best, ratio(x, _sample_region(p.set, weights, rng)))
        axis = np.zeros(p.dim)
        axis[k % p.dim] = step
        best = max(best, ratio(x, combine(1.0, x, 1.0, HVec(axis, weights))))
        direction = HVec(rng.standard_normal(p.dim), weights)
        length = norm(direction)
        if length > 0.0:
            best = max(best, ratio(x, combine(1.0, x, step / length, direction)))
    return best


def check_example1_gradient(
    n_points: int = 100, seed: int = 0, step: float = 1e-5
) -> GradientCheckReport:
    """Compare the ex1 operator against central differences of its objective.

    Error is measured as ``||A(x) - fd|| / (1 + ||fd||)`` so points where the
    gradient vanishes do not blow up the quotient.
    """
    p = make_example1()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_points):
        coords = rng.uniform(-5.0, 5.0, size=2)
        fd = np.empty(2)
        for i in range(2):
            bump = np.zeros(2)
            bump[i] = step
            fd[i] = (
                example1_objective(coords + bump)
                - example1_objective(coords - bump)
            ) / (2.0 * step)
        grad = p.apply_A(from_coords(coords)).coords
        err = float(np.linalg.norm(grad - fd) / (1.0 + np.linalg.norm(fd)))
        worst = max(worst, err)
    return GradientCheckReport(passed=worst <= 1e-6, max_rel_error=worst, n_points=n_points)
