"""Weighted-inner-product vector arithmetic.

One representation covers both R^m (unit quadrature weights) and the
uniform-grid discretisation of L^2([0,1]) (composite trapezoidal weights),
so solvers and feasible sets never need to know which space they run in.
All values are immutable and every operation is a pure function; non-finite
coordinates are rejected eagerly instead of being allowed to propagate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HVec",
    "Grid",
    "inner",
    "norm",
    "combine",
    "trapezoid_weights",
    "from_coords",
    "grid_vector",
]


def _readonly_f64(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class HVec:
    """A point of the (discretised) Hilbert space.

    ``coords`` holds the coordinate values and ``weights`` the strictly
    positive quadrature weights defining ``<x, y> = sum_i w_i x_i y_i``.
    Unit weights give the plain Euclidean inner product on R^m.
    """

    coords: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        coords = _readonly_f64(self.coords)
        weights = _readonly_f64(self.weights)
        if coords.ndim != 1 or weights.ndim != 1:
            raise ValueError("coords and weights must be one-dimensional")
        if coords.shape != weights.shape:
            raise ValueError(
                f"coords/weights length mismatch: {coords.size} vs {weights.size}"
            )
        if coords.size < 1:
            raise ValueError("vector must have dimension >= 1")
        if not np.all(np.isfinite(coords)):
            raise ValueError("non-finite coordinate")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0.0):
            raise ValueError("weights must be finite and strictly positive")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return self.coords.size

    def with_coords(self, values) -> "HVec":
        """New vector in the same space (same weights)."""
        return HVec(values, self.weights)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HVec)
            and np.array_equal(self.coords, other.coords)
            and np.array_equal(self.weights, other.weights)
        )

    def __repr__(self) -> str:
        return f"HVec(dim={self.dim}, coords={self.coords!r})"


def from_coords(values, weights=None) -> HVec:
    """Build an HVec; unit weights (the R^m inner product) when omitted."""
    coords = np.asarray(values, dtype=np.float64)
    if weights is None:
        weights = np.ones(coords.shape)
    return HVec(coords, weights)


def _fresh(coords: np.ndarray, weights: np.ndarray) -> HVec:
    """Internal constructor for arrays this module just allocated.

    Skips copying and the weight checks (the weights array comes from an
    already validated vector) but keeps the eager non-finite rejection.
    """
    if not np.all(np.isfinite(coords)):
        raise ValueError("non-finite coordinate")
    coords.setflags(write=False)
    vec = object.__new__(HVec)
    object.__setattr__(vec, "coords", coords)
    object.__setattr__(vec, "weights", weights)
    return vec


def _check_compatible(x: HVec, y: HVec) -> None:
    # identity covers the common case of vectors from the same space object
    if x.weights is not y.weights:
        if x.dim != y.dim:
            raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")
        if not np.array_equal(x.weights, y.weights):
            raise ValueError("quadrature weight mismatch")


def inner(x: HVec, y: HVec) -> float:
    """Weighted inner product sum_i w_i x_i y_i."""
    _check_compatible(x, y)
    return float(np.dot(x.weights * x.coords, y.coords))


def norm(x: HVec) -> float:
    """Norm induced by :func:`inner`."""
    return math.sqrt(max(inner(x, x), 0.0))


def combine(a: float, x: HVec, b: float, y: HVec) -> HVec:
    """Linear combination ``a*x + b*y``; weights carried through unchanged."""
    _check_compatible(x, y)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("non-finite combination coefficient")
    return _fresh(a * x.coords + b * y.coords, x.weights)


@dataclass(frozen=True)
class Grid:
    """Uniform partition of [0, 1] including both endpoints."""

    n_points: int

    def __post_init__(self):
        if self.n_points < 2:
            raise ValueError("grid needs at least two points")

    @property
    def h(self) -> float:
        return 1.0 / (self.n_points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.n_points)


def trapezoid_weights(grid: Grid) -> np.ndarray:
    """Composite trapezoidal weights: h/2 at the endpoints, h inside."""
    w = np.full(grid.n_points, grid.h)
    w[0] = w[-1] = grid.h / 2.0
    return w


def grid_vector(grid: Grid, values) -> HVec:
    """Vector in the trapezoid-discretised L^2([0,1]) space of ``grid``."""
    return HVec(values, trapezoid_weights(grid))
