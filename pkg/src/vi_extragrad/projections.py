"""Exact metric projections onto boxes, balls, halfspaces and the whole space.

Every set here admits a closed-form nearest-point map in the weighted inner
product, so no iterative projection subroutine is needed anywhere in the
library.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .hilbert import HVec, _check_compatible, _fresh, combine, inner, norm

__all__ = [
    "Box",
    "Ball",
    "Halfspace",
    "WholeSpace",
    "FeasibleSet",
    "project",
    "contains",
    "halfspace_from_subgradient_step",
]

# Below this normal length a halfspace degenerates to the whole space; keeps
# the projection formula away from dividing by ||a||^2 ~ 0.
ZERO_NORMAL_TOL = 1e-14


@dataclass(frozen=True)
class Box:
    """Coordinatewise bounds ``lo <= x <= hi``."""

    lo: HVec
    hi: HVec

    def __post_init__(self):
        _check_compatible(self.lo, self.hi)
        if np.any(self.lo.coords > self.hi.coords):
            raise ValueError("box requires lo <= hi coordinatewise")


@dataclass(frozen=True)
class Ball:
    """Closed ball ``||x - center|| <= radius`` in the weighted norm."""

    center: HVec
    radius: float

    def __post_init__(self):
        if not (np.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError("ball radius must be positive and finite")


@dataclass(frozen=True)
class Halfspace:
    """Set ``{u : <a, u - anchor> <= 0}``; a zero normal means the whole space."""

    a: HVec
    anchor: HVec

    def __post_init__(self):
        _check_compatible(self.a, self.anchor)


@dataclass(frozen=True)
class WholeSpace:
    """The unconstrained set; projection is the identity."""


FeasibleSet = Union[Box, Ball, Halfspace, WholeSpace]


def project(set_: FeasibleSet, x: HVec) -> HVec:
    """Nearest point of ``set_`` to ``x`` in the weighted norm."""
    match set_:
        case Box(lo=lo, hi=hi):
            _check_compatible(x, lo)
            return _fresh(np.clip(x.coords, lo.coords, hi.coords), x.weights)
        case Ball(center=center, radius=radius):
            offset = combine(1.0, x, -1.0, center)
            dist = norm(offset)
            if dist <= radius:
                return x
            return combine(1.0, center, radius / dist, offset)
        case Halfspace(a=a, anchor=anchor):
            _check_compatible(x, a)
            nsq = inner(a, a)
            if nsq < ZERO_NORMAL_TOL**2:
                return x
            overshoot = inner(a, combine(1.0, x, -1.0, anchor))
            if overshoot <= 0.0:
                return x
            return combine(1.0, x, -overshoot / nsq, a)
        case WholeSpace():
            return x
    raise TypeError(f"not a feasible set: {set_!r}")


def contains(set_: FeasibleSet, x: HVec, tol: float = 1e-12) -> bool:
    """Membership test with absolute slack ``tol`` on the defining quantity."""
    match set_:
        case Box(lo=lo, hi=hi):
            return bool(
                np.all(x.coords >= lo.coords - tol)
                and np.all(x.coords <= hi.coords + tol)
            )
        case Ball(center=center, radius=radius):
            return norm(combine(1.0, x, -1.0, center)) <= radius + tol
        case Halfspace(a=a, anchor=anchor):
            if norm(a) < ZERO_NORMAL_TOL:
                return True
            return inner(a, combine(1.0, x, -1.0, anchor)) <= tol
        case WholeSpace():
            return True
    raise TypeError(f"not a feasible set: {set_!r}")


def halfspace_from_subgradient_step(
    w: HVec, lam: float, aw: HVec, y: HVec
) -> Halfspace:
    """Halfspace through ``y`` with outward normal ``w - lam*aw - y``.

    When ``y`` is the projection of ``w - lam*aw`` onto a convex set C, the
    returned halfspace contains C, which is what makes the cheap second
    projection of the subgradient-extragradient family valid.
    """
    if not lam > 0.0:
        raise ValueError("lam must be positive")
    a = combine(1.0, combine(1.0, w, -lam, aw), -1.0, y)
    return Halfspace(a=a, anchor=y)
