"""Tests for the weighted vector arithmetic."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vi_extragrad.hilbert import (
    Grid,
    HVec,
    combine,
    from_coords,
    grid_vector,
    inner,
    norm,
    trapezoid_weights,
)


def test_inner_orthogonal_axes():
    assert inner(from_coords([1.0, 0.0]), from_coords([0.0, 1.0])) == 0.0


def test_inner_single_coordinate_square():
    x = from_coords([2.0])
    assert inner(x, x) == 4.0


def test_inner_constant_function_trapezoid():
    # integral of 1 over [0,1] via the 3-point trapezoid rule
    one = grid_vector(Grid(3), np.ones(3))
    assert np.allclose(one.weights, [0.25, 0.5, 0.25])
    assert inner(one, one) == pytest.approx(1.0, rel=1e-15)


def test_norm_euclidean():
    assert norm(from_coords([3.0, 4.0])) == 5.0


def test_norm_zero_vector():
    assert norm(grid_vector(Grid(5), np.zeros(5))) == 0.0


@pytest.mark.parametrize("n", [2, 5, 101])
def test_norm_constant_two(n):
    # sqrt of the integral of 4 over [0,1]
    two = grid_vector(Grid(n), np.full(n, 2.0))
    assert norm(two) == pytest.approx(2.0, rel=1e-12)


def test_combine_identity():
    x = from_coords([1.5, -2.0])
    y = from_coords([9.0, 9.0])
    assert combine(1.0, x, 0.0, y) == x


def test_combine_midpoint():
    out = combine(0.5, from_coords([2.0, 0.0]), 0.5, from_coords([0.0, 2.0]))
    assert np.array_equal(out.coords, [1.0, 1.0])


def test_combine_self_cancellation():
    x = from_coords([1.0, 1.0])
    assert np.array_equal(combine(1.0, x, -1.0, x).coords, [0.0, 0.0])


def test_trapezoid_weights_two_points():
    assert np.array_equal(trapezoid_weights(Grid(2)), [0.5, 0.5])


def test_trapezoid_weights_three_points():
    assert np.array_equal(trapezoid_weights(Grid(3)), [0.25, 0.5, 0.25])


@pytest.mark.parametrize("n", [2, 3, 11, 101, 1000])
def test_trapezoid_weights_sum_to_one(n):
    assert trapezoid_weights(Grid(n)).sum() == pytest.approx(1.0, rel=1e-13)


def test_grid_invariants():
    g = Grid(11)
    assert g.nodes[0] == 0.0 and g.nodes[-1] == 1.0
    assert np.all(np.diff(g.nodes) > 0)
    assert g.h == pytest.approx(0.1)
    with pytest.raises(ValueError):
        Grid(1)


def test_trapezoid_norm_converges_quadratically():
    # norm of f(t) = t approaches 1/sqrt(3) with O(h^2) error
    errors = []
    for n in (11, 101, 1001):
        g = Grid(n)
        f = grid_vector(g, g.nodes)
        errors.append(abs(norm(f) - 1.0 / math.sqrt(3.0)))
    assert errors[0] > errors[1] > errors[2]
    assert 50.0 < errors[0] / errors[1] < 200.0
    assert 50.0 < errors[1] / errors[2] < 200.0


def test_rejects_nonfinite_and_bad_weights():
    with pytest.raises(ValueError):
        from_coords([1.0, math.nan])
    with pytest.raises(ValueError):
        from_coords([1.0, math.inf])
    with pytest.raises(ValueError):
        HVec([1.0], [0.0])
    with pytest.raises(ValueError):
        HVec([1.0], [-1.0])
    with pytest.raises(ValueError):
        HVec([], [])


def test_mismatch_is_usage_error():
    x = from_coords([1.0, 2.0])
    y = from_coords([1.0])
    with pytest.raises(ValueError):
        inner(x, y)
    z = HVec([1.0, 2.0], [0.5, 0.5])
    with pytest.raises(ValueError):
        combine(1.0, x, 1.0, z)


def test_vectors_are_immutable():
    x = from_coords([1.0, 2.0])
    with pytest.raises(ValueError):
        x.coords[0] = 5.0


def test_cauchy_schwarz_randomized():
    rng = np.random.default_rng(7)
    for _ in range(300):
        d = rng.integers(1, 8)
        w = rng.uniform(0.1, 3.0, d)
        x = HVec(rng.standard_normal(d) * 10.0, w)
        y = HVec(rng.standard_normal(d) * 10.0, w)
        assert abs(inner(x, y)) <= norm(x) * norm(y) * (1.0 + 1e-12) + 1e-12


def test_convex_combination_norm_identity_randomized():
    # ||a x + (1-a) y||^2 + a (1-a) ||x - y||^2 == a ||x||^2 + (1-a) ||y||^2
    rng = np.random.default_rng(11)
    for _ in range(300):
        d = rng.integers(1, 8)
        w = rng.uniform(0.1, 3.0, d)
        x = HVec(rng.standard_normal(d) * 5.0, w)
        y = HVec(rng.standard_normal(d) * 5.0, w)
        a = rng.random()
        lhs = norm(combine(a, x, 1.0 - a, y)) ** 2 + a * (1.0 - a) * norm(
            combine(1.0, x, -1.0, y)
        ) ** 2
        rhs = a * norm(x) ** 2 + (1.0 - a) * norm(y) ** 2
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


finite_coords = st.lists(
    st.floats(min_value=-100.0, max_value=100.0, allow_nan=False),
    min_size=1,
    max_size=6,
)


@settings(deadline=None, max_examples=200)
@given(finite_coords, st.data())
def test_inner_symmetric(coords, data):
    y_coords = data.draw(
        st.lists(
            st.floats(min_value=-100.0, max_value=100.0, allow_nan=False),
            min_size=len(coords),
            max_size=len(coords),
        )
    )
    x = from_coords(coords)
    y = from_coords(y_coords)
    assert inner(x, y) == pytest.approx(inner(y, x), rel=1e-12, abs=1e-12)


@settings(deadline=None, max_examples=200)
@given(
    finite_coords,
    st.floats(min_value=-10.0, max_value=10.0),
    st.floats(min_value=-10.0, max_value=10.0),
    st.data(),
)
def test_inner_bilinear_in_first_argument(coords, a, b, data):
    d = len(coords)
    draw_same = st.lists(
        st.floats(min_value=-100.0, max_value=100.0, allow_nan=False),
        min_size=d,
        max_size=d,
    )
    x = from_coords(coords)
    y = from_coords(data.draw(draw_same))
    z = from_coords(data.draw(draw_same))
    lhs = inner(combine(a, x, b, y), z)
    rhs = a * inner(x, z) + b * inner(y, z)
    bound = 1e-9 * (abs(a) * norm(x) * norm(z) + abs(b) * norm(y) * norm(z) + 1.0)
    assert abs(lhs - rhs) <= bound
