import numpy as np
import pytest
from hypothesis import given, strategies as st

from curvelab.errors import DimensionMismatch, NonFiniteValue
from curvelab.geometry import (
    Polynomial,
    add,
    as_vector,
    cross,
    differentiate,
    dot,
    find_roots,
    multiply,
    norm,
    rot90,
    scale,
)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
vec3 = st.lists(finite, min_size=3, max_size=3).map(np.array)
vec2 = st.lists(finite, min_size=2, max_size=2).map(np.array)


# -- vectors ---------------------------------------------------------------------


def test_dot_examples():
    assert dot((1, 0, 0), (0, 1, 0)) == 0
    assert dot((1, 2, 3), (4, 5, 6)) == 32
    assert dot((2, 3), (2, 3)) == 13


def test_dot_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        dot((1, 2), (1, 2, 3))


def test_cross_examples():
    np.testing.assert_array_equal(cross((1, 0, 0), (0, 1, 0)), (0, 0, 1))
    np.testing.assert_array_equal(cross((1, 2, 3), (1, 2, 3)), (0, 0, 0))
    np.testing.assert_array_equal(cross((1, 2, 3), (4, 5, 6)), (-3, 6, -3))


@pytest.mark.parametrize("u, v", [((1, 0), (0, 1, 0)), ((1, 0), (0, 1))])
def test_cross_rejects_2d(u, v):
    with pytest.raises(DimensionMismatch):
        cross(u, v)


def test_rot90_examples():
    np.testing.assert_array_equal(rot90((1, 0)), (0, 1))
    np.testing.assert_array_equal(rot90((0, 1)), (-1, 0))
    np.testing.assert_array_equal(rot90((3, -2)), (2, 3))
    with pytest.raises(DimensionMismatch):
        rot90((1, 0, 0))


def test_as_vector_validation():
    assert as_vector([1, 2]).shape == (2,)
    with pytest.raises(DimensionMismatch):
        as_vector([1, 2, 3, 4])
    with pytest.raises(DimensionMismatch):
        as_vector([1, 2], dim=3)
    with pytest.raises(NonFiniteValue):
        as_vector([1, np.nan])
    with pytest.raises(NonFiniteValue):
        as_vector([np.inf, 0, 0])


@given(vec3, vec3)
def test_cross_is_orthogonal(u, v):
    w = cross(u, v)
    assert abs(dot(w, u)) <= 1e-12 * norm(u) ** 2 * norm(v)
    assert abs(dot(w, v)) <= 1e-12 * norm(v) ** 2 * norm(u)


@given(vec2)
def test_rot90_twice_negates(v):
    np.testing.assert_array_equal(rot90(rot90(v)), -v)


# -- polynomials -----------------------------------------------------------------


def test_poly_examples():
    assert differentiate([0, 0, 0, 1]) == Polynomial([0, 0, 3])
    assert multiply([1, 1], [1, -1]) == Polynomial([1, 0, -1])
    d = differentiate([5.0])
    assert d.degree == 0 and d.is_zero
    assert add([1, 2], [0, 0, 3]) == Polynomial([1, 2, 3])
    assert scale([1, 2], 3) == Polynomial([3, 6])


def test_trim_and_horner():
    p = Polynomial([1.0, 2.0, 1e-14])
    assert p.degree == 1
    assert Polynomial([0.0, 0.0]).coeffs.tolist() == [0.0]
    q = Polynomial([1, -3, 0, 2])
    t = np.linspace(-2, 2, 9)
    np.testing.assert_allclose(q(t), 1 - 3 * t + 2 * t**3, rtol=0, atol=1e-12)
    assert isinstance(q(0.5), float)


def test_empty_coefficients_rejected():
    with pytest.raises(ValueError):
        Polynomial([])


@given(st.lists(finite, min_size=1, max_size=9), finite)
def test_differentiate_integrate_round_trip(coeffs, c0):
    p = Polynomial(coeffs)
    back = p.derivative().integral(constant=p.coeffs[0])
    n = min(back.coeffs.size, p.coeffs.size)
    tol = 1e-12 * max(p.scale, 1.0)
    np.testing.assert_allclose(back.coeffs[:n], p.coeffs[:n], rtol=0, atol=tol)
    assert p.derivative().integral(constant=c0).coeffs[0] == c0


@given(st.lists(st.floats(-10, 10), min_size=1, max_size=8), st.floats(-3, 3), st.floats(-3, 3))
def test_shift(coeffs, offset, t):
    p = Polynomial(coeffs)
    q = p.shift(offset)
    tol = 1e-9 * max(1.0, p.scale) * (1 + abs(t) + abs(offset)) ** p.degree
    assert abs(q(t) - p(t - offset)) <= tol


# -- root finding ----------------------------------------------------------------


def test_find_roots_examples():
    assert find_roots([0, -1, 1], -1, 2) == pytest.approx([0.0, 1.0], abs=1e-12)
    assert find_roots([1, 0, 1], 0, 1) == []
    p = multiply(multiply([-0.25, 1], [-0.5, 1]), [-0.75, 1])
    assert find_roots(p, 0, 1) == pytest.approx([0.25, 0.5, 0.75], abs=1e-12)


def test_find_roots_open_interval_and_errors():
    assert find_roots([0, -1, 1], 0, 1) == []
    with pytest.raises(ValueError):
        find_roots([1, 1], 1, 1)
    zero = find_roots([0.0], 0, 1)
    assert zero == [] and zero.degenerate


def test_double_root_reported_once():
    p = multiply([-0.3, 1], [-0.3, 1])
    assert find_roots(p, 0, 1) == pytest.approx([0.3], abs=1e-7)
    p = multiply(p, [-0.7, 1])
    roots = find_roots(p, 0, 1)
    assert len(roots) == 2
    assert roots[1] == pytest.approx(0.7, abs=1e-12)


@given(st.lists(st.floats(-1, 1), min_size=2, max_size=10))
def test_roots_have_small_residual(coeffs):
    p = Polynomial(coeffs)
    for r in find_roots(p, -1.5, 1.5):
        assert abs(p(r)) <= 1e-9 * p.scale


def _check_sign_changes(p, lo, hi):
    x = np.linspace(lo, hi, 10_000)
    y = p(x)
    # values inside the Horner rounding bound carry no sign information
    noise = 8 * (p.degree + 1) * np.finfo(float).eps * np.polyval(np.abs(p.coeffs[::-1]), np.abs(x))
    real = np.abs(y) > noise
    roots = np.array(find_roots(p, lo, hi))
    for i in np.nonzero((y[:-1] * y[1:] < 0) & real[:-1] & real[1:])[0]:
        assert roots.size and np.any((roots >= x[i] - 1e-12) & (roots <= x[i + 1] + 1e-12)), (
            f"missed root in [{x[i]}, {x[i + 1]}]"
        )


@given(st.lists(st.floats(-1, 1), min_size=2, max_size=10))
def test_no_sign_change_missed_random_coeffs(coeffs):
    _check_sign_changes(Polynomial(coeffs), -2.0, 2.0)


@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=9), st.floats(0.1, 10))
def test_no_sign_change_missed_clustered_roots(roots, lead):
    p = Polynomial([lead])
    for r in roots:
        p = p * Polynomial([-r, 1.0])
    _check_sign_changes(p, 0.0, 1.0)
