import numpy as np
import pytest
from hypothesis import given, settings

from curvelab.curvature import max_curvature
from curvelab.oracle import (
    Tolerances,
    TridiagonalSystem,
    dense_max_curvature,
    oracle_control_polygon,
    periodic_system,
    relaxed_system,
    solve_tridiagonal,
    system_residual,
    verify_curve,
)
from curvelab.spline import ControlPolygon, Kind, PointSet, fit, solve

from helpers import dims, kinds, point_counts, random_pointset, seeds


def _dense(diag, off, n, cyclic):
    M = diag * np.eye(n) + off * (np.eye(n, k=1) + np.eye(n, k=-1))
    if cyclic:
        M[0, -1] += off
        M[-1, 0] += off
    return M


def test_one_unknown():
    np.testing.assert_allclose(solve_tridiagonal(TridiagonalSystem(np.array([[6.0, 2.0]]))), [[1.5, 0.5]])


@pytest.mark.parametrize("n", [2, 3, 5, 20])
@pytest.mark.parametrize("cyclic", [False, True])
def test_matches_dense_solve(n, cyclic):
    rhs = np.random.default_rng(n).normal(size=(n, 3))
    x = solve_tridiagonal(TridiagonalSystem(rhs, cyclic=cyclic))
    np.testing.assert_allclose(_dense(4.0, 1.0, n, cyclic) @ x, rhs, atol=1e-12)


def test_scalar_rhs():
    rhs = np.arange(1.0, 8.0)
    x = solve_tridiagonal(TridiagonalSystem(rhs, cyclic=True))
    np.testing.assert_allclose(_dense(4.0, 1.0, 7, True) @ x, rhs, atol=1e-12)


def test_empty_system():
    with pytest.raises(ValueError):
        solve_tridiagonal(TridiagonalSystem(np.zeros((0, 2))))


def test_cyclic_triangle():
    s = np.array([(0.0, 0.0), (3.0, 0.0), (1.0, 2.0)])
    b = solve_tridiagonal(periodic_system(PointSet(s)))
    np.testing.assert_allclose(b, 2 * s - s.mean(axis=0), atol=1e-14)


def test_relaxed_system_layout():
    S = PointSet([(0, 0), (1, 2), (3, 1), (4, 4)])
    sys = relaxed_system(S)
    assert sys.n == 2 and not sys.cyclic
    np.testing.assert_allclose(sys.rhs[0], 6 * S.points[1] - S.points[0])


@settings(max_examples=50)
@given(seeds, point_counts, dims, kinds)
def test_closed_form_matches_thomas(seed, count, dim, kind):
    S = random_pointset(np.random.default_rng(seed), count, dim)
    ref = oracle_control_polygon(S, kind).b
    assert np.max(np.abs(solve(S, kind).b - ref)) <= 1e-9 * S.scale
    assert system_residual(solve(S, kind), S) <= 1e-9 * S.scale


def test_random_periodic_fifty():
    S = random_pointset(np.random.default_rng(50), 51, 3)
    assert system_residual(solve(S, "periodic"), S) <= 1e-9 * S.scale


# -- dense-grid maximum ----------------------------------------------------------


def test_dense_max_straight_line():
    C = fit([(0, 0), (1, 1), (2, 2), (3, 3)], "relaxed")
    d = dense_max_curvature(C, 1000)
    assert d.kappa == pytest.approx(0.0, abs=1e-9)
    assert d.t == 0.0


def test_dense_max_needs_enough_samples():
    C = fit([(0, 0), (1, 2), (3, 1)], "relaxed")
    with pytest.raises(ValueError):
        dense_max_curvature(C, 999)


@pytest.mark.parametrize("seed", range(5))
def test_dense_max_below_analytic_and_monotone(seed):
    C = fit(random_pointset(np.random.default_rng(seed), 9, 2 + seed % 2), "periodic")
    exact = max_curvature(C).kappa_max
    prev = -np.inf
    # nested grids: each doubling (2k - 1 points) contains the previous one
    for samples in (1001, 2001, 4001, 8001):
        d = dense_max_curvature(C, samples)
        assert d.kappa <= exact + 1e-9
        assert d.kappa >= prev
        prev = d.kappa
    assert exact - prev <= 1e-3 * exact


# -- verification report ---------------------------------------------------------


def test_verify_passes_on_fit():
    S = random_pointset(np.random.default_rng(8), 12, 3)
    report = verify_curve(S, "relaxed", tol=Tolerances(grid_samples=20_000))
    assert report.passed
    names = [c.name for c in report.checks]
    assert "relaxed_end_acceleration" in names and "grid_gap" in names


def test_verify_catches_corruption():
    S = random_pointset(np.random.default_rng(9), 10, 2)
    B = solve(S, Kind.PERIODIC)
    b = np.array(B.b)
    b[3] += 1e-3 * S.scale
    report = verify_curve(S, "periodic", control=ControlPolygon(b, Kind.PERIODIC),
                          tol=Tolerances(grid_samples=5000))
    assert not report.passed
    failed = {c.name for c in report.checks if not c.passed}
    # the trisection construction keeps f'' continuous for any polygon, so a
    # wrong polygon shows up as a jump in f'
    assert failed == {"closed_form_vs_thomas", "system_residual", "c2_knot_order1"}
