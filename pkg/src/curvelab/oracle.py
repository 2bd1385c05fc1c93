"""
Brute-force reference implementations used to cross-check the closed forms.

Nothing here shares code with the closed-form solvers or the analytic
curvature search: control points come from an explicit tridiagonal
elimination, and the maximum curvature from a dense uniform grid.
``verify_curve`` bundles the comparisons into a single pass/fail report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .curvature import _kappa_rows, max_curvature
from .spline import ControlPolygon, Kind, PointSet, SplineCurve, build_spline, solve

__all__ = [
    "TridiagonalSystem",
    "solve_tridiagonal",
    "relaxed_system",
    "periodic_system",
    "oracle_control_polygon",
    "system_residual",
    "DenseMax",
    "dense_max_curvature",
    "Check",
    "VerificationReport",
    "Tolerances",
    "verify_curve",
]


@dataclass(frozen=True)
class TridiagonalSystem:
    """``off*x[i-1] + diag*x[i] + off*x[i+1] = rhs[i]``, optionally wrapping.

    ``rhs`` has one row per unknown; each row may be a vector, in which case
    all coordinates are solved at once.
    """

    rhs: np.ndarray
    cyclic: bool = False
    diag: float = 4.0
    off: float = 1.0

    @property
    def n(self) -> int:
        return np.asarray(self.rhs).shape[0]


def _thomas(a, b, c, d):
    """Thomas algorithm for sub/main/super diagonals a, b, c (a[0], c[-1] unused)."""
    n = len(b)
    cp = np.empty(n)
    dp = np.empty_like(d, dtype=float)
    cp[0] = c[0] / b[0]
    dp[0] = d[0] / b[0]
    for i in range(1, n):
        m = b[i] - a[i] * cp[i - 1]
        cp[i] = c[i] / m
        dp[i] = (d[i] - a[i] * dp[i - 1]) / m
    x = np.empty_like(dp)
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x


def solve_tridiagonal(sys: TridiagonalSystem) -> np.ndarray:
    """Solve the (cyclic) constant-coefficient tridiagonal system.

    The cyclic case uses the Sherman-Morrison correction on top of two Thomas
    solves.
    """
    d = np.asarray(sys.rhs, dtype=float)
    n = d.shape[0]
    if n < 1:
        raise ValueError("empty system")
    if n == 1:
        return d / (sys.diag + (2.0 * sys.off if sys.cyclic else 0.0))
    a = np.full(n, sys.off)
    b = np.full(n, sys.diag)
    c = np.full(n, sys.off)
    if not sys.cyclic:
        return _thomas(a, b, c, d)
    if n == 2:
        # both neighbours of each unknown are the other unknown
        m = np.array([[sys.diag, 2.0 * sys.off], [2.0 * sys.off, sys.diag]])
        return np.linalg.solve(m, d)
    alpha = beta = sys.off  # bottom-left and top-right corners
    gamma = -b[0]
    bb = b.copy()
    bb[0] -= gamma
    bb[-1] -= alpha * beta / gamma
    x = _thomas(a, bb, c, d)
    u = np.zeros(n)
    u[0] = gamma
    u[-1] = alpha
    z = _thomas(a, bb, c, u)
    fact = (x[0] + beta * x[-1] / gamma) / (1.0 + z[0] + beta * z[-1] / gamma)
    return x - np.multiply.outer(z, fact) if x.ndim > 1 else x - fact * z


def relaxed_system(S: PointSet) -> TridiagonalSystem:
    """Unknowns b_1..b_{n-1}; the known end points move to the right-hand side."""
    s = S.points
    rhs = 6.0 * s[1:-1].copy()
    rhs[0] -= s[0]
    rhs[-1] -= s[-1]
    return TridiagonalSystem(rhs, cyclic=False)


def periodic_system(S: PointSet) -> TridiagonalSystem:
    """Unknowns b_0..b_n with wraparound b_{n+1} = b_0, b_{-1} = b_n."""
    return TridiagonalSystem(6.0 * S.points, cyclic=True)


def oracle_control_polygon(S: PointSet, kind) -> ControlPolygon:
    kind = Kind(kind)
    if kind is Kind.RELAXED:
        inner = solve_tridiagonal(relaxed_system(S))
        b = np.vstack([S.points[:1], inner, S.points[-1:]])
    else:
        S.check_periodic()
        b = solve_tridiagonal(periodic_system(S))
    return ControlPolygon(b, kind)


def system_residual(B: ControlPolygon, S: PointSet) -> float:
    """Largest |b_{k-1} + 4 b_k + b_{k+1} - 6 s_k| over the defining equations.

    Relaxed polygons are checked at k = 1..n-1 plus the end conditions
    b_0 = s_0, b_n = s_n; periodic ones at every k with indices mod n+1.
    """
    b = B.b
    s = S.points
    if B.kind is Kind.PERIODIC:
        r = np.roll(b, 1, axis=0) + 4.0 * b + np.roll(b, -1, axis=0) - 6.0 * s
    else:
        r = b[:-2] + 4.0 * b[1:-1] + b[2:] - 6.0 * s[1:-1]
        r = np.vstack([r, b[0] - s[0], b[-1] - s[-1]])
    return float(np.max(np.linalg.norm(r, axis=1)))


class DenseMax(NamedTuple):
    kappa: float
    t: float
    skipped: int


def dense_max_curvature(C: SplineCurve, samples_per_segment: int = 100_000) -> DenseMax:
    """Maximum curvature over a uniform grid of each segment (ends included).

    Samples where the speed vanishes are skipped and counted in ``skipped``.
    """
    if samples_per_segment < 1000:
        raise ValueError("samples_per_segment must be at least 1000")
    u = np.linspace(0.0, 1.0, samples_per_segment)
    best = (-np.inf, 0.0)
    skipped = 0
    for seg in C.segments:
        kappa, speed = _kappa_rows(seg.local(u, 1), seg.local(u, 2))
        ok = speed >= 1e-12 * max(seg.scale, np.finfo(float).tiny)
        skipped += int(np.count_nonzero(~ok))
        kappa = np.where(ok, kappa, -np.inf)
        i = int(np.argmax(kappa))
        if kappa[i] > best[0]:
            best = (float(kappa[i]), seg.start + float(u[i]))
    if best[0] == -np.inf:
        return DenseMax(float("nan"), float("nan"), skipped)
    return DenseMax(best[0], best[1], skipped)


@dataclass(frozen=True)
class Tolerances:
    control: float = 1e-9
    residual: float = 1e-9
    interpolation: float = 1e-12
    continuity: float = 1e-9
    grid_gap: float = 1e-4
    grid_slack: float = 1e-9
    grid_samples: int = 100_000


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _knot_jumps(C: SplineCurve, order: int) -> float:
    pairs = [(C.segments[i], C.segments[i + 1]) for i in range(C.m - 1)]
    if C.kind is Kind.PERIODIC:
        pairs.append((C.segments[-1], C.segments[0]))
    jumps = [np.linalg.norm(left.local(1.0, order) - right.local(0.0, order)) for left, right in pairs]
    return float(max(jumps, default=0.0))


def verify_curve(S: PointSet, kind, control: ControlPolygon | None = None,
                 tol: Tolerances = Tolerances()) -> VerificationReport:
    """Run every oracle comparison on the spline through ``S``.

    ``control`` overrides the closed-form control polygon, which lets callers
    check a polygon obtained elsewhere (or a deliberately corrupted one).
    """
    kind = Kind(kind)
    scale = S.scale
    B = solve(S, kind) if control is None else control
    ref = oracle_control_polygon(S, kind)
    C = build_spline(B, S)
    checks = []

    def add(name, value, limit, detail=""):
        checks.append(Check(name, float(value), float(limit), bool(value <= limit), detail))

    dev = float(np.max(np.abs(B.b - ref.b)))
    add("closed_form_vs_thomas", dev / scale, tol.control, "max |b - b_oracle| / scale")
    add("system_residual", system_residual(B, S) / scale, tol.residual, "linear system residual / scale")
    knots = np.arange(C.m + 1, dtype=float)
    expected = S.points if kind is Kind.RELAXED else np.vstack([S.points, S.points[:1]])
    interp = float(np.max(np.linalg.norm(C.eval(knots) - expected, axis=1)))
    add("interpolation", interp / scale, tol.interpolation, "max |f(k) - s_k| / scale")
    for order in (1, 2):
        add(f"c2_knot_order{order}", _knot_jumps(C, order) / scale, tol.continuity,
            f"largest jump of derivative {order} across knots / scale")
    if kind is Kind.RELAXED:
        ends = max(np.linalg.norm(C.eval(0.0, 2)), np.linalg.norm(C.eval(float(C.m), 2)))
        add("relaxed_end_acceleration", ends / scale, tol.continuity, "|f''| at both ends / scale")
    report = max_curvature(C, allow_degenerate=True)
    if not report.degenerate:
        grid = dense_max_curvature(C, tol.grid_samples)
        excess = grid.kappa - report.kappa_max
        add("grid_not_above_analytic", excess, tol.grid_slack, "grid max - analytic max")
        gap = (report.kappa_max - grid.kappa) / report.kappa_max
        add("grid_gap", gap, tol.grid_gap, "(analytic - grid) / analytic")
    return VerificationReport(tuple(checks))
