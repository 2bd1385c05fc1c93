"""
Uniform cubic B-spline interpolation with closed-form control points.

A point set s_0..s_n is interpolated either by a *relaxed* spline (open,
zero second derivative at both ends, n segments) or a *periodic* spline
(closed C2 loop, n + 1 segments). In both cases the control points b_k
satisfy ``b_{k-1} + 4 b_k + b_{k+1} = 6 s_k``; here that system is never
factorised. The solution is written out directly as alternating sums
weighted by the integer sequence beta = 0, 1, 4, 15, 56, ...

Segment k (1-based) lives on the global parameter interval [k-1, k] and is
the cubic Bezier curve with controls (s_{k-1}, p_{k-1}, q_k, s_k), where
p_{k-1} and q_k trisect the control-polygon edge b_{k-1} b_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicatePoints,
    IndexTooLarge,
    KindMismatch,
    NonFiniteValue,
    OutOfDomain,
    TooFewPoints,
)

__all__ = [
    "Kind",
    "PointSet",
    "ControlPolygon",
    "CubicSegment",
    "SplineCurve",
    "BETA_MAX_INDEX",
    "beta",
    "beta_table",
    "solve_relaxed",
    "solve_periodic",
    "solve",
    "build_spline",
    "fit",
    "bezier_eval",
    "bernstein_eval",
]

BETA_MAX_INDEX = 500


class Kind(str, Enum):
    RELAXED = "relaxed"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class PointSet:
    """Ordered interpolation points s_0..s_n (n >= 2) of a common dimension.

    Consecutive points must be distinct. Closing the loop (s_n != s_0) is
    only checked when the set is used periodically, see ``check_periodic``.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] not in (2, 3):
            raise DimensionMismatch(
                f"points must be an (n+1, 2) or (n+1, 3) array, got shape {pts.shape}"
            )
        if pts.shape[0] < 3:
            raise TooFewPoints(f"need at least 3 points, got {pts.shape[0]}")
        bad = np.nonzero(~np.all(np.isfinite(pts), axis=1))[0]
        if bad.size:
            raise NonFiniteValue(f"point {bad[0]} has a non-finite coordinate")
        steps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        dup = np.nonzero(steps == 0.0)[0]
        if dup.size:
            k = int(dup[0]) + 1
            raise DuplicatePoints(f"point {k} repeats point {k - 1}", index=k)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        """Index of the last point (the set has n + 1 points)."""
        return self.points.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def scale(self) -> float:
        """Largest absolute coordinate, the unit for relative tolerances."""
        return max(float(np.max(np.abs(self.points))), np.finfo(float).tiny)

    def check_periodic(self):
        if np.array_equal(self.points[0], self.points[-1]):
            raise DuplicatePoints(
                f"point {self.n} repeats point 0; the closing segment would be empty",
                index=self.n,
            )

    def __len__(self):
        return self.points.shape[0]


@dataclass(frozen=True)
class ControlPolygon:
    b: np.ndarray
    kind: Kind

    @property
    def dim(self) -> int:
        return self.b.shape[1]


@dataclass(frozen=True)
class CubicSegment:
    """Cubic Bezier piece with controls c0..c3, parameterised on [k-1, k]."""

    controls: np.ndarray
    index: int
    power: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        c0, c1, c2, c3 = self.controls
        # power-basis coefficients in the local parameter u = t - (k - 1)
        power = np.array(
            [c0, 3.0 * (c1 - c0), 3.0 * (c0 - 2.0 * c1 + c2), c3 - c0 + 3.0 * (c1 - c2)]
        )
        object.__setattr__(self, "power", power)

    @property
    def start(self) -> int:
        return self.index - 1

    @property
    def dim(self) -> int:
        return self.controls.shape[1]

    @property
    def scale(self) -> float:
        """Longest leg of the control polygon."""
        return float(np.max(np.linalg.norm(np.diff(self.controls, axis=0), axis=1)))

    def local(self, u, order: int = 0) -> np.ndarray:
        """Position (order 0) or derivative at local parameter(s) ``u`` in [0, 1].

        Positions use the Bernstein form, which is exact at both ends;
        derivatives use the power-basis coefficients.
        """
        u = np.asarray(u, dtype=float)
        if order == 0:
            w = 1.0 - u
            basis = (w**3, 3.0 * u * w**2, 3.0 * u**2 * w, u**3)
            return sum(np.multiply.outer(bi, ci) for bi, ci in zip(basis, self.controls))
        a = self.power
        one = np.ones_like(u)
        if order == 1:
            return (
                np.multiply.outer(one, a[1])
                + np.multiply.outer(u, 2.0 * a[2])
                + np.multiply.outer(u**2, 3.0 * a[3])
            )
        if order == 2:
            return np.multiply.outer(one, 2.0 * a[2]) + np.multiply.outer(u, 6.0 * a[3])
        if order == 3:
            return np.multiply.outer(one, 6.0 * a[3])
        raise ValueError(f"derivative order must be 0..3, got {order}")

    def __call__(self, t, order: int = 0) -> np.ndarray:
        return self.local(np.asarray(t, dtype=float) - self.start, order)


@dataclass(frozen=True)
class SplineCurve:
    segments: tuple
    kind: Kind
    source: PointSet
    control: ControlPolygon

    @property
    def m(self) -> int:
        """Number of segments; the parameter domain is [0, m]."""
        return len(self.segments)

    @property
    def domain(self) -> tuple:
        return (0.0, float(self.m))

    @property
    def dim(self) -> int:
        return self.source.dim

    @property
    def scale(self) -> float:
        return self.source.scale

    def segment_index(self, t: float) -> int:
        """1-based segment owning ``t``: interior knots go to the left segment."""
        t = float(t)
        if not (0.0 <= t <= self.m):
            raise OutOfDomain(f"t={t!r} outside [0, {self.m}]")
        return max(1, math.ceil(t))

    def segment(self, k: int) -> CubicSegment:
        return self.segments[k - 1]

    def eval(self, t, order: int = 0) -> np.ndarray:
        """Position or derivative of order 1..3 at global parameter ``t``.

        Scalars return a single vector; arrays return one row per parameter.
        """
        if np.ndim(t) == 0:
            return self.segment(self.segment_index(t))(t, order)
        t = np.asarray(t, dtype=float)
        if np.any((t < 0.0) | (t > self.m)) or not np.all(np.isfinite(t)):
            raise OutOfDomain(f"parameters outside [0, {self.m}]")
        idx = np.maximum(1, np.ceil(t)).astype(int)
        out = np.empty((t.size, self.dim))
        flat = t.ravel()
        for k in np.unique(idx):
            sel = idx.ravel() == k
            out[sel] = self.segment(int(k))(flat[sel], order)
        return out.reshape(t.shape + (self.dim,))

    def __call__(self, t, order: int = 0):
        return self.eval(t, order)


@lru_cache(maxsize=None)
def beta_table(size: int = BETA_MAX_INDEX) -> tuple:
    """beta_{-1} .. beta_{size} from the recurrence; index with ``ell + 1``."""
    values = [0.0, 1.0]
    for _ in range(size):
        values.append(4.0 * values[-1] - values[-2])
    return tuple(values)


def beta(ell: int) -> float:
    """beta_ell = ((2+sqrt3)^(ell+1) - (2-sqrt3)^(ell+1)) / (2 sqrt3), for ell >= -1."""
    if ell < -1:
        raise ValueError(f"beta is defined for ell >= -1, got {ell}")
    if ell > BETA_MAX_INDEX:
        raise IndexTooLarge(f"beta_{ell} exceeds the supported index {BETA_MAX_INDEX}")
    return beta_table()[ell + 1]


def _betas(upto: int) -> np.ndarray:
    if upto > BETA_MAX_INDEX:
        raise IndexTooLarge(f"beta_{upto} exceeds the supported index {BETA_MAX_INDEX}")
    return np.array(beta_table()[: upto + 2])


def _alternating(count: int) -> np.ndarray:
    return np.where(np.arange(count) % 2 == 0, 1.0, -1.0)


def _interior_weights(k: int, n: int, bt: np.ndarray) -> np.ndarray:
    """Weights of s_0..s_n in the relaxed closed form for b_k, 0 < k < n.

    ``bt[ell + 1]`` holds beta_ell. Each weight is a ratio
    beta_a * beta_b / beta_{n-1} formed as (beta_a / beta_{n-1}) * beta_b so
    no intermediate product overflows.
    """
    top = bt[n]
    left = bt[n - k] / top  # beta_{n-1-k} / beta_{n-1}
    right = bt[k] / top  # beta_{k-1} / beta_{n-1}
    w = np.zeros(n + 1)
    w[0] = (-1.0) ** k * left
    j = np.arange(1, k)
    w[j] = 6.0 * _alternating(k + 1)[k - j] * (left * bt[j])  # beta_{j-1}
    w[n] += (-1.0) ** (n - k) * right
    j = np.arange(k, n)
    w[j] += 6.0 * _alternating(n)[j - k] * (right * bt[n - j])  # beta_{n-1-j}
    return w


def solve_relaxed(S) -> ControlPolygon:
    """Control points of the relaxed spline interpolating ``S``.

    b_0 = s_0, b_n = s_n and for 0 < k < n::

        b_k = beta_{n-1-k}/beta_{n-1} [(-1)^k s_0 + 6 sum_{j=1}^{k-1} (-1)^{k-j} beta_{j-1} s_j]
            + beta_{k-1}/beta_{n-1} [(-1)^{n-k} s_n + 6 sum_{j=k}^{n-1} (-1)^{j-k} beta_{n-1-j} s_j]
    """
    if not isinstance(S, PointSet):
        S = PointSet(S)
    s = S.points
    n = S.n
    bt = _betas(n - 1)
    b = np.empty_like(s)
    b[0] = s[0]
    b[n] = s[n]
    for k in range(1, n):
        b[k] = _interior_weights(k, n, bt) @ s
    return ControlPolygon(b, Kind.RELAXED)


def periodic_b0_weights(n: int) -> np.ndarray:
    """Weights of s_0..s_n giving b_0 of the periodic spline.

    b_0 = 3 / (beta_{n-1} - 2 beta_n + (-1)^(n-1))
          * (-beta_n s_0 + sum_{j=1}^{n} [(-1)^(j-1) beta_{n-j} + (-1)^(n-j) beta_{j-1}] s_j)
    """
    bt = _betas(n)
    den = bt[n] - 2.0 * bt[n + 1] + (-1.0) ** (n - 1)
    w = np.empty(n + 1)
    w[0] = -3.0 * (bt[n + 1] / den)
    j = np.arange(1, n + 1)
    w[1:] = 3.0 * (
        _alternating(n)[j - 1] * (bt[n - j + 1] / den)
        + _alternating(n + 1)[n - j] * (bt[j] / den)
    )
    return w


def solve_periodic(S) -> ControlPolygon:
    """Control points of the closed (periodic) spline interpolating ``S``.

    b_0 comes from ``periodic_b0_weights``; b_1..b_n then follow from the
    relaxed closed form with n-1 replaced by n and both end data points
    replaced by b_0::

        b_k = beta_{n-k}/beta_n [(-1)^k b_0 + 6 sum_{j=1}^{k-1} (-1)^{k-j} beta_{j-1} s_j]
            + beta_{k-1}/beta_n [(-1)^{n+1-k} b_0 + 6 sum_{j=k}^{n} (-1)^{j-k} beta_{n-j} s_j]
    """
    if not isinstance(S, PointSet):
        S = PointSet(S)
    S.check_periodic()
    s = S.points
    n = S.n
    bt = _betas(n)
    b = np.empty_like(s)
    b[0] = periodic_b0_weights(n) @ s
    # the n x n system for b_1..b_n is the relaxed one of size n + 1 with
    # virtual end points b_0 at both ends
    virtual = np.vstack([b[0], s[1:], b[0]])
    for k in range(1, n + 1):
        b[k] = _interior_weights(k, n + 1, bt) @ virtual
    return ControlPolygon(b, Kind.PERIODIC)


def solve(S, kind) -> ControlPolygon:
    kind = Kind(kind)
    return solve_relaxed(S) if kind is Kind.RELAXED else solve_periodic(S)


def build_spline(B: ControlPolygon, S) -> SplineCurve:
    """Assemble the piecewise-cubic curve from control points and data.

    Relaxed curves get n segments, periodic curves n + 1 with b_{n+1} = b_0
    and s_{n+1} = s_0.
    """
    if not isinstance(S, PointSet):
        S = PointSet(S)
    if B.b.shape != S.points.shape:
        raise KindMismatch(
            f"control polygon of shape {B.b.shape} does not match data of shape {S.points.shape}"
        )
    b = B.b
    s = S.points
    if B.kind is Kind.PERIODIC:
        b = np.vstack([b, b[:1]])
        s = np.vstack([s, s[:1]])
    elif B.kind is not Kind.RELAXED:
        raise KindMismatch(f"unknown spline kind {B.kind!r}")
    segments = []
    for k in range(1, b.shape[0]):
        p = (2.0 * b[k - 1] + b[k]) / 3.0
        q = (b[k - 1] + 2.0 * b[k]) / 3.0
        controls = np.array([s[k - 1], p, q, s[k]])
        controls.setflags(write=False)
        segments.append(CubicSegment(controls, k))
    return SplineCurve(tuple(segments), B.kind, S, B)


def fit(points, kind="relaxed") -> SplineCurve:
    """Solve for the control polygon and build the spline in one call."""
    S = points if isinstance(points, PointSet) else PointSet(points)
    return build_spline(solve(S, kind), S)


def _controls(controls: Sequence) -> np.ndarray:
    c = np.array(controls, dtype=float)
    if c.ndim != 2 or c.shape[0] < 2:
        raise TooFewPoints("a Bezier curve needs at least 2 control points")
    return c


def bezier_eval(controls, t: float) -> np.ndarray:
    """De Casteljau evaluation of the Bezier curve with the given controls."""
    c = _controls(controls)
    t = float(t)
    while c.shape[0] > 1:
        c = (1.0 - t) * c[:-1] + t * c[1:]
    return c[0]


def bernstein_eval(controls, t: float) -> np.ndarray:
    """Direct Bernstein-sum evaluation, sum_i C(n, i) t^i (1-t)^(n-i) r_i."""
    c = _controls(controls)
    n = c.shape[0] - 1
    t = float(t)
    w = np.array([math.comb(n, i) * t**i * (1.0 - t) ** (n - i) for i in range(n + 1)])
    return w @ c
