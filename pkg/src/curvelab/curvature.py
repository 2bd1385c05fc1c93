"""
Curvature, Frenet frames and the exact maximum-curvature search.

On each cubic segment the velocity v is quadratic, the acceleration a is
linear and the jerk a' is constant, so the squared curvature

    K = |v x a|^2 / (v.v)^3            (space curves)
    K = (a.u)^2 / (v.v)^3,  u = J v    (plane curves)

has a derivative whose numerator is a polynomial of low degree:

    Q = (v.v) [(v x a).(v x a')] - 3 |v x a|^2 (v.a)     degree <= 7
    R = a.u,   W = (v.v)(a'.u) - 3 (a.u)(v.a)             K' = 2 R W / (v.v)^4

Interior extrema of curvature on a segment are therefore among the roots of
Q (or of R and W), and the maximum over a segment is attained either there
or at one of its two end knots. ``max_curvature`` does exactly this, one
segment at a time, with every candidate evaluated once and carried in the
report.

The stationarity polynomials are built in the segment's local parameter
u = t - (k - 1) in [0, 1], which keeps coefficients well scaled;
``StationarityPoly.global_polys`` shifts them to the global parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCurve, DimensionMismatch, OutOfDomain, ZeroCurvature, ZeroVelocity
from .geometry import ROOT_RESIDUAL_RTOL, Polynomial, cross, find_roots, rot90
from .spline import CubicSegment, SplineCurve

__all__ = [
    "KinematicState",
    "FrenetFrame",
    "StationarityPoly",
    "IntervalMax",
    "CurvatureReport",
    "ZERO_VELOCITY_RTOL",
    "ARGMAX_RTOL",
    "kinematic_state",
    "curvature",
    "curvature_3d",
    "curvature_2d",
    "curvature_at",
    "curvature_profile",
    "squared_curvature_local",
    "frenet_frame",
    "naive_stationarity_3d",
    "naive_stationarity_2d",
    "stationarity_poly_3d",
    "stationarity_polys_2d",
    "stationarity_poly",
    "max_curvature",
]

ZERO_VELOCITY_RTOL = 1e-12
STRAIGHT_RTOL = 1e-12
ARGMAX_RTOL = 1e-9
ARGMAX_MERGE_TOL = 1e-9


@dataclass(frozen=True)
class KinematicState:
    """Derivatives of a curve at one parameter value.

    ``u`` is the quarter-turned velocity ``J v`` and is only set for plane
    curves. ``scale`` is the length scale used by the zero-velocity test.
    """

    v: np.ndarray
    a: np.ndarray
    jerk: np.ndarray
    u: np.ndarray | None = None
    scale: float = 1.0

    @classmethod
    def from_vectors(cls, v, a, jerk=None, scale=1.0):
        v = np.asarray(v, dtype=float)
        a = np.asarray(a, dtype=float)
        jerk = np.zeros_like(v) if jerk is None else np.asarray(jerk, dtype=float)
        if not (v.shape == a.shape == jerk.shape):
            raise DimensionMismatch("v, a and jerk must share one dimension")
        u = rot90(v) if v.shape[0] == 2 else None
        return cls(v, a, jerk, u, scale)

    @property
    def dim(self) -> int:
        return self.v.shape[0]


@dataclass(frozen=True)
class FrenetFrame:
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray

    def as_matrix(self) -> np.ndarray:
        """Rows T, N, B."""
        return np.array([self.T, self.N, self.B])


@dataclass(frozen=True)
class StationarityPoly:
    """Polynomials whose roots are the curvature-stationary parameters.

    ``polys`` is ``(Q,)`` for space curves and ``(R, W)`` for plane curves,
    all in the local parameter of segment ``segment_index``. ``degenerate``
    marks a straight segment, for which every polynomial is zero.
    """

    polys: tuple
    segment_index: int
    degenerate: bool = False

    @property
    def offset(self) -> int:
        return self.segment_index - 1

    def global_polys(self) -> tuple:
        return tuple(p.shift(self.offset) for p in self.polys)

    def local_roots(self, residual_rtol: float = ROOT_RESIDUAL_RTOL) -> list:
        """Union of the roots of all polynomials in the open interval (0, 1)."""
        found = sorted(r for p in self.polys for r in find_roots(p, 0.0, 1.0, residual_rtol))
        merged = []
        for r in found:
            if not merged or r - merged[-1] >= ARGMAX_MERGE_TOL:
                merged.append(r)
        return merged

    def roots(self) -> list:
        """Stationary parameters inside (k-1, k), in the global parameter."""
        return [self.offset + r for r in self.local_roots()]


@dataclass(frozen=True)
class IntervalMax:
    """Maximum of curvature on one segment [index-1, index].

    ``candidates`` holds every (t, kappa) pair that was examined: the interior
    stationary points and both end knots.
    """

    index: int
    m: float
    locations: tuple
    candidates: tuple
    degenerate: bool = False


@dataclass(frozen=True)
class CurvatureReport:
    kappa_max: float
    argmax: tuple
    per_interval: tuple
    degenerate: bool = False


def _segment_scale(seg: CubicSegment) -> float:
    return max(seg.scale, np.finfo(float).tiny)


def kinematic_state(C: SplineCurve, t: float, index: int | None = None) -> KinematicState:
    """Velocity, acceleration and jerk of ``C`` at ``t``.

    The segment is the one given by ``index`` or, by default, the one
    ``curvature_at`` uses.
    """
    k = _algorithm_index(C, t) if index is None else index
    seg = C.segment(k)
    u = float(t) - seg.start
    return KinematicState.from_vectors(
        seg.local(u, 1), seg.local(u, 2), seg.local(u, 3), _segment_scale(seg)
    )


def _check_speed(state: KinematicState) -> float:
    speed = float(np.linalg.norm(state.v))
    if not speed >= ZERO_VELOCITY_RTOL * state.scale:
        raise ZeroVelocity(f"speed {speed:.3g} vanishes at this parameter")
    return speed


def curvature_3d(state: KinematicState) -> float:
    """kappa = |v x a| / |v|^3."""
    if state.dim != 3:
        raise DimensionMismatch("curvature_3d needs a space curve")
    speed = _check_speed(state)
    return float(np.linalg.norm(cross(state.v, state.a))) / speed**3


def curvature_2d(state: KinematicState) -> float:
    """kappa = |a . J v| / |v|^3."""
    if state.dim != 2:
        raise DimensionMismatch("curvature_2d needs a plane curve")
    speed = _check_speed(state)
    u = state.u if state.u is not None else rot90(state.v)
    return abs(float(np.dot(state.a, u))) / speed**3


def curvature(state: KinematicState) -> float:
    return curvature_2d(state) if state.dim == 2 else curvature_3d(state)


def _algorithm_index(C: SplineCurve, p: float) -> int:
    p = float(p)
    if not (0.0 <= p <= C.m):
        raise OutOfDomain(f"p={p!r} outside [0, {C.m}]")
    return C.m if p == C.m else math.floor(p) + 1


def curvature_at(C: SplineCurve, p: float) -> float:
    """Curvature at global parameter ``p``.

    The segment is ``m`` for ``p == m`` and ``floor(p) + 1`` otherwise, so an
    interior knot is evaluated on the segment to its right.
    """
    return curvature(kinematic_state(C, p))


def _kappa_rows(v: np.ndarray, a: np.ndarray) -> tuple:
    """Vectorised curvature for rows of v and a; also returns speeds."""
    speed = np.linalg.norm(v, axis=-1)
    if v.shape[-1] == 2:
        num = np.abs(v[..., 0] * a[..., 1] - v[..., 1] * a[..., 0])
    else:
        num = np.linalg.norm(np.cross(v, a), axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = num / speed**3
    return kappa, speed


def curvature_profile(C: SplineCurve, ts) -> np.ndarray:
    """Curvature at each parameter in ``ts``; NaN where the speed vanishes."""
    ts = np.asarray(ts, dtype=float)
    kappa, speed = _kappa_rows(C.eval(ts, 1), C.eval(ts, 2))
    idx = np.maximum(1, np.ceil(ts)).astype(int)
    scales = np.array([_segment_scale(s) for s in C.segments])[idx - 1]
    kappa = np.where(speed >= ZERO_VELOCITY_RTOL * scales, kappa, np.nan)
    return kappa


def squared_curvature_local(seg: CubicSegment, u) -> np.ndarray:
    """K = kappa^2 on a segment at local parameter(s) ``u`` (for oracles)."""
    kappa, _ = _kappa_rows(seg.local(u, 1), seg.local(u, 2))
    return kappa**2


def frenet_frame(C: SplineCurve, t: float) -> FrenetFrame:
    """T = v/|v|, B = (v x a)/|v x a|, N = B x T."""
    if C.dim != 3:
        raise DimensionMismatch("the Frenet frame is defined here for space curves only")
    state = kinematic_state(C, t)
    speed = _check_speed(state)
    va = cross(state.v, state.a)
    w = float(np.linalg.norm(va))
    if not w >= ZERO_VELOCITY_RTOL * state.scale * speed:
        raise ZeroCurvature(f"v x a vanishes at t={t}; the normal is undefined")
    T = state.v / speed
    B = va / w
    N = cross(B, T)
    return FrenetFrame(T, N, B)


# -- stationarity polynomials -------------------------------------------------
#
# A vector polynomial is an array of shape (degree + 1, dim) holding
# ascending coefficient vectors. The "naive" products below keep every
# coefficient, including those that cancel exactly.


def _derivative_arrays(seg: CubicSegment) -> tuple:
    a = seg.power
    vel = np.array([a[1], 2.0 * a[2], 3.0 * a[3]])
    acc = np.array([2.0 * a[2], 6.0 * a[3]])
    jerk = np.array([6.0 * a[3]])
    return vel, acc, jerk


def _vdot(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return sum(np.convolve(A[:, i], B[:, i]) for i in range(A.shape[1]))


def _vcross(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    comps = [
        np.convolve(A[:, 1], B[:, 2]) - np.convolve(A[:, 2], B[:, 1]),
        np.convolve(A[:, 2], B[:, 0]) - np.convolve(A[:, 0], B[:, 2]),
        np.convolve(A[:, 0], B[:, 1]) - np.convolve(A[:, 1], B[:, 0]),
    ]
    return np.stack(comps, axis=1)


def _rot90_rows(A: np.ndarray) -> np.ndarray:
    return np.stack([-A[:, 1], A[:, 0]], axis=1)


def _sub(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    out = np.zeros(max(p.size, q.size))
    out[: p.size] += p
    out[: q.size] -= q
    return out


def _is_straight(cross_coeffs: np.ndarray, vel: np.ndarray, acc: np.ndarray) -> bool:
    ref = np.max(np.abs(vel)) * np.max(np.abs(acc))
    return bool(np.max(np.abs(cross_coeffs)) <= STRAIGHT_RTOL * ref)


def naive_stationarity_3d(seg: CubicSegment) -> np.ndarray:
    """All ten coefficients (t^0..t^9, local) of the full expansion of Q."""
    if seg.dim != 3:
        raise DimensionMismatch("Q is defined for space curves")
    vel, acc, jerk = _derivative_arrays(seg)
    vv = _vdot(vel, vel)
    va = _vdot(vel, acc)
    vxa = _vcross(vel, acc)
    vxj = _vcross(vel, jerk)
    return _sub(
        np.convolve(vv, _vdot(vxa, vxj)),
        3.0 * np.convolve(_vdot(vxa, vxa), va),
    )


def naive_stationarity_2d(seg: CubicSegment) -> tuple:
    """Full expansions of R (4 coefficients) and W (7 coefficients), local."""
    if seg.dim != 2:
        raise DimensionMismatch("R and W are defined for plane curves")
    vel, acc, jerk = _derivative_arrays(seg)
    u = _rot90_rows(vel)
    R = _vdot(acc, u)
    W = _sub(
        np.convolve(_vdot(vel, vel), _vdot(jerk, u)),
        3.0 * np.convolve(R, _vdot(vel, acc)),
    )
    return R, W


def stationarity_poly_3d(seg: CubicSegment) -> StationarityPoly:
    vel, acc, _ = _derivative_arrays(seg)
    if _is_straight(_vcross(vel, acc), vel, acc):
        return StationarityPoly((Polynomial([0.0]),), seg.index, degenerate=True)
    return StationarityPoly((Polynomial(naive_stationarity_3d(seg)),), seg.index)


def stationarity_polys_2d(seg: CubicSegment) -> StationarityPoly:
    vel, acc, _ = _derivative_arrays(seg)
    R, W = naive_stationarity_2d(seg)
    if _is_straight(R, vel, acc):
        zero = Polynomial([0.0])
        return StationarityPoly((zero, zero), seg.index, degenerate=True)
    return StationarityPoly((Polynomial(R), Polynomial(W)), seg.index)


def stationarity_poly(seg: CubicSegment) -> StationarityPoly:
    return stationarity_polys_2d(seg) if seg.dim == 2 else stationarity_poly_3d(seg)


def _segment_kappa(seg: CubicSegment, u: float) -> float:
    state = KinematicState.from_vectors(
        seg.local(u, 1), seg.local(u, 2), seg.local(u, 3), _segment_scale(seg)
    )
    return curvature(state)


def _interval_max(seg: CubicSegment, root_rtol: float) -> IntervalMax:
    sp = stationarity_poly(seg)
    if sp.degenerate:
        local = [0.0, 0.5, 1.0]
    else:
        local = [0.0, *sp.local_roots(root_rtol), 1.0]
    candidates = tuple((seg.start + u, _segment_kappa(seg, u)) for u in local)
    m = max(k for _, k in candidates)
    locations = tuple(t for t, k in candidates if abs(k - m) <= ARGMAX_RTOL * m)
    return IntervalMax(seg.index, m, locations, candidates, sp.degenerate)


def _merge_params(ts) -> tuple:
    merged = []
    for t in sorted(ts):
        if not merged or t - merged[-1] >= ARGMAX_MERGE_TOL:
            merged.append(t)
    return tuple(merged)


def max_curvature(C: SplineCurve, allow_degenerate: bool = False,
                  root_rtol: float = ROOT_RESIDUAL_RTOL) -> CurvatureReport:
    """Global maximum of curvature over the whole spline and where it occurs.

    Works for both spline kinds and both dimensions. For each segment the
    candidates are its stationary points plus both end knots; the overall
    maximum and the union of its locations (shared knots merged) follow.

    If every segment is straight the curvature is identically zero and no
    isolated maximiser exists: ``DegenerateCurve`` is raised, carrying a
    report with ``degenerate=True`` and an empty ``argmax``. Pass
    ``allow_degenerate=True`` to get that report back instead.
    """
    per_interval = tuple(_interval_max(seg, root_rtol) for seg in C.segments)
    if all(iv.degenerate for iv in per_interval):
        report = CurvatureReport(0.0, (), per_interval, degenerate=True)
        if allow_degenerate:
            return report
        raise DegenerateCurve("every segment is straight; curvature is identically zero", report)
    kappa_max = max(iv.m for iv in per_interval)
    hits = [
        t
        for iv in per_interval
        for t, k in iv.candidates
        if abs(k - kappa_max) <= ARGMAX_RTOL * kappa_max
    ]
    return CurvatureReport(kappa_max, _merge_params(hits), per_interval)
