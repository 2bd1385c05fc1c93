"""
Vector arithmetic and polynomial kernel.

Vectors are plain 1-d float numpy arrays of length 2 or 3; the helpers here
only add dimension checking on top of numpy. 2D vectors stay 2D: nothing is
silently embedded into 3D.

Polynomials are stored in ascending-degree order and evaluated with Horner's
scheme. ``find_roots`` isolates real roots on an interval by recursing on the
derivative, which splits the interval into pieces where the polynomial is
monotone, then polishes each bracketed root with safeguarded Newton.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DimensionMismatch, NonFiniteValue

__all__ = [
    "as_vector",
    "dot",
    "norm",
    "cross",
    "rot90",
    "Polynomial",
    "add",
    "scale",
    "multiply",
    "differentiate",
    "Roots",
    "find_roots",
    "TRIM_RTOL",
    "ROOT_MERGE_TOL",
    "ROOT_RESIDUAL_RTOL",
    "ROOT_XTOL",
]

TRIM_RTOL = 1e-12
ROOT_MERGE_TOL = 1e-9
ROOT_RESIDUAL_RTOL = 1e-9
ROOT_XTOL = 1e-13


def as_vector(coords, dim=None) -> np.ndarray:
    """Validate ``coords`` and return it as a float vector of length 2 or 3."""
    v = np.array(coords, dtype=float)
    if v.ndim != 1 or v.shape[0] not in (2, 3):
        raise DimensionMismatch(f"expected 2 or 3 coordinates, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"expected a {dim}D vector, got {v.shape[0]}D")
    if not np.all(np.isfinite(v)):
        raise NonFiniteValue(f"non-finite coordinate in {coords!r}")
    return v


def _same_dim(u, v):
    if u.shape[-1] != v.shape[-1]:
        raise DimensionMismatch(f"dimension mismatch: {u.shape[-1]} vs {v.shape[-1]}")


def dot(u, v) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    _same_dim(u, v)
    return float(np.dot(u, v))


def norm(v) -> float:
    return float(np.linalg.norm(v))


def cross(u, v) -> np.ndarray:
    """Right-handed cross product of two 3D vectors."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[-1] != 3 or v.shape[-1] != 3:
        raise DimensionMismatch("cross product needs two 3D vectors")
    return np.array(
        [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ]
    )


def rot90(v) -> np.ndarray:
    """Counterclockwise quarter turn ``J v`` with ``J = [[0, -1], [1, 0]]``."""
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != 2:
        raise DimensionMismatch("rot90 is only defined for 2D vectors")
    return np.array([-v[1], v[0]])


class Polynomial:
    """Real polynomial with ascending coefficients.

    Trailing coefficients with magnitude at most ``1e-12 * max|coeff|`` are
    trimmed on construction. The zero polynomial is ``[0.0]`` with degree 0.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.array(coeffs, dtype=float))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        big = np.max(np.abs(c))
        if big == 0.0:
            c = np.zeros(1)
        else:
            keep = np.nonzero(np.abs(c) > TRIM_RTOL * big)[0]
            c = c[: keep[-1] + 1]
        c.setflags(write=False)
        self.coeffs = c

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0.0

    @property
    def scale(self) -> float:
        """Largest coefficient magnitude; the yardstick for residuals."""
        return float(np.max(np.abs(self.coeffs)))

    def __call__(self, t):
        # Horner
        c = self.coeffs
        acc = np.zeros_like(np.asarray(t, dtype=float)) + c[-1]
        for a in c[-2::-1]:
            acc = acc * t + a
        return acc if np.ndim(acc) else float(acc)

    def __add__(self, other):
        other = _as_poly(other)
        return Polynomial(npoly.polyadd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if np.isscalar(other):
            return self.scale_by(other)
        return Polynomial(npoly.polymul(self.coeffs, _as_poly(other).coeffs))

    __rmul__ = __mul__

    def scale_by(self, factor: float) -> "Polynomial":
        return Polynomial(self.coeffs * float(factor))

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([0.0])
        return Polynomial(npoly.polyder(self.coeffs))

    def integral(self, constant: float = 0.0) -> "Polynomial":
        return Polynomial(npoly.polyint(self.coeffs, k=constant))

    def shift(self, offset: float) -> "Polynomial":
        """Return ``q`` with ``q(t) = self(t - offset)``."""
        # Taylor shift by repeated synthetic division
        c = list(self.coeffs[::-1])
        n = len(c)
        for i in range(n - 1):
            for j in range(1, n - i):
                c[j] -= offset * c[j - 1]
        return Polynomial(c[::-1])

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"Polynomial({self.coeffs.tolist()!r})"


def _as_poly(p) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial(np.atleast_1d(p))


def add(p, q) -> Polynomial:
    return _as_poly(p) + _as_poly(q)


def scale(p, factor) -> Polynomial:
    return _as_poly(p).scale_by(factor)


def multiply(p, q) -> Polynomial:
    return _as_poly(p) * _as_poly(q)


def differentiate(p) -> Polynomial:
    return _as_poly(p).derivative()


class Roots(list):
    """Sorted list of roots; ``degenerate`` is set for the zero polynomial."""

    def __init__(self, values=(), degenerate=False):
        super().__init__(values)
        self.degenerate = degenerate


def _horner2(c, x):
    """Value and first derivative at ``x``."""
    p = c[-1]
    dp = 0.0
    for a in c[-2::-1]:
        dp = dp * x + p
        p = p * x + a
    return p, dp


def _polish(c, a, b, fa):
    """Safeguarded Newton on a bracket ``[a, b]`` with ``f(a) * f(b) < 0``."""
    if fa > 0:
        a, b = b, a  # keep f(a) < 0 < f(b)
    x = 0.5 * (a + b)
    for _ in range(200):
        fx, dfx = _horner2(c, x)
        if fx == 0.0:
            return x
        if fx < 0:
            a = x
        else:
            b = x
        width = abs(b - a)
        step = fx / dfx if dfx != 0.0 else np.inf
        xn = x - step
        lo, hi = min(a, b), max(a, b)
        if not (lo < xn < hi) or abs(step) > 0.5 * width:
            xn = 0.5 * (a + b)
            step = x - xn
        x = xn
        if abs(step) <= ROOT_XTOL or width <= ROOT_XTOL:
            return x
    return x


def _isolate(c, lo, hi, tol):
    """Real roots of the polynomial ``c`` in ``(lo, hi)`` (unmerged, sorted)."""
    deg = len(c) - 1
    while deg > 0 and c[deg] == 0.0:
        deg -= 1
    c = c[: deg + 1]
    if deg == 0:
        return []
    if deg == 1:
        r = -c[0] / c[1]
        return [r] if lo < r < hi else []
    dc = np.arange(1, deg + 1) * c[1:]
    crit = _isolate(dc, lo, hi, tol * deg)
    breaks = [lo, *crit, hi]
    values = [_horner2(c, x)[0] for x in breaks]
    inner = [0 < i < len(breaks) - 1 for i in range(len(breaks))]
    # critical points where p is zero up to tol count as touching roots
    flat = [f and abs(v) <= tol for f, v in zip(inner, values)]
    # below the Horner rounding bound the sign at a critical point is noise,
    # so crossings right next to it are a double root split by rounding
    noise = [
        f and abs(v) <= 8 * deg * np.finfo(float).eps * float(np.polyval(np.abs(c[::-1]), abs(x)))
        for f, v, x in zip(inner, values, breaks)
    ]
    roots = []
    for i in range(len(breaks) - 1):
        a, b = breaks[i], breaks[i + 1]
        fa, fb = values[i], values[i + 1]
        if flat[i]:
            roots.append(a)
        if fa * fb < 0.0 and not (noise[i] or noise[i + 1]):
            roots.append(_polish(c, a, b, fa))
    return sorted(roots)


def find_roots(p, lo: float, hi: float, residual_rtol: float = ROOT_RESIDUAL_RTOL) -> Roots:
    """All real roots of ``p`` in the open interval ``(lo, hi)``.

    A critical point where ``|p| <= residual_rtol * p.scale`` counts as a
    (touching) root. Roots closer than ``1e-9`` are merged (keeping the
    smaller), so a double root is reported once. The zero polynomial yields
    an empty result with ``degenerate=True``.
    """
    p = _as_poly(p)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if p.is_zero:
        return Roots([], degenerate=True)
    tol = residual_rtol * p.scale
    raw = _isolate(np.array(p.coeffs), float(lo), float(hi), tol)
    merged = []
    for r in raw:
        if merged and r - merged[-1] < ROOT_MERGE_TOL:
            continue
        merged.append(float(r))
    return Roots(merged)
