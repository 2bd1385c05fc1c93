"""Random data generators shared by the test modules."""

import numpy as np
from hypothesis import strategies as st

from curvelab.curvature import squared_curvature_local
from curvelab.spline import CubicSegment, PointSet


def random_points(rng, count, dim, spread=10.0):
    """``count`` points with no two consecutive ones closer than 1e-3 * spread."""
    while True:
        pts = rng.uniform(-spread, spread, size=(count, dim))
        gaps = np.linalg.norm(np.diff(np.vstack([pts, pts[:1]]), axis=0), axis=1)
        if gaps.min() > 1e-3 * spread:
            return pts


def random_pointset(rng, count, dim):
    return PointSet(random_points(rng, count, dim))


def random_rotation(rng, dim):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.sampled_from([2, 3])
kinds = st.sampled_from(["relaxed", "periodic"])
point_counts = st.integers(min_value=3, max_value=51)


def random_segment(rng, dim):
    """A cubic segment with random controls in [-10, 10]^dim."""
    return CubicSegment(rng.uniform(-10, 10, size=(4, dim)), 1)


def fd_sign_changes(seg, samples=100_000):
    """Brackets (u_i, u_{i+1}) where a central-difference dK/du changes sign.

    K is the squared curvature, sampled on a uniform grid strictly inside
    (0, 1). Returns the brackets and the grid spacing.
    """
    h = 1.0 / (samples + 1)
    u = np.linspace(h, 1.0 - h, samples)
    dK = (squared_curvature_local(seg, u + 0.5 * h) - squared_curvature_local(seg, u - 0.5 * h)) / h
    idx = np.nonzero(np.sign(dK[:-1]) * np.sign(dK[1:]) < 0)[0]
    return [(u[i], u[i + 1]) for i in idx], h
