"""Convex hulls of lattice points and Hausdorff distance between them (d <= 2)."""
from __future__ import annotations

import numpy as np


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Hull vertices of a point cloud.

    For ``d = 1`` returns the two interval endpoints; for ``d = 2`` the vertices
    in counter-clockwise order (Andrew's monotone chain, collinear points
    dropped). Degenerate clouds give one or two vertices.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) == 0:
        raise ValueError("need a nonempty (n, d) array of points")
    d = pts.shape[1]
    if d == 1:
        lo, hi = pts.min(), pts.max()
        return np.array([[lo]]) if lo == hi else np.array([[lo], [hi]])
    if d != 2:
        raise ValueError("convex hulls are supported for d <= 2")
    uniq = np.unique(pts, axis=0)  # lexicographic
    if len(uniq) <= 2:
        return uniq

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in uniq:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in uniq[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def minkowski_hull(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Hull of ``conv(u) + conv(v)`` from the two vertex sets."""
    sums = (u[:, None, :] + v[None, :, :]).reshape(-1, u.shape[1])
    return convex_hull(sums)


def _segment_distance(p, a, b) -> float:
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0 else float(np.clip((p - a) @ ab / denom, 0.0, 1.0))
    return float(np.linalg.norm(p - (a + t * ab)))


def distance_to_hull(p: np.ndarray, hull: np.ndarray) -> float:
    """Euclidean distance from ``p`` to the filled convex hull with the given vertices."""
    p = np.asarray(p, dtype=float)
    if hull.shape[1] == 1:
        lo, hi = hull[:, 0].min(), hull[:, 0].max()
        return float(max(lo - p[0], p[0] - hi, 0.0))
    n = len(hull)
    if n == 1:
        return float(np.linalg.norm(p - hull[0]))
    if n == 2:
        return _segment_distance(p, hull[0], hull[1])
    edges = np.roll(hull, -1, axis=0) - hull
    rel = p - hull
    crosses = edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0]
    if np.all(crosses >= 0):
        return 0.0
    return min(_segment_distance(p, hull[i], hull[(i + 1) % n]) for i in range(n))


def hausdorff(hull_p: np.ndarray, hull_q: np.ndarray) -> float:
    """Hausdorff distance between two filled convex hulls.

    Distance to a convex set is a convex function, so its maximum over a
    polytope is attained at a vertex.
    """
    d1 = max(distance_to_hull(v, hull_q) for v in hull_p)
    d2 = max(distance_to_hull(v, hull_p) for v in hull_q)
    return float(max(d1, d2))
