"""Planar convex geometry: hulls, half-plane polygons, Hausdorff distances.

Points are (m, 2) float arrays; polygons are vertex arrays in counter-
clockwise order.  Degenerate polygons (single point, segment) are allowed
everywhere.
"""

from __future__ import annotations

import numpy as np


def convex_hull(points) -> np.ndarray:
    """Monotone-chain hull, CCW vertices; collinear inputs give the two
    extreme points, a single repeated point gives one vertex."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = np.any(np.abs(np.diff(pts, axis=0)) > 0.0, axis=1)
    pts = pts[keep]
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) > 1 and cross(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in pts[::-1]:
        while len(upper) > 1 and cross(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def halfplane_polygon(thetas, supports) -> np.ndarray:
    """Vertices of the intersection of half-planes
    {z : Re(exp(-i theta_k) z) <= h_k} for an increasing angle grid.

    Vertex k solves the system of the adjacent supporting lines k, k+1;
    valid whenever consecutive angle gaps stay below pi.
    """
    th = np.asarray(thetas, dtype=float)
    h = np.asarray(supports, dtype=float)
    m = len(th)
    if m < 3:
        raise ValueError("need at least 3 directions")
    th2 = np.roll(th, -1)
    h2 = np.roll(h, -1)
    det = np.sin(th2 - th)
    if np.any(np.abs(det) < 1e-12):
        raise ValueError("consecutive directions too close or antipodal")
    x = (h * np.sin(th2) - h2 * np.sin(th)) / det
    y = (h2 * np.cos(th) - h * np.cos(th2)) / det
    return np.column_stack([x, y])


def _edges_distance(p, a, b) -> float:
    """Least distance from p to the segments a[i] -> b[i]."""
    ab = b - a
    ap = p[None, :] - a
    denom = np.einsum("ij,ij->i", ab, ab)
    t = np.einsum("ij,ij->i", ap, ab) / np.where(denom > 0.0, denom, 1.0)
    t = np.clip(np.where(denom > 0.0, t, 0.0), 0.0, 1.0)
    closest = a + t[:, None] * ab
    return float(np.min(np.hypot(p[0] - closest[:, 0], p[1] - closest[:, 1])))


def point_polygon_distance(p, poly) -> float:
    """Distance from a point to a filled convex polygon (0 if inside)."""
    p = np.asarray(p, dtype=float)
    poly = np.asarray(poly, dtype=float).reshape(-1, 2)
    k = len(poly)
    if k == 1:
        return float(np.hypot(*(p - poly[0])))
    if k == 2:
        return _edges_distance(p, poly[:1], poly[1:])
    a = poly
    b = np.roll(poly, -1, axis=0)
    cross = (b[:, 0] - a[:, 0]) * (p[1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (p[0] - a[:, 0])
    if np.all(cross >= 0.0):
        return 0.0
    return _edges_distance(p, a, b)


def directed_hausdorff(pts, poly) -> float:
    """max over pts of the distance to the filled convex polygon."""
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        return 0.0
    return max(point_polygon_distance(p, poly) for p in pts)


def hausdorff(poly_a, poly_b) -> float:
    """Symmetric Hausdorff distance between two filled convex polygons.

    For convex sets the supremum of the distance function is attained at a
    vertex, so vertex-to-polygon distances are exact.
    """
    return max(directed_hausdorff(poly_a, poly_b), directed_hausdorff(poly_b, poly_a))


def polygon_support(poly, theta) -> float:
    """Support value max Re(exp(-i theta) z) over the polygon vertices."""
    poly = np.asarray(poly, dtype=float).reshape(-1, 2)
    return float(np.max(np.cos(theta) * poly[:, 0] + np.sin(theta) * poly[:, 1]))
