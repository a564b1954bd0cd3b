"""2-D geometric primitives used by the room model.

Everything works on plain float pairs / numpy arrays; polygons are (V, 2)
vertex arrays in counter-clockwise or clockwise order (no closing repeat).
"""

from __future__ import annotations

import math

import numpy as np

Point = tuple[float, float]

# tolerance for "on the boundary" decisions
BOUNDARY_EPS = 1e-9


def as_poly(vertices) -> np.ndarray:
    poly = np.asarray(vertices, dtype=float)
    if poly.ndim != 2 or poly.shape[1] != 2 or poly.shape[0] < 3:
        raise ValueError("polygon needs at least 3 (x, y) vertices")
    return poly


def polygon_area(poly: np.ndarray) -> float:
    """Signed shoelace area (positive for counter-clockwise order)."""
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_edges(poly: np.ndarray) -> np.ndarray:
    """Edges as an (E, 4) array of (x1, y1, x2, y2)."""
    nxt = np.roll(poly, -1, axis=0)
    return np.hstack([poly, nxt])


def _segments_properly_intersect(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if abs(v) < 1e-12:
            return 0
        return 1 if v > 0 else -1

    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)
    return o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4)


def polygon_is_simple(poly: np.ndarray) -> bool:
    """True when no two non-adjacent edges properly cross."""
    n = len(poly)
    edges = [(poly[i], poly[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            if _segments_properly_intersect(*edges[i], *edges[j]):
                return False
    return True


def point_segment_distance(px: float, py: float, x1: float, y1: float, x2: float, y2: float) -> float:
    dx, dy = x2 - x1, y2 - y1
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        return math.hypot(px - x1, py - y1)
    t = ((px - x1) * dx + (py - y1) * dy) / L2
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return math.hypot(px - (x1 + t * dx), py - (y1 + t * dy))


def points_segments_distance(points: np.ndarray, segments: np.ndarray) -> np.ndarray:
    """Distance matrix (N, M) from each point to each segment.

    `segments` is (M, 4) as (x1, y1, x2, y2).
    """
    pts = np.asarray(points, dtype=float)
    seg = np.asarray(segments, dtype=float)
    a = seg[:, 0:2][None, :, :]          # (1, M, 2)
    d = (seg[:, 2:4] - seg[:, 0:2])[None, :, :]
    L2 = np.sum(d * d, axis=2)           # (1, M)
    rel = pts[:, None, :] - a            # (N, M, 2)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.sum(rel * d, axis=2) / L2
    t = np.where(L2 > 0.0, np.clip(t, 0.0, 1.0), 0.0)
    proj = a + t[:, :, None] * d
    diff = pts[:, None, :] - proj
    return np.sqrt(np.sum(diff * diff, axis=2))


def points_in_polygon(points: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Even-odd containment test; points on the boundary count as inside.

    Vectorized ray crossing with an explicit boundary-distance check so that
    cell centers sitting exactly on a shared region edge resolve
    deterministically.
    """
    pts = np.asarray(points, dtype=float)
    poly = as_poly(poly)
    x, y = pts[:, 0], pts[:, 1]
    x1, y1 = poly[:, 0], poly[:, 1]
    x2, y2 = np.roll(x1, -1), np.roll(y1, -1)

    inside = np.zeros(len(pts), dtype=bool)
    for i in range(len(poly)):
        cond = (y1[i] > y) != (y2[i] > y)
        if not cond.any():
            continue
        xs = (x2[i] - x1[i]) * (y - y1[i]) / (y2[i] - y1[i]) + x1[i]
        inside ^= cond & (x < xs)

    near = points_segments_distance(pts, polygon_edges(poly)).min(axis=1) <= BOUNDARY_EPS
    return inside | near


def points_strictly_in_polygon(points: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Containment excluding a BOUNDARY_EPS band around the outline."""
    pts = np.asarray(points, dtype=float)
    inside = points_in_polygon(pts, poly)
    near = points_segments_distance(pts, polygon_edges(poly)).min(axis=1) <= BOUNDARY_EPS
    return inside & ~near


def point_in_polygon(p: Point, poly) -> bool:
    return bool(points_in_polygon(np.array([p], dtype=float), as_poly(poly))[0])


def polygon_boundary_samples(poly: np.ndarray, spacing: float) -> np.ndarray:
    """Points along the outline at most `spacing` apart (vertices included)."""
    return sample_segments(polygon_edges(poly), spacing)


def sample_segments(segments: np.ndarray, spacing: float) -> np.ndarray:
    """Sample each (x1, y1, x2, y2) segment at most `spacing` apart."""
    seg = np.asarray(segments, dtype=float)
    out = []
    for x1, y1, x2, y2 in seg:
        length = math.hypot(x2 - x1, y2 - y1)
        n = max(1, int(math.ceil(length / spacing)))
        t = np.linspace(0.0, 1.0, n + 1)
        out.append(np.column_stack([x1 + t * (x2 - x1), y1 + t * (y2 - y1)]))
    if not out:
        return np.empty((0, 2))
    return np.vstack(out)


def heading_change_deg(a: Point, b: Point, c: Point) -> float:
    """Unsigned angle in degrees between segments a->b and b->c.

    Returns 0.0 when either segment is degenerate.
    """
    v1 = (b[0] - a[0], b[1] - a[1])
    v2 = (c[0] - b[0], c[1] - b[1])
    n1 = math.hypot(*v1)
    n2 = math.hypot(*v2)
    if n1 == 0.0 or n2 == 0.0:
        return 0.0
    dot = (v1[0] * v2[0] + v1[1] * v2[1]) / (n1 * n2)
    dot = max(-1.0, min(1.0, dot))
    return math.degrees(math.acos(dot))
