"""Pure-numpy implementations of the hot kernels.

Semantics here are the contract; the compiled backend in _native.pyx must
match it (same formulas, same tie-breaking).  Accumulation order of sums may
differ between backends by a few ulp, which callers must not rely on.
"""

from __future__ import annotations

import numpy as np

NAME = "pure"


def nearest_segment_distance(points, segments, owners, n_owners):
    """Distance from each point to the closest of M segments.

    Returns (dist (N,), owner (N,) int32); ties resolve to the earliest
    segment, and therefore the earliest owner, in array order.
    """
    pts = np.ascontiguousarray(points, dtype=float)
    seg = np.ascontiguousarray(segments, dtype=float)
    a = seg[:, 0:2][None, :, :]
    d = (seg[:, 2:4] - seg[:, 0:2])[None, :, :]
    L2 = np.sum(d * d, axis=2)
    rel = pts[:, None, :] - a
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.sum(rel * d, axis=2) / L2
    t = np.where(L2 > 0.0, np.clip(t, 0.0, 1.0), 0.0)
    proj = a + t[:, :, None] * d
    diff = pts[:, None, :] - proj
    dists = np.sqrt(np.sum(diff * diff, axis=2))
    j = np.argmin(dists, axis=1)
    rows = np.arange(len(pts))
    return dists[rows, j], np.asarray(owners)[j].astype(np.int32)


def sdf_sample(points, grid, res, width, depth):
    """Bilinear sample of a cell-center signed-distance grid.

    Points outside the room rectangle get the exact (negative) distance to
    it, with the gradient pointing back inside.
    """
    pts = np.ascontiguousarray(points, dtype=float)
    rows, cols = grid.shape
    x, y = pts[:, 0], pts[:, 1]
    vals = np.empty(len(pts))
    grads = np.zeros((len(pts), 2))

    outside = (x < 0.0) | (x > width) | (y < 0.0) | (y > depth)
    if outside.any():
        cx = np.clip(x[outside], 0.0, width)
        cy = np.clip(y[outside], 0.0, depth)
        dx = cx - x[outside]
        dy = cy - y[outside]
        dist = np.sqrt(dx * dx + dy * dy)
        vals[outside] = -dist
        grads[outside, 0] = dx / dist
        grads[outside, 1] = dy / dist

    inside = ~outside
    if inside.any():
        gx = x[inside] / res - 0.5
        gy = y[inside] / res - 0.5
        j = np.clip(np.floor(gx).astype(np.int64), 0, max(cols - 2, 0))
        i = np.clip(np.floor(gy).astype(np.int64), 0, max(rows - 2, 0))
        fx = np.clip(gx - j, 0.0, 1.0)
        fy = np.clip(gy - i, 0.0, 1.0)
        j1 = np.minimum(j + 1, cols - 1)
        i1 = np.minimum(i + 1, rows - 1)
        v00 = grid[i, j]
        v01 = grid[i, j1]
        v10 = grid[i1, j]
        v11 = grid[i1, j1]
        vx0 = v00 + (v01 - v00) * fx
        vx1 = v10 + (v11 - v10) * fx
        vals[inside] = vx0 + (vx1 - vx0) * fy
        grads[inside, 0] = ((v01 - v00) * (1.0 - fy) + (v11 - v10) * fy) / res
        grads[inside, 1] = (vx1 - vx0) / res
    return vals, grads


# clearance penalty samples on the open interior of each segment; enough to
# stop a v_max*dt step from hopping a one-cell wall plus clearance band
SEGMENT_SAMPLES = (0.25, 0.5, 0.75)


def planner_objective_grad(pts, goal, esps, lam, d2, grid, res, width, depth,
                           clearance, w_obs):
    """Objective, collision penalty and gradient for one waypoint vector.

    Objective: sum over t = 1..T-1 of lam*|p_t - goal|^2 plus squared
    distance to the nearest support point saturated at d2 (no attraction
    beyond reach).  Penalty: squared clearance shortfall of the signed
    distance, at every waypoint and at interior samples of every segment
    (so a single step cannot tunnel through a thin wall).  Gradient covers
    interior waypoints only.
    """
    pts = np.ascontiguousarray(pts, dtype=float)
    T = len(pts)
    grad = np.zeros_like(pts)

    dg = pts[1:] - np.asarray(goal, dtype=float)
    obj = lam * float(np.sum(dg * dg))
    grad[1:] += 2.0 * lam * dg

    esps = np.ascontiguousarray(esps, dtype=float)
    if len(esps):
        diff = pts[1:, None, :] - esps[None, :, :]
        sq = np.sum(diff * diff, axis=2)
        idx = np.argmin(sq, axis=1)
        dmin2 = sq[np.arange(T - 1), idx]
        sat = dmin2 > d2 * d2
        obj += float(np.sum(np.where(sat, d2 * d2, dmin2)))
        pull = 2.0 * (pts[1:] - esps[idx])
        pull[sat] = 0.0
        grad[1:] += pull

    vals, sgrads = sdf_sample(pts, grid, res, width, depth)
    hinge = np.maximum(0.0, clearance - vals)
    penalty = float(np.sum(hinge * hinge))
    grad -= (2.0 * w_obs) * hinge[:, None] * sgrads

    step = np.diff(pts, axis=0)
    for a in SEGMENT_SAMPLES:
        mids = pts[:-1] + a * step
        mv, mg = sdf_sample(mids, grid, res, width, depth)
        mh = np.maximum(0.0, clearance - mv)
        penalty += float(np.sum(mh * mh))
        pull = (2.0 * w_obs) * mh[:, None] * mg
        grad[:-1] -= (1.0 - a) * pull
        grad[1:] -= a * pull

    grad[0] = 0.0
    grad[T - 1] = 0.0
    return obj, penalty, grad
