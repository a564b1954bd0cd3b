"""Patient trajectory prediction as constrained optimization.

A trajectory is horizon+1 waypoints with fixed endpoints.  The objective
trades path directness (goal term, weight `lam`) against staying close to
external support points; support attraction saturates at the reach distance
so out-of-reach objects exert no pull.  Obstacle avoidance is a quadratic
clearance penalty on the signed distance field, and the per-step velocity
bound is enforced by projection after every gradient step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ._kernels import backend
from .config import FactorCoefficients, PlannerParams
from .errors import EndpointSamplingError, PlanInfeasibleError
from .pipeline_types import Scenario
from .room import RoomLayout, support_points

# support attraction saturates at the far reach distance
REACH_LIMIT = FactorCoefficients().reach_distances[1]

_SAMPLE_ATTEMPTS = 100
_MIN_STEP = 1e-10
_PROJECTION_PASSES = 12


@dataclass
class Trajectory:
    points: np.ndarray             # (horizon+1, 2), endpoints fixed
    start_fixture: Optional[str]
    goal_fixture: Optional[str]
    converged: bool
    objective_value: float
    iterations: int = 0
    history: Optional[np.ndarray] = None  # penalized objective per accepted step

    @property
    def horizon(self) -> int:
        return len(self.points) - 1

    def path_length(self) -> float:
        steps = np.diff(self.points, axis=0)
        return float(np.sum(np.sqrt(np.sum(steps * steps, axis=1))))


def objective(points: np.ndarray, goal: tuple[float, float],
              support_pts: np.ndarray, lam: float,
              reach_limit: float = REACH_LIMIT) -> float:
    """Sum over t=1..h of lam*|p_t - goal|^2 + dist_t.

    dist_t is the squared distance to the nearest support point, saturated
    at reach_limit (squared); with no support points the term is 0.
    """
    pts = np.asarray(points, dtype=float)
    g = np.asarray(goal, dtype=float)
    dg = pts[1:] - g
    total = lam * float(np.sum(dg * dg))
    sp = np.asarray(support_pts, dtype=float)
    if sp.size:
        diff = pts[1:, None, :] - sp.reshape(-1, 2)[None, :, :]
        sq = np.min(np.sum(diff * diff, axis=2), axis=1)
        total += float(np.sum(np.minimum(sq, reach_limit * reach_limit)))
    return total


def trajectory_objective(traj: Trajectory, goal: tuple[float, float],
                         layout: RoomLayout, params: PlannerParams) -> float:
    return objective(traj.points, goal, support_points(layout, params.esp_spacing),
                     params.lam)


def sample_endpoints(scenario: Scenario, layout: RoomLayout,
                     rng: np.random.Generator,
                     clearance: float = PlannerParams().clearance,
                     ) -> tuple[tuple[float, float], tuple[float, float]]:
    """Uniform samples from the start/goal sitting zones, rejected until the
    point is in free space (signed distance >= clearance)."""
    start = _sample_zone(scenario.start, layout, rng, clearance)
    goal = _sample_zone(scenario.goal, layout, rng, clearance)
    return start, goal


def _sample_zone(kind: str, layout: RoomLayout, rng: np.random.Generator,
                 clearance: float) -> tuple[float, float]:
    fixture = layout.fixture(kind)
    if fixture is None:
        raise EndpointSamplingError(f"fixture {kind!r} not present in layout")
    sdf = layout.sdf
    for _ in range(_SAMPLE_ATTEMPTS):
        if fixture.sitting_zone_polygon is not None:
            poly = fixture.sitting_zone_polygon
            lo = poly.min(axis=0)
            hi = poly.max(axis=0)
            p = None
            for _ in range(64):
                cand = lo + rng.random(2) * (hi - lo)
                from . import geometry as geo
                if geo.point_in_polygon((cand[0], cand[1]), poly):
                    p = cand
                    break
            if p is None:
                continue
            x, y = float(p[0]), float(p[1])
        elif fixture.sitting_zone_center is not None:
            r = fixture.sitting_zone_radius * math.sqrt(rng.random())
            theta = 2.0 * math.pi * rng.random()
            x = fixture.sitting_zone_center[0] + r * math.cos(theta)
            y = fixture.sitting_zone_center[1] + r * math.sin(theta)
        else:
            raise EndpointSamplingError(f"fixture {kind!r} has no sitting zone")
        if not (0.0 <= x <= layout.width and 0.0 <= y <= layout.depth):
            continue
        if float(sdf.sample(np.array([[x, y]]))[0]) >= clearance:
            return (x, y)
    raise EndpointSamplingError(
        f"no free-space point found in the sitting zone of {kind!r} "
        f"after {_SAMPLE_ATTEMPTS} attempts")


def _velocity_project(pts: np.ndarray, vdt: float) -> None:
    """Clip step displacements to vdt, alternating forward/backward so both
    fixed endpoints are honored.  In-place."""
    limit2 = vdt * vdt
    for _ in range(_PROJECTION_PASSES):
        steps = np.diff(pts, axis=0)
        if float(np.max(np.sum(steps * steps, axis=1))) <= limit2 * (1 + 1e-12):
            return
        for t in range(1, len(pts) - 1):
            dx = pts[t] - pts[t - 1]
            n = math.sqrt(dx[0] * dx[0] + dx[1] * dx[1])
            if n > vdt:
                pts[t] = pts[t - 1] + dx * (vdt / n)
        for t in range(len(pts) - 2, 0, -1):
            dx = pts[t] - pts[t + 1]
            n = math.sqrt(dx[0] * dx[0] + dx[1] * dx[1])
            if n > vdt:
                pts[t] = pts[t + 1] + dx * (vdt / n)


def _restore_feasibility(pts: np.ndarray, sdf, clearance: float, vdt: float) -> bool:
    """Push sub-clearance points out along the SDF gradient, re-projecting
    velocities only when a push breaks the step bound.

    The quadratic penalty leaves points a force-balance hair inside the
    clearance band; this snaps them out.  In-place; returns success.
    """
    margin = 1e-6
    limit2 = (vdt * (1 + 1e-9)) ** 2

    def velocity_ok():
        steps = np.diff(pts, axis=0)
        return float(np.max(np.sum(steps * steps, axis=1))) <= limit2

    for _ in range(50):
        vals, grads = sdf.sample_with_grad(pts)
        short = clearance - vals
        violating = short > 0.0
        if not violating.any():
            if velocity_ok():
                return True
            _velocity_project(pts, vdt)
            continue
        norms = np.sqrt(np.sum(grads * grads, axis=1))
        ok = violating & (norms > 1e-12)
        if not ok.any():
            return False
        idx = np.where(ok)[0]
        idx = idx[(idx > 0) & (idx < len(pts) - 1)]  # endpoints stay fixed
        if len(idx) == 0:
            return False
        push = (short[idx] + margin) / norms[idx]
        pts[idx] += grads[idx] * push[:, None]
        if not velocity_ok():
            _velocity_project(pts, vdt)
    return False


def _straight_line_clear(s: np.ndarray, g: np.ndarray, sdf, clearance: float) -> bool:
    """True when the straight segment keeps full clearance throughout."""
    n = max(2, int(math.ceil(float(np.hypot(*(g - s))) / 0.05)) + 1)
    t = np.linspace(0.0, 1.0, n)[:, None]
    samples = s[None, :] + t * (g - s)[None, :]
    return bool(np.all(sdf.sample(samples) >= clearance))


def _grid_route(layout: RoomLayout, s: np.ndarray, g: np.ndarray,
                clearance: float) -> np.ndarray:
    """Shortest 8-connected path over cells with sdf >= clearance, as a
    polyline of cell centers from the snapped start to the snapped goal.

    Used to seed the optimizer in the right homotopy class when the straight
    segment crosses an obstacle; raises PlanInfeasibleError when the free
    grid does not connect the endpoints.
    """
    import heapq

    sdf = layout.sdf
    grid = sdf.grid
    rows, cols = grid.shape
    res = sdf.resolution
    passable = grid >= clearance

    def snap(p):
        r = min(max(int(p[1] / res), 0), rows - 1)
        c = min(max(int(p[0] / res), 0), cols - 1)
        if passable[r, c]:
            return r, c
        rr, cc = np.where(passable)
        d = (rr - r) ** 2 + (cc - c) ** 2
        k = int(np.argmin(d))
        return int(rr[k]), int(cc[k])

    sr, sc = snap(s)
    gr, gc = snap(g)
    dist = np.full((rows, cols), np.inf)
    dist[sr, sc] = 0.0
    prev = np.full((rows, cols, 2), -1, dtype=np.int32)
    heap = [(0.0, sr, sc)]
    moves = [(-1, 0, 1.0), (1, 0, 1.0), (0, -1, 1.0), (0, 1, 1.0),
             (-1, -1, math.sqrt(2)), (-1, 1, math.sqrt(2)),
             (1, -1, math.sqrt(2)), (1, 1, math.sqrt(2))]
    while heap:
        d, r, c = heapq.heappop(heap)
        if (r, c) == (gr, gc):
            break
        if d > dist[r, c]:
            continue
        for dr, dc, w in moves:
            nr, nc = r + dr, c + dc
            if not (0 <= nr < rows and 0 <= nc < cols) or not passable[nr, nc]:
                continue
            nd = d + w
            if nd < dist[nr, nc]:
                dist[nr, nc] = nd
                prev[nr, nc] = (r, c)
                heapq.heappush(heap, (nd, nr, nc))
    if not math.isfinite(dist[gr, gc]):
        raise PlanInfeasibleError(
            "free space does not connect start and goal at the required clearance")
    cells = [(gr, gc)]
    while cells[-1] != (sr, sc):
        r, c = cells[-1]
        cells.append(tuple(prev[r, c]))
    cells.reverse()
    return np.array([((c + 0.5) * res, (r + 0.5) * res) for r, c in cells])


def _resample_polyline(points: np.ndarray, n: int) -> np.ndarray:
    """Equal-arclength resampling of a polyline to n points."""
    steps = np.diff(points, axis=0)
    seg = np.sqrt(np.sum(steps * steps, axis=1))
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, arc[-1], n)
    return np.column_stack([np.interp(targets, arc, points[:, 0]),
                            np.interp(targets, arc, points[:, 1])])


def _descend(pts: np.ndarray, params: PlannerParams, goal: np.ndarray,
             esps: np.ndarray, sdf, record_history: bool
             ) -> tuple[np.ndarray, float, float, bool, int, list[float]]:
    """Projected gradient descent with backtracking; monotone in the
    penalized objective.  Returns (points, objective, penalty, tol_met,
    iterations, history)."""
    w = params.obstacle_penalty_weight
    vdt = params.v_max * params.dt
    obj, pen, grad = backend.planner_objective_grad(
        pts, goal, esps, params.lam, REACH_LIMIT, sdf.grid, sdf.resolution,
        sdf.width, sdf.depth, params.clearance, w)
    total = obj + w * pen
    history = [total] if record_history else []
    alpha = 0.01
    tol_met = False
    iterations = 0
    for _ in range(params.max_iterations):
        accepted = False
        for _ in range(60):
            cand = pts - alpha * grad
            cand[0] = pts[0]
            cand[-1] = pts[-1]
            _velocity_project(cand, vdt)
            obj2, pen2, grad2 = backend.planner_objective_grad(
                cand, goal, esps, params.lam, REACH_LIMIT, sdf.grid,
                sdf.resolution, sdf.width, sdf.depth, params.clearance, w)
            total2 = obj2 + w * pen2
            if total2 <= total:
                accepted = True
                break
            alpha *= 0.5
            if alpha < _MIN_STEP:
                break
        if not accepted:
            tol_met = True  # no descent direction at float resolution
            break
        iterations += 1
        rel = (total - total2) / max(abs(total), 1e-12)
        pts, obj, pen, grad, total = cand, obj2, pen2, grad2, total2
        if record_history:
            history.append(total)
        alpha = min(alpha * 1.25, 0.05)
        if rel < params.convergence_tol:
            tol_met = True
            break
    return pts, obj, pen, tol_met, iterations, history


def plan(start: tuple[float, float], goal: tuple[float, float],
         layout: RoomLayout, params: PlannerParams | None = None,
         esps: np.ndarray | None = None, rng: np.random.Generator | None = None,
         start_fixture: str | None = None, goal_fixture: str | None = None,
         record_history: bool = False) -> Trajectory:
    """Optimize a trajectory between fixed endpoints.

    Raises PlanInfeasibleError when no collision-free trajectory is found
    after the jittered restarts, or when the goal is unreachable within the
    horizon at v_max.
    """
    params = params or PlannerParams()
    if esps is None:
        esps = support_points(layout, params.esp_spacing)
    esps = np.ascontiguousarray(np.asarray(esps, dtype=float).reshape(-1, 2))
    if rng is None:
        rng = np.random.default_rng(params.seed)
    sdf = layout.sdf
    s = np.asarray(start, dtype=float)
    g = np.asarray(goal, dtype=float)
    h = params.horizon
    vdt = params.v_max * params.dt

    dist = float(np.hypot(*(g - s)))
    if dist > h * vdt * (1 + 1e-9):
        raise PlanInfeasibleError(
            f"goal {dist:.2f} m away exceeds horizon reach {h * vdt:.2f} m")
    for name, p in (("start", s), ("goal", g)):
        if float(sdf.sample(p[None, :])[0]) < params.clearance:
            raise PlanInfeasibleError(f"{name} point {tuple(p)} is not in free space")

    if dist < 1e-12:
        # degenerate request: stay put
        pts = np.tile(s, (h + 1, 1))
        return Trajectory(points=pts, start_fixture=start_fixture,
                          goal_fixture=goal_fixture, converged=True,
                          objective_value=objective(pts, g, esps, params.lam),
                          iterations=0)

    if _straight_line_clear(s, g, sdf, params.clearance):
        t = np.linspace(0.0, 1.0, h + 1)[:, None]
        base_init = s[None, :] + t * (g - s)[None, :]
    else:
        # seed in the right homotopy class: shortest free grid path
        route = np.vstack([s[None, :], _grid_route(layout, s, g, params.clearance),
                           g[None, :]])
        base_init = _resample_polyline(route, h + 1)
        route_len = float(np.sum(np.sqrt(np.sum(np.diff(route, axis=0) ** 2, axis=1))))
        if route_len > h * vdt * (1 + 1e-9):
            raise PlanInfeasibleError(
                f"detour of {route_len:.2f} m exceeds horizon reach {h * vdt:.2f} m")
        base_init[0] = s
        base_init[-1] = g

    best_pen = math.inf
    for attempt in range(1 + params.max_restarts):
        pts = np.ascontiguousarray(base_init.copy())
        if attempt > 0:
            jitter = rng.normal(0.0, 0.05 * attempt, size=(h - 1, 2))
            pts[1:-1] += jitter
            _velocity_project(pts, vdt)
        # escalate the penalty weight when restoration cannot close the gap
        work = params
        for _ in range(3):
            pts, obj, pen, tol_met, iters, history = _descend(
                pts, work, g, esps, sdf, record_history)
            best_pen = min(best_pen, pen)
            if _restore_feasibility(pts, sdf, params.clearance, vdt):
                return Trajectory(
                    points=pts, start_fixture=start_fixture,
                    goal_fixture=goal_fixture, converged=tol_met,
                    objective_value=objective(pts, g, esps, params.lam),
                    iterations=iters,
                    history=np.array(history) if record_history else None)
            work = replace(work, obstacle_penalty_weight=work.obstacle_penalty_weight * 10)
    raise PlanInfeasibleError(
        f"no collision-free trajectory after {params.max_restarts} restarts "
        f"(best residual penetration {math.sqrt(best_pen):.3f} m)")


def oracle_plan(start: tuple[float, float], goal: tuple[float, float],
                layout: RoomLayout, params: PlannerParams | None = None,
                coarse_resolution: float = 0.2,
                esps: np.ndarray | None = None) -> Trajectory:
    """Exact DP minimization of the discretized objective (test oracle).

    States are coarse cell centers with the same clearance rule as plan();
    per-step moves are bounded by v_max*dt.  Memory grows with
    cells x horizon, so keep rooms desk-scale.
    """
    params = params or PlannerParams()
    if esps is None:
        esps = support_points(layout, params.esp_spacing)
    esps = np.asarray(esps, dtype=float).reshape(-1, 2)
    cr = coarse_resolution
    cols = int(round(layout.width / cr))
    rows = int(round(layout.depth / cr))
    h = params.horizon
    if rows * cols * (h + 1) > 4_000_000:
        raise MemoryError("oracle state space too large; coarsen the grid")
    xs = (np.arange(cols) + 0.5) * cr
    ys = (np.arange(rows) + 0.5) * cr
    xx, yy = np.meshgrid(xs, ys)
    centers = np.column_stack([xx.ravel(), yy.ravel()])

    feasible = layout.sdf.sample(centers) >= params.clearance
    if not feasible.any():
        raise PlanInfeasibleError("no feasible cells at oracle resolution")

    g = np.asarray(goal, dtype=float)
    stage = params.lam * np.sum((centers - g) ** 2, axis=1)
    if esps.size:
        diff = centers[:, None, :] - esps[None, :, :]
        sq = np.min(np.sum(diff * diff, axis=2), axis=1)
        stage = stage + np.minimum(sq, REACH_LIMIT * REACH_LIMIT)
    stage[~feasible] = np.inf

    def snap(p):
        d = np.sum((centers - np.asarray(p, dtype=float)) ** 2, axis=1)
        d[~feasible] = np.inf
        return int(np.argmin(d))

    start_idx = snap(start)
    goal_idx = snap(goal)

    vdt = params.v_max * params.dt
    reach = int(math.floor(vdt / cr + 1e-9))
    offsets = [(dr, dc) for dr in range(-reach, reach + 1)
               for dc in range(-reach, reach + 1)
               if math.hypot(dr * cr, dc * cr) <= vdt + 1e-9]

    inf = np.inf
    cost = np.full((rows, cols), inf)
    cost.ravel()[start_idx] = 0.0
    stage2 = stage.reshape(rows, cols)
    parents = np.zeros((h, rows, cols), dtype=np.int32)
    for step in range(h):
        best = np.full((rows, cols), inf)
        best_src = np.zeros((rows, cols), dtype=np.int32)
        for k, (dr, dc) in enumerate(offsets):
            # cost of arriving from the cell displaced by (-dr, -dc)
            shifted = np.full((rows, cols), inf)
            r0, r1 = max(0, dr), min(rows, rows + dr)
            c0, c1 = max(0, dc), min(cols, cols + dc)
            shifted[r0:r1, c0:c1] = cost[r0 - dr:r1 - dr, c0 - dc:c1 - dc]
            better = shifted < best
            best[better] = shifted[better]
            best_src[better] = k
        cost = best + stage2
        parents[step] = best_src

    final_cost = float(cost.ravel()[goal_idx])
    if not math.isfinite(final_cost):
        raise PlanInfeasibleError("oracle found no feasible path")

    # backtrack
    path = np.zeros((h + 1, 2))
    r, c = divmod(goal_idx, cols)
    for step in range(h, 0, -1):
        path[step] = centers[r * cols + c]
        dr, dc = offsets[parents[step - 1, r, c]]
        r, c = r - dr, c - dc
    path[0] = centers[r * cols + c]
    assert r * cols + c == start_idx

    return Trajectory(points=path, start_fixture=None, goal_fixture=None,
                      converged=True, objective_value=final_cost,
                      iterations=h)
