"""Per-point trajectory evaluation: activity tagging, turning, risk.

Activity comes from the sitting zones of the scenario's fixtures, turning
from the discrete heading change between adjacent segments, and the point
risk is the baseline value of the containing cell times both multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import geometry as geo
from .baseline import BaselineResult
from .config import MotionFactors
from .planner import Trajectory
from .room import GridIndex, RoomLayout

ACTIVITIES = ("sit_to_stand", "stand_to_sit", "walking")
TURNS = ("none", "up_to_45", "over_45")


@dataclass(frozen=True)
class EvaluatedPoint:
    t: int
    position: tuple[float, float]
    cell: GridIndex
    activity: str
    turning: str
    activity_factor: float
    turning_factor: float
    risk: float
    excluded: bool = False  # point fell in an occupied cell


def activity_factor(kind: str, motion: MotionFactors | None = None) -> float:
    motion = motion or MotionFactors()
    return {"sit_to_stand": motion.sit_to_stand,
            "stand_to_sit": motion.stand_to_sit,
            "walking": motion.walking}[kind]


def turning_factor(kind: str, motion: MotionFactors | None = None) -> float:
    motion = motion or MotionFactors()
    return {"none": motion.turn_none,
            "up_to_45": motion.turn_up_to_45,
            "over_45": motion.turn_over_45}[kind]


def tag_activity(t: int, traj: Trajectory, layout: RoomLayout) -> str:
    """Sit-to-stand in the start fixture's zone, stand-to-sit in the goal's,
    walking elsewhere; when zones overlap the start zone wins for the first
    half of the trajectory."""
    x, y = traj.points[t]
    start_fx = layout.fixture(traj.start_fixture) if traj.start_fixture else None
    goal_fx = layout.fixture(traj.goal_fixture) if traj.goal_fixture else None
    in_start = start_fx is not None and start_fx.in_sitting_zone(x, y)
    in_goal = goal_fx is not None and goal_fx.in_sitting_zone(x, y)
    if in_start and in_goal:
        return "sit_to_stand" if t < traj.horizon / 2 else "stand_to_sit"
    if in_start:
        return "sit_to_stand"
    if in_goal:
        return "stand_to_sit"
    return "walking"


def tag_turning(t: int, traj: Trajectory,
                deadband_deg: float = MotionFactors().turn_deadband_deg) -> str:
    """Category of the unsigned heading change at an interior point;
    endpoints and degenerate segments count as no turning."""
    if t <= 0 or t >= traj.horizon:
        return "none"
    a, b, c = traj.points[t - 1], traj.points[t], traj.points[t + 1]
    if np.allclose(a, b) or np.allclose(b, c):
        return "none"
    angle = geo.heading_change_deg(tuple(a), tuple(b), tuple(c))
    if angle <= deadband_deg:
        return "none"
    if angle <= 45.0:
        return "up_to_45"
    return "over_45"


def evaluate_trajectory(traj: Trajectory, base: BaselineResult,
                        layout: RoomLayout,
                        motion: MotionFactors | None = None) -> list[EvaluatedPoint]:
    """Risk per trajectory point.

    Points in occupied cells (possible only for non-converged trajectories)
    are flagged excluded; points off the grid are an error.
    """
    motion = motion or MotionFactors()
    raster = layout.raster
    out = []
    for t, (x, y) in enumerate(traj.points):
        col = int(x / raster.resolution)
        row = int(y / raster.resolution)
        if not raster.in_bounds(row, col):
            raise ValueError(f"trajectory point {t} at ({x:.2f}, {y:.2f}) "
                             "is outside the grid")
        activity = tag_activity(t, traj, layout)
        turning = tag_turning(t, traj, motion.turn_deadband_deg)
        af = activity_factor(activity, motion)
        tf = turning_factor(turning, motion)
        b = float(base.baseline[row, col])
        if np.isnan(b):
            out.append(EvaluatedPoint(
                t=t, position=(float(x), float(y)), cell=GridIndex(row, col),
                activity=activity, turning=turning, activity_factor=af,
                turning_factor=tf, risk=float("nan"), excluded=True))
        else:
            out.append(EvaluatedPoint(
                t=t, position=(float(x), float(y)), cell=GridIndex(row, col),
                activity=activity, turning=turning, activity_factor=af,
                turning_factor=tf, risk=b * af * tf))
    return out
