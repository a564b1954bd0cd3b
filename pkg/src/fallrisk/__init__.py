"""Spatial fall-risk evaluation for hospital patient-room layouts.

The pipeline: parse a layout -> per-cell static risk fields (floor, light,
support, door) and their product -> predicted patient trajectories for a
scenario set -> per-point dynamic risk -> aggregated final field.
"""

from ._kernels import BACKEND_NAME
from .baseline import BaselineResult, baseline, door_factor, floor_factor, illuminance, light_factor, support_factor
from .config import EvalSettings, FactorCoefficients, MotionFactors, PlannerParams, load_config
from .errors import (
    ConfigError,
    EndpointSamplingError,
    FallriskError,
    LayoutError,
    NoSupportObjectsError,
    PlanInfeasibleError,
)
from .pipeline import EvaluationResult, Scenario, aggregate, default_scenarios, evaluate_room
from .planner import Trajectory, objective, oracle_plan, plan, sample_endpoints
from .room import RoomLayout, derive_support_level, load_layout, parse_layout

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "BaselineResult",
    "ConfigError",
    "EndpointSamplingError",
    "EvalSettings",
    "EvaluationResult",
    "FactorCoefficients",
    "FallriskError",
    "LayoutError",
    "MotionFactors",
    "NoSupportObjectsError",
    "PlanInfeasibleError",
    "PlannerParams",
    "RoomLayout",
    "Scenario",
    "Trajectory",
    "aggregate",
    "baseline",
    "default_scenarios",
    "derive_support_level",
    "door_factor",
    "evaluate_room",
    "floor_factor",
    "illuminance",
    "light_factor",
    "load_config",
    "load_layout",
    "objective",
    "oracle_plan",
    "parse_layout",
    "plan",
    "sample_endpoints",
    "support_factor",
]
