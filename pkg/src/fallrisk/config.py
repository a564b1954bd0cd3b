"""Coefficient tables and planner parameters, plus config-file overrides.

Default values follow the published effect sizes: floor surface / transition
constants, the three-band light factor, the truncated-linear support reach
model, the four door classes, and the activity / turning multipliers.  Any
of them can be overridden from a YAML config file; `default_coefficients.yaml`
in the package data documents each entry.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field, replace
from typing import Any

import yaml

from .errors import ConfigError

ENV_CONFIG = "FALLRISK_CONFIG"

# layout enums are lowercase strings in files; keep the canonical sets here
SURFACES = ("resilient", "hard")
DOOR_OPERATIONS = ("swing", "slide")
DOOR_WIDTHS = ("narrow", "wide")
NARROW_DOOR_MAX_M = 0.9144  # 36 inches


@dataclass(frozen=True)
class FactorCoefficients:
    """Static-factor coefficients; defaults reproduce the published table."""

    # additive risk constant per floor surface (c_i)
    floor_surface: dict[str, float] = field(
        default_factory=lambda: {"resilient": 0.0, "hard": 0.05}
    )
    # additive constant per transition direction (c_ij), keyed (from, to)
    floor_transition: dict[tuple[str, str], float] = field(
        default_factory=lambda: {
            ("resilient", "hard"): 0.05,
            ("hard", "resilient"): 0.05,
        }
    )
    light_low: float = 1.07
    light_mid: float = 1.03
    lux_thresholds: tuple[float, float] = (100.0, 500.0)
    support_close_numerator: float = 0.8   # theta_1
    support_far_numerator: float = 1.0     # theta_2
    reach_distances: tuple[float, float] = (0.8, 1.5)  # (d1, d2) meters
    door: dict[tuple[str, str], float] = field(
        default_factory=lambda: {
            ("swing", "narrow"): 1.20,
            ("swing", "wide"): 1.10,
            ("slide", "narrow"): 1.07,
            ("slide", "wide"): 1.04,
        }
    )


@dataclass(frozen=True)
class MotionFactors:
    """Per-point multipliers applied along trajectories."""

    sit_to_stand: float = 1.05
    stand_to_sit: float = 1.10
    walking: float = 1.20
    turn_none: float = 1.0
    turn_up_to_45: float = 1.2
    turn_over_45: float = 1.4
    turn_deadband_deg: float = 5.0


@dataclass(frozen=True)
class PlannerParams:
    """Trajectory-optimization knobs.

    `lam` trades path directness against staying near support points; the
    default gait speed is the ambient-light walking speed (0.856 m/s).
    """

    lam: float = 1.0
    horizon: int = 50            # steps; trajectory has horizon+1 points
    dt: float = 0.5              # seconds
    v_max: float = 0.856         # meters/second
    clearance: float = 0.15      # required signed distance, meters
    obstacle_penalty_weight: float = 50.0
    convergence_tol: float = 1e-6  # relative objective change
    max_iterations: int = 2000
    esp_spacing: float = 0.2     # max gap between support samples, meters
    max_restarts: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.lam < 0:
            raise ConfigError("planner.lam", "must be >= 0")
        if self.horizon < 2:
            raise ConfigError("planner.horizon", "must be >= 2")
        if self.v_max <= 0:
            raise ConfigError("planner.v_max", "must be > 0")


@dataclass(frozen=True)
class EvalSettings:
    """Bundle of everything evaluate_room needs besides the layout."""

    coefficients: FactorCoefficients = field(default_factory=FactorCoefficients)
    motion: MotionFactors = field(default_factory=MotionFactors)
    planner: PlannerParams = field(default_factory=PlannerParams)


_TRANSITION_KEYS = {
    "resilient_to_hard": ("resilient", "hard"),
    "hard_to_resilient": ("hard", "resilient"),
    "resilient_to_resilient": ("resilient", "resilient"),
    "hard_to_hard": ("hard", "hard"),
}
_DOOR_KEYS = {
    "swing_narrow": ("swing", "narrow"),
    "swing_wide": ("swing", "wide"),
    "slide_narrow": ("slide", "narrow"),
    "slide_wide": ("slide", "wide"),
}


def _require_number(section: str, key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}.{key}", f"expected a number, got {value!r}")
    return float(value)


def _apply_section(section: str, data: dict, allowed: dict[str, Any]) -> dict[str, float]:
    if not isinstance(data, dict):
        raise ConfigError(section, "expected a mapping")
    out = {}
    for key, value in data.items():
        if key not in allowed:
            raise ConfigError(f"{section}.{key}", "unknown field")
        out[key] = _require_number(section, key, value)
    return out


def merge_config(settings: EvalSettings, doc: dict) -> EvalSettings:
    """Overlay a parsed config document onto existing settings."""
    if doc is None:
        return settings
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "config document must be a mapping")
    coeffs = settings.coefficients
    motion = settings.motion
    planner = settings.planner
    for section, data in doc.items():
        if section == "floor":
            fields = _apply_section(section, data, {
                "resilient": 0, "hard": 0, **_TRANSITION_KEYS})
            surface = dict(coeffs.floor_surface)
            transition = dict(coeffs.floor_transition)
            for key, value in fields.items():
                if key in ("resilient", "hard"):
                    surface[key] = value
                else:
                    transition[_TRANSITION_KEYS[key]] = value
            coeffs = replace(coeffs, floor_surface=surface, floor_transition=transition)
        elif section == "light":
            fields = _apply_section(section, data, {
                "low_factor": 0, "mid_factor": 0, "low_lux": 0, "high_lux": 0})
            coeffs = replace(
                coeffs,
                light_low=fields.get("low_factor", coeffs.light_low),
                light_mid=fields.get("mid_factor", coeffs.light_mid),
                lux_thresholds=(
                    fields.get("low_lux", coeffs.lux_thresholds[0]),
                    fields.get("high_lux", coeffs.lux_thresholds[1]),
                ),
            )
        elif section == "support":
            fields = _apply_section(section, data, {
                "close_numerator": 0, "far_numerator": 0,
                "close_distance": 0, "reach_distance": 0})
            coeffs = replace(
                coeffs,
                support_close_numerator=fields.get(
                    "close_numerator", coeffs.support_close_numerator),
                support_far_numerator=fields.get(
                    "far_numerator", coeffs.support_far_numerator),
                reach_distances=(
                    fields.get("close_distance", coeffs.reach_distances[0]),
                    fields.get("reach_distance", coeffs.reach_distances[1]),
                ),
            )
        elif section == "door":
            fields = _apply_section(section, data, _DOOR_KEYS)
            door = dict(coeffs.door)
            for key, value in fields.items():
                door[_DOOR_KEYS[key]] = value
            coeffs = replace(coeffs, door=door)
        elif section == "activity":
            fields = _apply_section(section, data, {
                "sit_to_stand": 0, "stand_to_sit": 0, "walking": 0})
            motion = replace(motion, **fields)
        elif section == "turning":
            fields = _apply_section(section, data, {
                "none": 0, "up_to_45": 0, "over_45": 0, "deadband_deg": 0})
            rename = {"none": "turn_none", "up_to_45": "turn_up_to_45",
                      "over_45": "turn_over_45", "deadband_deg": "turn_deadband_deg"}
            motion = replace(motion, **{rename[k]: v for k, v in fields.items()})
        elif section == "planner":
            allowed = {f.name: 0 for f in dataclasses.fields(PlannerParams)}
            fields = _apply_section(section, data, allowed)
            ints = {"horizon", "max_iterations", "max_restarts", "seed"}
            planner = replace(planner, **{
                k: (int(v) if k in ints else v) for k, v in fields.items()})
        else:
            raise ConfigError(section, "unknown config section")
    return EvalSettings(coefficients=coeffs, motion=motion, planner=planner)


def load_config(path: str | None = None, base: EvalSettings | None = None) -> EvalSettings:
    """Read a YAML config file (or $FALLRISK_CONFIG) over the defaults."""
    settings = base or EvalSettings()
    if path is None:
        path = os.environ.get(ENV_CONFIG) or None
    if path is None:
        return settings
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read config {path!r}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError("<file>", f"invalid YAML in {path!r}: {exc}") from exc
    return merge_config(settings, doc)


def settings_from_overrides(doc: dict | None) -> EvalSettings:
    """Settings from an inline override mapping (service request bodies)."""
    return merge_config(EvalSettings(), doc or {})
