"""Full-room evaluation: baseline, scenario trajectories, aggregation.

The default scenario set mirrors the published frequency table; rows that
name both directions split their frequency evenly, the combined
bed/toilet/sink circuit splits into its three legs, and a full-fixture room
samples 36 trajectories in total.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .baseline import BaselineResult, baseline
from .config import EvalSettings
from .errors import EndpointSamplingError
from .motion import EvaluatedPoint, evaluate_trajectory
from .pipeline_types import Scenario
from .planner import Trajectory, plan, sample_endpoints
from .room import RoomLayout, support_points

# (legs, total frequency); legs with missing fixtures are dropped
SCENARIO_TABLE: tuple[tuple[tuple[tuple[str, str], ...], int], ...] = (
    ((("bed", "patient_chair"), ("patient_chair", "bed")), 4),
    ((("bed", "toilet"), ("toilet", "sink"), ("sink", "bed")), 18),
    ((("bed", "entrance_door"), ("entrance_door", "bed")), 6),
    ((("bed", "sofa"), ("sofa", "bed")), 2),
    ((("patient_chair", "toilet"), ("toilet", "patient_chair")), 6),
)


def default_scenarios(layout: RoomLayout) -> list[Scenario]:
    """The standard scenario set restricted to fixtures present in the layout."""
    present = {f.kind for f in layout.fixtures}
    out = []
    for legs, total in SCENARIO_TABLE:
        per_leg = total // len(legs)
        for start, goal in legs:
            if start in present and goal in present:
                out.append(Scenario(start=start, goal=goal, frequency=per_leg))
    return out


@dataclass
class ScenarioTrajectory:
    scenario: Scenario
    scenario_index: int
    sample_index: int
    trajectory: Trajectory
    points: list[EvaluatedPoint] = field(default_factory=list)


@dataclass
class EvaluationResult:
    mode: str
    layout: RoomLayout
    base: BaselineResult
    trajectories: list[ScenarioTrajectory]
    final: np.ndarray
    summary: dict[str, float]
    warnings: list[str]
    seed: int
    aggregation: str

    @property
    def baseline_field(self) -> np.ndarray:
        return self.base.baseline


def aggregate(base_field: np.ndarray, points: list[EvaluatedPoint],
              method: str = "mean") -> np.ndarray:
    """Final field: trajectory-point risks folded into cells, baseline elsewhere.

    Cells without any trajectory point keep their baseline value exactly;
    excluded points do not contribute.
    """
    if method not in ("mean", "max"):
        raise ValueError(f"aggregation must be 'mean' or 'max', got {method!r}")
    final = base_field.copy()
    rows = np.array([p.cell.row for p in points if not p.excluded], dtype=int)
    cols = np.array([p.cell.col for p in points if not p.excluded], dtype=int)
    risks = np.array([p.risk for p in points if not p.excluded], dtype=float)
    if len(risks) == 0:
        return final
    if method == "mean":
        sums = np.zeros_like(base_field)
        counts = np.zeros(base_field.shape, dtype=np.int64)
        np.add.at(sums, (rows, cols), risks)
        np.add.at(counts, (rows, cols), 1)
        touched = counts > 0
        final[touched] = sums[touched] / counts[touched]
    else:
        peak = np.full_like(base_field, -np.inf)
        np.maximum.at(peak, (rows, cols), risks)
        touched = np.isfinite(peak)
        final[touched] = peak[touched]
    return final


def _summarize(final: np.ndarray) -> dict[str, float]:
    values = final[~np.isnan(final)]
    if len(values) == 0:
        return {"mean": float("nan"), "max": float("nan"), "p95": float("nan")}
    return {
        "mean": float(np.mean(values)),
        "max": float(np.max(values)),
        "p95": float(np.percentile(values, 95, method="linear")),
    }


def plan_scenarios(layout: RoomLayout, scenarios: list[Scenario],
                   settings: EvalSettings, seed: int
                   ) -> tuple[list[ScenarioTrajectory], list[str]]:
    """Plan every scenario sample; endpoint-sampling failures are skipped
    with a recorded warning, never silently."""
    params = settings.planner
    esps = support_points(layout, params.esp_spacing)
    planned: list[ScenarioTrajectory] = []
    warnings: list[str] = []
    for i, scenario in enumerate(scenarios):
        for j in range(scenario.frequency):
            rng = np.random.default_rng((seed, i, j))
            try:
                start, goal = sample_endpoints(scenario, layout, rng,
                                               params.clearance)
            except EndpointSamplingError as exc:
                warnings.append(
                    f"scenario {scenario.start}->{scenario.goal} sample {j}: {exc}")
                continue
            traj = plan(start, goal, layout, params, esps=esps, rng=rng,
                        start_fixture=scenario.start, goal_fixture=scenario.goal)
            planned.append(ScenarioTrajectory(
                scenario=scenario, scenario_index=i, sample_index=j,
                trajectory=traj))
    return planned, warnings


def _evaluate_mode(layout: RoomLayout, settings: EvalSettings, mode: str,
                   planned: list[ScenarioTrajectory], warnings: list[str],
                   seed: int, aggregation: str) -> EvaluationResult:
    base = baseline(layout, mode, settings.coefficients)
    evaluated = []
    all_points: list[EvaluatedPoint] = []
    for st in planned:
        pts = evaluate_trajectory(st.trajectory, base, layout, settings.motion)
        evaluated.append(ScenarioTrajectory(
            scenario=st.scenario, scenario_index=st.scenario_index,
            sample_index=st.sample_index, trajectory=st.trajectory, points=pts))
        all_points.extend(pts)
    final = aggregate(base.baseline, all_points, aggregation)
    return EvaluationResult(
        mode=mode, layout=layout, base=base, trajectories=evaluated,
        final=final, summary=_summarize(final), warnings=list(warnings),
        seed=seed, aggregation=aggregation)


def evaluate_room(layout: RoomLayout, settings: EvalSettings | None = None,
                  scenarios: list[Scenario] | None = None, mode: str = "day",
                  seed: int = 0, aggregation: str = "mean") -> EvaluationResult:
    """One mode end to end; deterministic for a fixed seed."""
    settings = settings or EvalSettings()
    if scenarios is None:
        scenarios = default_scenarios(layout)
    planned, warnings = plan_scenarios(layout, scenarios, settings, seed)
    return _evaluate_mode(layout, settings, mode, planned, warnings, seed,
                          aggregation)


def evaluate_modes(layout: RoomLayout, settings: EvalSettings | None = None,
                   scenarios: list[Scenario] | None = None,
                   modes: tuple[str, ...] = ("day", "night"), seed: int = 0,
                   aggregation: str = "mean") -> dict[str, EvaluationResult]:
    """Several lighting modes over one shared set of planned trajectories,
    so day/night comparisons isolate the static lighting factor."""
    settings = settings or EvalSettings()
    if scenarios is None:
        scenarios = default_scenarios(layout)
    planned, warnings = plan_scenarios(layout, scenarios, settings, seed)
    return {mode: _evaluate_mode(layout, settings, mode, planned, warnings,
                                 seed, aggregation)
            for mode in modes}


# ---------------------------------------------------------------------------
# serialization (stable field order for byte-deterministic output)


def _field_to_lists(arr: np.ndarray) -> list[list[float | None]]:
    out = []
    for row in arr:
        out.append([None if np.isnan(v) else float(v) for v in row])
    return out


def result_to_dict(result: EvaluationResult) -> dict:
    layout = result.layout
    raster = layout.raster
    fields = {label: _field_to_lists(arr)
              for label, arr in result.base.factor_fields().items()}
    fields["baseline"] = _field_to_lists(result.base.baseline)
    fields["final"] = _field_to_lists(result.final)
    trajectories = []
    for st in result.trajectories:
        trajectories.append({
            "scenario_index": st.scenario_index,
            "sample_index": st.sample_index,
            "start_fixture": st.scenario.start,
            "goal_fixture": st.scenario.goal,
            "converged": bool(st.trajectory.converged),
            "objective": float(st.trajectory.objective_value),
            "points": [{
                "t": p.t,
                "x": p.position[0],
                "y": p.position[1],
                "row": p.cell.row,
                "col": p.cell.col,
                "activity": p.activity,
                "turning": p.turning,
                "risk": None if p.excluded else p.risk,
                "excluded": p.excluded,
            } for p in st.points],
        })
    return {
        "mode": result.mode,
        "seed": result.seed,
        "aggregation": result.aggregation,
        "grid": {
            "rows": raster.rows,
            "cols": raster.cols,
            "resolution": raster.resolution,
            "width": layout.width,
            "depth": layout.depth,
        },
        "fields": fields,
        "trajectories": trajectories,
        "summary": result.summary,
        "warnings": result.warnings,
    }


def result_to_json(result: EvaluationResult) -> str:
    return json.dumps(result_to_dict(result), allow_nan=False,
                      separators=(",", ":"))
