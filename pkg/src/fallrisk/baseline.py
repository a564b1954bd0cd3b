"""Static per-cell risk factors and their product (the room baseline).

Each factor is a multiplicative effect, exactly 1.0 where its trigger is
absent.  Occupied cells (furniture, obstacles, walls) carry NaN and are
excluded from statistics and rendering legends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .config import SURFACES, FactorCoefficients
from .room import GridIndex, RoomLayout, support_distance_grid

FIELD_LABELS = ("floor", "light", "support", "door", "baseline", "final")

# clamp for the inverse-square law so the cell under a light stays finite
MIN_LIGHT_DISTANCE = 0.3


@dataclass(frozen=True)
class BaselineResult:
    mode: str  # "day" | "night"
    floor: np.ndarray
    light: np.ndarray
    support: np.ndarray
    door: np.ndarray
    baseline: np.ndarray

    def factor_fields(self) -> dict[str, np.ndarray]:
        return {"floor": self.floor, "light": self.light,
                "support": self.support, "door": self.door}


def floor_factor(cell: GridIndex, layout: RoomLayout,
                 coeffs: FactorCoefficients | None = None) -> float:
    """1 + (surface constant + transition constants over the 4-neighborhood).

    A neighbor counts once per direction whose surface differs from the
    cell's; cells on the room edge only count neighbors that exist.
    """
    coeffs = coeffs or FactorCoefficients()
    raster = layout.raster
    row, col = cell
    mine = SURFACES[raster.surface[row, col]]
    total = coeffs.floor_surface[mine]
    for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
        r, c = row + dr, col + dc
        if not raster.in_bounds(r, c):
            continue
        other = SURFACES[raster.surface[r, c]]
        if other != mine:
            total += coeffs.floor_transition.get((mine, other), 0.0)
    return 1.0 + total


def illuminance(point: tuple[float, float], layout: RoomLayout, mode: str) -> float:
    """Lux at a point: inverse-square sum over the active sources.

    Distance is horizontal, clamped below at MIN_LIGHT_DISTANCE.
    """
    if mode not in ("day", "night"):
        raise ValueError(f"mode must be 'day' or 'night', got {mode!r}")
    x, y = point
    total = 0.0
    for light in layout.lights:
        if not (light.active_day if mode == "day" else light.active_night):
            continue
        dx = x - light.position[0]
        dy = y - light.position[1]
        d = max(math.sqrt(dx * dx + dy * dy), MIN_LIGHT_DISTANCE)
        total += light.luminous_flux / (4.0 * math.pi * d * d)
    return total


def light_factor(lux: float, coeffs: FactorCoefficients | None = None) -> float:
    """Three-band factor; both band edges belong to the middle band."""
    coeffs = coeffs or FactorCoefficients()
    if lux < 0:
        raise ValueError(f"illuminance must be >= 0, got {lux}")
    l1, l2 = coeffs.lux_thresholds
    if lux < l1:
        return coeffs.light_low
    if lux <= l2:
        return coeffs.light_mid
    return 1.0


def support_factor_from_distance(distance: float, support_level: float,
                                 coeffs: FactorCoefficients | None = None) -> float:
    """Truncated-linear reach model over distance, divided by support level.

    Beyond the reach distance the object has no effect at all (exactly 1.0),
    overriding the far branch of the published piecewise form, which
    contradicts both the reach narrative and the coefficient table.
    """
    coeffs = coeffs or FactorCoefficients()
    d1, d2 = coeffs.reach_distances
    t1 = coeffs.support_close_numerator
    t2 = coeffs.support_far_numerator
    if distance > d2:
        return 1.0
    if distance < d1:
        return t1 / support_level
    return (t1 + (t2 - t1) * (distance - d1) / (d2 - d1)) / support_level


def support_factor(cell: GridIndex, layout: RoomLayout,
                   coeffs: FactorCoefficients | None = None) -> float:
    coeffs = coeffs or FactorCoefficients()
    dist, owner = support_distance_grid(layout)
    row, col = cell
    if owner[row, col] < 0:
        return 1.0
    level = layout.support_objects[int(owner[row, col])].support_level
    return support_factor_from_distance(float(dist[row, col]), level, coeffs)


def door_factor(cell: GridIndex, layout: RoomLayout,
                coeffs: FactorCoefficients | None = None) -> float:
    """Product of the door-class factors over every zone covering the cell."""
    coeffs = coeffs or FactorCoefficients()
    x, y = layout.raster.cell_center(*cell)
    factor = 1.0
    for door in layout.doors:
        if geo.point_in_polygon((x, y), door.effect_zone):
            factor *= coeffs.door[(door.operation, door.width_class)]
    return factor


def _floor_field(layout: RoomLayout, coeffs: FactorCoefficients) -> np.ndarray:
    raster = layout.raster
    surf = raster.surface.astype(np.int16)
    base = np.array([coeffs.floor_surface[s] for s in SURFACES])[surf]
    total = base.copy()
    # same direction order as the scalar floor_factor: +row, -row, +col, -col
    for axis, shift in ((0, -1), (0, 1), (1, -1), (1, 1)):
        neighbor = np.roll(surf, shift, axis=axis)
        # mask out the wrapped edge
        valid = np.ones_like(surf, dtype=bool)
        index = 0 if shift == 1 else -1
        if axis == 0:
            valid[index, :] = False
        else:
            valid[:, index] = False
        differs = valid & (neighbor != surf)
        for i, si in enumerate(SURFACES):
            for j, sj in enumerate(SURFACES):
                if i == j:
                    continue
                mask = differs & (surf == i) & (neighbor == j)
                total[mask] += coeffs.floor_transition.get((si, sj), 0.0)
    return 1.0 + total


def _light_field(layout: RoomLayout, mode: str, coeffs: FactorCoefficients) -> np.ndarray:
    raster = layout.raster
    centers = raster.centers()
    lux = np.zeros(len(centers))
    for light in layout.lights:
        if not (light.active_day if mode == "day" else light.active_night):
            continue
        dx = centers[:, 0] - light.position[0]
        dy = centers[:, 1] - light.position[1]
        d = np.maximum(np.sqrt(dx * dx + dy * dy), MIN_LIGHT_DISTANCE)
        lux += light.luminous_flux / (4.0 * math.pi * d * d)
    l1, l2 = coeffs.lux_thresholds
    field = np.where(lux < l1, coeffs.light_low,
                     np.where(lux <= l2, coeffs.light_mid, 1.0))
    return field.reshape(raster.rows, raster.cols)


def _support_field(layout: RoomLayout, coeffs: FactorCoefficients) -> np.ndarray:
    raster = layout.raster
    dist, owner = support_distance_grid(layout)
    field = np.ones((raster.rows, raster.cols))
    if len(layout.support_objects) == 0:
        return field
    d1, d2 = coeffs.reach_distances
    t1 = coeffs.support_close_numerator
    t2 = coeffs.support_far_numerator
    levels = np.array([o.support_level for o in layout.support_objects])
    level = levels[owner]
    numerator = np.where(dist < d1, t1, t1 + (t2 - t1) * (dist - d1) / (d2 - d1))
    field = np.where(dist > d2, 1.0, numerator / level)
    return field


def _door_field(layout: RoomLayout, coeffs: FactorCoefficients) -> np.ndarray:
    raster = layout.raster
    centers = raster.centers()
    field = np.ones(len(centers))
    for door in layout.doors:
        inside = geo.points_in_polygon(centers, door.effect_zone)
        field[inside] *= coeffs.door[(door.operation, door.width_class)]
    return field.reshape(raster.rows, raster.cols)


def baseline(layout: RoomLayout, mode: str = "day",
             coeffs: FactorCoefficients | None = None) -> BaselineResult:
    """All four factor fields and their elementwise product.

    Occupied cells are NaN in every field; the product is computed from the
    same arrays it is returned with, so the decomposition is exact.
    """
    if mode not in ("day", "night"):
        raise ValueError(f"mode must be 'day' or 'night', got {mode!r}")
    coeffs = coeffs or FactorCoefficients()
    raster = layout.raster
    fields = {
        "floor": _floor_field(layout, coeffs),
        "light": _light_field(layout, mode, coeffs),
        "support": _support_field(layout, coeffs),
        "door": _door_field(layout, coeffs),
    }
    occ = raster.occupied
    for arr in fields.values():
        arr[occ] = np.nan
    product = fields["floor"] * fields["light"] * fields["support"] * fields["door"]
    return BaselineResult(mode=mode, baseline=product, **fields)
