"""Declarative room description, validation, and grid queries.

A layout is authored as a YAML document (see data/layout_schema.json for the
field-level contract) and parsed into immutable dataclasses.  The room is a
width x depth rectangle; the grid covers it with square cells of side
`resolution`, cell (row, col) centered at ((col+0.5)*res, (row+0.5)*res).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
import yaml

from . import geometry as geo
from .config import DOOR_OPERATIONS, DOOR_WIDTHS, NARROW_DOOR_MAX_M, SURFACES
from .errors import LayoutError, NoSupportObjectsError

FIXTURE_KINDS = ("bed", "toilet", "sink", "patient_chair", "sofa", "entrance_door")

# interior walls are rasterized as a band this thick (meters)
WALL_THICKNESS = 0.12

# derive_support_level: grasp height with the best score (standing adult)
BEST_GRASP_HEIGHT = 0.9
SUPPORT_LEVEL_RANGE = (0.6, 1.3)


class GridIndex(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class Segment:
    x1: float
    y1: float
    x2: float
    y2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.y1, self.x2, self.y2])

    @property
    def length(self) -> float:
        return math.hypot(self.x2 - self.x1, self.y2 - self.y1)


@dataclass(frozen=True)
class FloorRegion:
    polygon: np.ndarray
    surface: str  # "resilient" | "hard"


@dataclass(frozen=True)
class LightSource:
    position: tuple[float, float]
    luminous_flux: float  # lumens
    active_day: bool = True
    active_night: bool = False


@dataclass(frozen=True)
class Door:
    centerline: Segment
    operation: str           # "swing" | "slide"
    width_class: str         # "narrow" | "wide"
    swing_direction: str     # "inward" | "outward" | "none"
    effect_zone: np.ndarray  # polygon containing the centerline


@dataclass(frozen=True)
class SupportObject:
    name: str
    segments: np.ndarray     # (M, 4) graspable outline pieces
    support_level: float     # in [0.5, 1.5]; >1 protective, <1 hazardous
    grasp_height: Optional[float] = None
    movability: Optional[float] = None
    graspability: Optional[float] = None


@dataclass(frozen=True)
class Fixture:
    kind: str
    anchor: tuple[float, float]
    footprint: np.ndarray
    sitting_zone_center: Optional[tuple[float, float]] = None
    sitting_zone_radius: Optional[float] = None
    sitting_zone_polygon: Optional[np.ndarray] = None

    def in_sitting_zone(self, x: float, y: float) -> bool:
        if self.sitting_zone_polygon is not None:
            return geo.point_in_polygon((x, y), self.sitting_zone_polygon)
        cx, cy = self.sitting_zone_center
        return math.hypot(x - cx, y - cy) <= self.sitting_zone_radius


@dataclass(frozen=True)
class Raster:
    rows: int
    cols: int
    resolution: float
    surface: np.ndarray   # (rows, cols) uint8 index into SURFACES
    occupied: np.ndarray  # (rows, cols) bool

    @property
    def cell_count(self) -> int:
        return self.rows * self.cols

    def cell_center(self, row: int, col: int) -> tuple[float, float]:
        return ((col + 0.5) * self.resolution, (row + 0.5) * self.resolution)

    def centers(self) -> np.ndarray:
        """All cell centers as an (rows*cols, 2) array, row-major."""
        cols = (np.arange(self.cols) + 0.5) * self.resolution
        rows = (np.arange(self.rows) + 0.5) * self.resolution
        xx, yy = np.meshgrid(cols, rows)
        return np.column_stack([xx.ravel(), yy.ravel()])

    def index_of(self, x: float, y: float) -> GridIndex:
        col = int(x / self.resolution)
        row = int(y / self.resolution)
        return GridIndex(row, col)

    def in_bounds(self, row: int, col: int) -> bool:
        return 0 <= row < self.rows and 0 <= col < self.cols


@dataclass
class RoomLayout:
    """Full scene description; treated as immutable once constructed."""

    width: float
    depth: float
    grid_resolution: float = 0.1
    walls: list[Segment] = field(default_factory=list)
    floor_regions: list[FloorRegion] = field(default_factory=list)
    lights: list[LightSource] = field(default_factory=list)
    doors: list[Door] = field(default_factory=list)
    support_objects: list[SupportObject] = field(default_factory=list)
    fixtures: list[Fixture] = field(default_factory=list)
    obstacles: list[np.ndarray] = field(default_factory=list)

    @functools.cached_property
    def raster(self) -> Raster:
        return rasterize(self)

    @functools.cached_property
    def sdf(self) -> "SignedDistanceField":
        return signed_distance_field(self)

    @functools.cached_property
    def support_segments(self) -> tuple[np.ndarray, np.ndarray]:
        """(segments (M,4), owner object index (M,)) over all supports."""
        segs, owners = [], []
        for i, obj in enumerate(self.support_objects):
            segs.append(obj.segments)
            owners.append(np.full(len(obj.segments), i, dtype=np.int32))
        if not segs:
            return np.empty((0, 4)), np.empty(0, dtype=np.int32)
        return np.vstack(segs), np.concatenate(owners)

    def fixture(self, kind: str) -> Optional[Fixture]:
        for f in self.fixtures:
            if f.kind == kind:
                return f
        return None


# ---------------------------------------------------------------------------
# support level derivation


def derive_support_level(grasp_height: float, movability: float, graspability: float) -> float:
    """Equal-weight combination of the three object properties.

    Height scores best at BEST_GRASP_HEIGHT and falls off linearly; a fully
    fixed, fully graspable rail at that height maps to the top of the range
    and a waist-less fully movable object to the bottom.
    """
    if not 0.0 <= movability <= 1.0:
        raise ValueError(f"movability {movability} outside [0, 1]")
    if not 0.0 <= graspability <= 1.0:
        raise ValueError(f"graspability {graspability} outside [0, 1]")
    if grasp_height < 0.0:
        raise ValueError(f"grasp_height {grasp_height} must be >= 0")
    h_score = 1.0 - abs(grasp_height - BEST_GRASP_HEIGHT) / BEST_GRASP_HEIGHT
    h_score = min(1.0, max(0.0, h_score))
    score = (h_score + (1.0 - movability) + graspability) / 3.0
    lo, hi = SUPPORT_LEVEL_RANGE
    return lo + (hi - lo) * score


# ---------------------------------------------------------------------------
# parsing


def _err(path: str, msg: str) -> LayoutError:
    return LayoutError(path, msg)


def _point(value, path: str) -> tuple[float, float]:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        raise _err(path, f"expected [x, y], got {value!r}")
    return float(value[0]), float(value[1])


def _polygon(value, path: str) -> np.ndarray:
    if not isinstance(value, (list, tuple)) or len(value) < 3:
        raise _err(path, "expected a list of at least 3 [x, y] vertices")
    pts = [_point(v, f"{path}[{i}]") for i, v in enumerate(value)]
    poly = np.array(pts, dtype=float)
    if abs(geo.polygon_area(poly)) < 1e-12:
        raise _err(path, "polygon has zero area")
    if not geo.polygon_is_simple(poly):
        raise _err(path, "polygon is self-intersecting")
    return poly


def _number(value, path: str, minimum: float | None = None) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _err(path, f"expected a number, got {value!r}")
    v = float(value)
    if minimum is not None and v < minimum:
        raise _err(path, f"must be >= {minimum}, got {v}")
    return v


def _check_keys(entry: dict, allowed: set[str], required: set[str], path: str, strict: bool):
    if not isinstance(entry, dict):
        raise _err(path, "expected a mapping")
    for key in entry:
        if key not in allowed:
            if strict:
                raise _err(f"{path}.{key}", "unknown field")
            import warnings
            warnings.warn(f"{path}.{key}: unknown field ignored (lenient mode)")
    for key in required:
        if key not in entry:
            raise _err(f"{path}.{key}", "required field missing")


def _enum(value, options: tuple[str, ...], path: str) -> str:
    if value not in options:
        raise _err(path, f"expected one of {list(options)}, got {value!r}")
    return value


def _default_effect_zone(centerline: Segment, operation: str, swing: str) -> np.ndarray:
    """Doorway strip plus the swept area on the operating side.

    Swing doors extend one door-width to the side they open toward;
    "inward" is the left of the from->to direction (orient the centerline
    accordingly when authoring).  Sliders get a 0.3 m strip on both sides.
    """
    f = np.array([centerline.x1, centerline.y1])
    t = np.array([centerline.x2, centerline.y2])
    u = t - f
    length = np.hypot(*u)
    u = u / length
    n = np.array([-u[1], u[0]])  # left normal
    if operation == "swing" and swing in ("inward", "outward"):
        side = n if swing == "inward" else -n
        back = 0.05
        return np.array([f - back * side, t - back * side,
                         t + (length + back) * side, f + (length + back) * side])
    return np.array([f - 0.3 * n, t - 0.3 * n, t + 0.3 * n, f + 0.3 * n])


def _segments_from_geometry(entry: dict, path: str) -> np.ndarray:
    has_seg = "segment" in entry
    has_poly = "polygon" in entry
    if has_seg == has_poly:
        raise _err(path, "provide exactly one of 'segment' or 'polygon'")
    if has_seg:
        pts = entry["segment"]
        if not isinstance(pts, (list, tuple)) or len(pts) != 2:
            raise _err(f"{path}.segment", "expected [[x1, y1], [x2, y2]]")
        (x1, y1) = _point(pts[0], f"{path}.segment[0]")
        (x2, y2) = _point(pts[1], f"{path}.segment[1]")
        return np.array([[x1, y1, x2, y2]])
    poly = _polygon(entry["polygon"], f"{path}.polygon")
    return geo.polygon_edges(poly)


def parse_layout(document: str | dict, strict: bool = True) -> RoomLayout:
    """Parse and validate a layout document (YAML text or parsed mapping).

    Raises LayoutError naming the offending field for schema violations,
    geometry outside the room bounds, and floor regions that fail to
    partition the floor.
    """
    if isinstance(document, str):
        try:
            doc = yaml.safe_load(document)
        except yaml.YAMLError as exc:
            raise _err("<document>", f"invalid YAML: {exc}") from exc
    else:
        doc = document
    if not isinstance(doc, dict):
        raise _err("<document>", "layout must be a mapping")

    top_allowed = {"room", "walls", "floors", "lights", "doors",
                   "supports", "fixtures", "obstacles"}
    _check_keys(doc, top_allowed, {"room", "floors"}, "<document>", strict)

    room = doc["room"]
    _check_keys(room, {"width", "depth", "resolution"}, {"width", "depth"}, "room", strict)
    width = _number(room["width"], "room.width")
    depth = _number(room["depth"], "room.depth")
    res = _number(room.get("resolution", 0.1), "room.resolution")
    if width <= 0 or depth <= 0 or res <= 0:
        raise _err("room", "width, depth and resolution must be positive")
    for name, extent in (("width", width), ("depth", depth)):
        cells = extent / res
        if abs(cells - round(cells)) > 1e-6:
            raise _err(f"room.{name}", f"{extent} is not a whole number of {res} m cells")

    def in_bounds(x, y):
        return -1e-9 <= x <= width + 1e-9 and -1e-9 <= y <= depth + 1e-9

    def check_bounds(points, path):
        for i, (x, y) in enumerate(np.atleast_2d(points)):
            if not in_bounds(x, y):
                raise _err(path, f"point ({x}, {y}) outside the {width} x {depth} room")

    walls = []
    for i, entry in enumerate(doc.get("walls") or []):
        path = f"walls[{i}]"
        _check_keys(entry, {"from", "to"}, {"from", "to"}, path, strict)
        (x1, y1) = _point(entry["from"], f"{path}.from")
        (x2, y2) = _point(entry["to"], f"{path}.to")
        check_bounds([(x1, y1), (x2, y2)], path)
        walls.append(Segment(x1, y1, x2, y2))

    floors = []
    for i, entry in enumerate(doc.get("floors") or []):
        path = f"floors[{i}]"
        _check_keys(entry, {"surface", "polygon"}, {"surface", "polygon"}, path, strict)
        surface = _enum(entry["surface"], SURFACES, f"{path}.surface")
        poly = _polygon(entry["polygon"], f"{path}.polygon")
        check_bounds(poly, f"{path}.polygon")
        floors.append(FloorRegion(polygon=poly, surface=surface))
    if not floors:
        raise _err("floors", "at least one floor region is required")

    lights = []
    for i, entry in enumerate(doc.get("lights") or []):
        path = f"lights[{i}]"
        _check_keys(entry, {"position", "flux", "day", "night"},
                    {"position", "flux"}, path, strict)
        pos = _point(entry["position"], f"{path}.position")
        check_bounds([pos], f"{path}.position")
        flux = _number(entry["flux"], f"{path}.flux")
        if flux <= 0:
            raise _err(f"{path}.flux", "luminous flux must be > 0")
        lights.append(LightSource(
            position=pos, luminous_flux=flux,
            active_day=bool(entry.get("day", True)),
            active_night=bool(entry.get("night", False))))

    doors = []
    for i, entry in enumerate(doc.get("doors") or []):
        path = f"doors[{i}]"
        _check_keys(entry, {"from", "to", "operation", "width_class", "swing", "effect_zone"},
                    {"from", "to", "operation"}, path, strict)
        (x1, y1) = _point(entry["from"], f"{path}.from")
        (x2, y2) = _point(entry["to"], f"{path}.to")
        check_bounds([(x1, y1), (x2, y2)], path)
        centerline = Segment(x1, y1, x2, y2)
        if centerline.length <= 0:
            raise _err(path, "door centerline has zero length")
        operation = _enum(entry["operation"], DOOR_OPERATIONS, f"{path}.operation")
        swing = entry.get("swing", "none" if operation == "slide" else "inward")
        swing = _enum(swing, ("inward", "outward", "none"), f"{path}.swing")
        if "width_class" in entry:
            width_class = _enum(entry["width_class"], DOOR_WIDTHS, f"{path}.width_class")
        else:
            width_class = "narrow" if centerline.length <= NARROW_DOOR_MAX_M + 1e-9 else "wide"
        if "effect_zone" in entry:
            zone = _polygon(entry["effect_zone"], f"{path}.effect_zone")
        else:
            zone = _default_effect_zone(centerline, operation, swing)
        zone = np.clip(zone, [0.0, 0.0], [width, depth])
        mid = ((x1 + x2) / 2, (y1 + y2) / 2)
        for p in [(x1, y1), (x2, y2), mid]:
            if not geo.point_in_polygon(p, zone):
                raise _err(f"{path}.effect_zone", "must contain the doorway centerline")
        doors.append(Door(centerline=centerline, operation=operation,
                          width_class=width_class, swing_direction=swing,
                          effect_zone=zone))

    supports = []
    for i, entry in enumerate(doc.get("supports") or []):
        path = f"supports[{i}]"
        _check_keys(entry, {"name", "segment", "polygon", "level",
                            "grasp_height", "movability", "graspability"},
                    set(), path, strict)
        segments = _segments_from_geometry(entry, path)
        check_bounds(segments[:, :2], path)
        check_bounds(segments[:, 2:], path)
        name = str(entry.get("name", f"support {i}"))
        grasp_height = entry.get("grasp_height")
        movability = entry.get("movability")
        graspability = entry.get("graspability")
        if "level" in entry:
            level = _number(entry["level"], f"{path}.level")
            if not 0.5 <= level <= 1.5:
                raise _err(f"{path}.level", f"support level {level} outside [0.5, 1.5]")
        else:
            for req in ("grasp_height", "movability", "graspability"):
                if entry.get(req) is None:
                    raise _err(f"{path}.{req}",
                               "required when 'level' is not given")
            try:
                level = derive_support_level(
                    _number(grasp_height, f"{path}.grasp_height", minimum=0.0),
                    _number(movability, f"{path}.movability"),
                    _number(graspability, f"{path}.graspability"))
            except ValueError as exc:
                raise _err(path, str(exc)) from exc
        supports.append(SupportObject(
            name=name, segments=segments, support_level=level,
            grasp_height=None if grasp_height is None else float(grasp_height),
            movability=None if movability is None else float(movability),
            graspability=None if graspability is None else float(graspability)))

    fixtures = []
    for i, entry in enumerate(doc.get("fixtures") or []):
        path = f"fixtures[{i}]"
        _check_keys(entry, {"kind", "anchor", "footprint", "sitting_zone"},
                    {"kind", "anchor", "footprint"}, path, strict)
        kind = _enum(entry["kind"], FIXTURE_KINDS, f"{path}.kind")
        anchor = _point(entry["anchor"], f"{path}.anchor")
        footprint = _polygon(entry["footprint"], f"{path}.footprint")
        check_bounds(footprint, f"{path}.footprint")
        if not geo.point_in_polygon(anchor, footprint):
            raise _err(f"{path}.anchor", "anchor must lie inside the footprint")
        zone_center = zone_radius = zone_poly = None
        if "sitting_zone" in entry:
            zone = entry["sitting_zone"]
            if isinstance(zone, dict):
                _check_keys(zone, {"center", "radius"}, {"center", "radius"},
                            f"{path}.sitting_zone", strict)
                zone_center = _point(zone["center"], f"{path}.sitting_zone.center")
                zone_radius = _number(zone["radius"], f"{path}.sitting_zone.radius")
                if zone_radius <= 0:
                    raise _err(f"{path}.sitting_zone.radius", "must be > 0")
            else:
                zone_poly = _polygon(zone, f"{path}.sitting_zone")
            fx = Fixture(kind=kind, anchor=anchor, footprint=footprint,
                         sitting_zone_center=zone_center,
                         sitting_zone_radius=zone_radius,
                         sitting_zone_polygon=zone_poly)
            boundary = geo.polygon_boundary_samples(footprint, 0.02)
            if not any(fx.in_sitting_zone(x, y) for x, y in boundary):
                raise _err(f"{path}.sitting_zone",
                           "sitting zone must overlap the footprint boundary")
        else:
            fx = Fixture(kind=kind, anchor=anchor, footprint=footprint)
        fixtures.append(fx)

    obstacles = []
    for i, entry in enumerate(doc.get("obstacles") or []):
        path = f"obstacles[{i}]"
        if isinstance(entry, dict):
            _check_keys(entry, {"polygon", "name"}, {"polygon"}, path, strict)
            poly = _polygon(entry["polygon"], f"{path}.polygon")
        else:
            poly = _polygon(entry, path)
        check_bounds(poly, path)
        obstacles.append(poly)

    layout = RoomLayout(width=width, depth=depth, grid_resolution=res,
                        walls=walls, floor_regions=floors, lights=lights,
                        doors=doors, support_objects=supports,
                        fixtures=fixtures, obstacles=obstacles)
    # forces the floor-partition check
    layout.raster
    return layout


def load_layout(path: str, strict: bool = True) -> RoomLayout:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise LayoutError("<file>", f"cannot read layout {path!r}: {exc}") from exc
    return parse_layout(text, strict=strict)


# ---------------------------------------------------------------------------
# rasterization


def rasterize(layout: RoomLayout) -> Raster:
    """Assign each cell a floor surface and an occupancy flag.

    Surface comes from the first region containing the cell center
    (boundary-inclusive); occupancy from obstacle polygons, fixture
    footprints, and a WALL_THICKNESS band around wall segments.
    """
    res = layout.grid_resolution
    cols = int(round(layout.width / res))
    rows = int(round(layout.depth / res))
    centers = Raster(rows, cols, res,
                     np.zeros((rows, cols), np.uint8),
                     np.zeros((rows, cols), bool)).centers()

    surface = np.full(rows * cols, -1, dtype=np.int16)
    strict_hits = np.zeros(rows * cols, dtype=np.int16)
    for region in layout.floor_regions:
        inside = geo.points_in_polygon(centers, region.polygon)
        first = inside & (surface < 0)
        surface[first] = SURFACES.index(region.surface)
        strict_hits += geo.points_strictly_in_polygon(centers, region.polygon)
    if (surface < 0).any():
        idx = int(np.argmax(surface < 0))
        x, y = centers[idx]
        raise LayoutError("floors", f"cell center ({x:.2f}, {y:.2f}) is not covered "
                                    "by any floor region")
    if (strict_hits > 1).any():
        idx = int(np.argmax(strict_hits > 1))
        x, y = centers[idx]
        raise LayoutError("floors", f"floor regions overlap at ({x:.2f}, {y:.2f})")

    occupied = np.zeros(rows * cols, dtype=bool)
    for poly in layout.obstacles:
        occupied |= geo.points_in_polygon(centers, poly)
    for fx in layout.fixtures:
        occupied |= geo.points_in_polygon(centers, fx.footprint)
    if layout.walls:
        seg = np.array([w.as_array() for w in layout.walls])
        dist = geo.points_segments_distance(centers, seg).min(axis=1)
        occupied |= dist <= WALL_THICKNESS / 2

    return Raster(rows=rows, cols=cols, resolution=res,
                  surface=surface.astype(np.uint8).reshape(rows, cols),
                  occupied=occupied.reshape(rows, cols))


# ---------------------------------------------------------------------------
# signed distance field


@dataclass(frozen=True)
class SignedDistanceField:
    """Distance to the nearest obstacle boundary (negative inside), sampled
    at cell centers; the room boundary itself counts as an obstacle."""

    grid: np.ndarray  # (rows, cols)
    resolution: float
    width: float
    depth: float

    def sample(self, points: np.ndarray) -> np.ndarray:
        from ._kernels import backend
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        vals, _ = backend.sdf_sample(pts, self.grid, self.resolution,
                                     self.width, self.depth)
        return vals

    def sample_with_grad(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        from ._kernels import backend
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return backend.sdf_sample(pts, self.grid, self.resolution,
                                  self.width, self.depth)


def signed_distance_field(layout: RoomLayout) -> SignedDistanceField:
    """Euclidean distance transform of the occupancy raster, corrected by
    half a cell so the zero level sits on rasterized obstacle boundaries,
    and clipped by the exact distance to the room rectangle."""
    from scipy.ndimage import distance_transform_edt

    raster = layout.raster
    res = raster.resolution
    centers = raster.centers()
    bdist = np.minimum.reduce([
        centers[:, 0], layout.width - centers[:, 0],
        centers[:, 1], layout.depth - centers[:, 1],
    ]).reshape(raster.rows, raster.cols)

    occ = raster.occupied
    if not occ.any():
        grid = bdist
    else:
        d_free = distance_transform_edt(~occ) * res
        d_occ = distance_transform_edt(occ) * res
        grid = np.where(occ, -(d_occ - 0.5 * res),
                        np.minimum(d_free - 0.5 * res, bdist))
    return SignedDistanceField(grid=grid.astype(float), resolution=res,
                               width=layout.width, depth=layout.depth)


# ---------------------------------------------------------------------------
# support queries


def nearest_support(point: tuple[float, float], layout: RoomLayout) -> tuple[SupportObject, float]:
    """Closest support object (Euclidean, ties to the earliest in the file)
    and the distance to its graspable outline."""
    segments, owners = layout.support_segments
    if len(segments) == 0:
        raise NoSupportObjectsError("layout has no support objects")
    from ._kernels import backend
    dist, owner = backend.nearest_segment_distance(
        np.array([point], dtype=float), segments, owners,
        len(layout.support_objects))
    return layout.support_objects[int(owner[0])], float(dist[0])


def support_distance_grid(layout: RoomLayout) -> tuple[np.ndarray, np.ndarray]:
    """Per-cell (distance, owner index) to the nearest support outline;
    owner is -1 everywhere when the layout has no supports."""
    raster = layout.raster
    segments, owners = layout.support_segments
    if len(segments) == 0:
        return (np.full((raster.rows, raster.cols), np.inf),
                np.full((raster.rows, raster.cols), -1, dtype=np.int32))
    from ._kernels import backend
    dist, owner = backend.nearest_segment_distance(
        raster.centers(), segments, owners, len(layout.support_objects))
    return (dist.reshape(raster.rows, raster.cols),
            owner.reshape(raster.rows, raster.cols))


def support_points(layout: RoomLayout, spacing: float) -> np.ndarray:
    """External support points: the support outlines sampled at <= spacing."""
    segments, _ = layout.support_segments
    if len(segments) == 0:
        return np.empty((0, 2))
    pts = geo.sample_segments(segments, spacing)
    return np.unique(pts, axis=0)
