"""Heat-map rendering and machine-readable grid export.

Images are binary PPM (P6): dependency-free and byte-deterministic, which
the golden tests rely on.  Color runs blue (supportive, below 1.0) through
neutral yellow (exactly 1.0) to red (elevated risk); occupied cells are
gray.  Image row 0 is the top of the room (maximum y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pipeline import EvaluationResult
from .room import RoomLayout

RGB = tuple[int, int, int]

BLUE: RGB = (59, 76, 192)
YELLOW: RGB = (255, 237, 160)
RED: RGB = (165, 0, 38)
GRAY: RGB = (128, 128, 128)
OUTLINE: RGB = (40, 40, 40)

ACTIVITY_COLORS: dict[str, RGB] = {
    "sit_to_stand": (0, 158, 64),   # green
    "walking": (36, 84, 220),       # blue
    "stand_to_sit": (235, 110, 180),  # pink
}
TRAJECTORY_LINE: RGB = (25, 25, 25)


@dataclass(frozen=True)
class ColorScale:
    """Piecewise-linear blue->yellow->red ramp anchored at factor values."""

    low_anchor: float = 0.7
    high_anchor: float = 1.5
    low_color: RGB = BLUE
    neutral_color: RGB = YELLOW
    high_color: RGB = RED
    occupied_color: RGB = GRAY

    def position(self, value: float) -> float:
        """Monotone map of a factor onto [0, 1]; 1.0 maps to exactly 0.5."""
        if value <= self.low_anchor:
            return 0.0
        if value <= 1.0:
            return 0.5 * (value - self.low_anchor) / (1.0 - self.low_anchor)
        if value >= self.high_anchor:
            return 1.0
        return 0.5 + 0.5 * (value - 1.0) / (self.high_anchor - 1.0)

    def color(self, value: float) -> RGB:
        if math.isnan(value):
            return self.occupied_color
        u = self.position(value)
        if u <= 0.5:
            a, b, t = self.low_color, self.neutral_color, u / 0.5
        else:
            a, b, t = self.neutral_color, self.high_color, (u - 0.5) / 0.5
        return tuple(int(round(a[i] + (b[i] - a[i]) * t)) for i in range(3))


def _field_pixels(field: np.ndarray, scale: ColorScale) -> np.ndarray:
    """(rows, cols, 3) uint8 colors; row 0 is still grid row 0 (y low)."""
    rows, cols = field.shape
    # quantize through the scalar mapping for exact agreement with color()
    out = np.empty((rows, cols, 3), dtype=np.uint8)
    cache: dict[float, RGB] = {}
    for r in range(rows):
        for c in range(cols):
            v = field[r, c]
            key = float("nan") if math.isnan(v) else float(v)
            rgb = cache.get(key)
            if rgb is None:
                rgb = scale.color(v)
                if not math.isnan(key):
                    cache[key] = rgb
            out[r, c] = rgb
    return out


def _encode_ppm(pixels: np.ndarray) -> bytes:
    """pixels is (H, W, 3) uint8, row 0 at the top."""
    h, w, _ = pixels.shape
    return b"P6\n%d %d\n255\n" % (w, h) + pixels.tobytes()


def _draw_line(pixels: np.ndarray, x0: int, y0: int, x1: int, y1: int, color: RGB):
    """Bresenham; clips to the image."""
    h, w, _ = pixels.shape
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    while True:
        if 0 <= y0 < h and 0 <= x0 < w:
            pixels[y0, x0] = color
        if x0 == x1 and y0 == y1:
            break
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x0 += sx
        if e2 <= dx:
            err += dx
            y0 += sy


def _to_pixel(x: float, y: float, layout: RoomLayout, cell_pixels: int) -> tuple[int, int]:
    """Room coordinates -> image pixel (row 0 at the top of the room)."""
    res = layout.grid_resolution
    rows = layout.raster.rows
    px = int(x / res * cell_pixels)
    py = int((rows - y / res) * cell_pixels)
    h = rows * cell_pixels
    w = layout.raster.cols * cell_pixels
    return min(max(px, 0), w - 1), min(max(py, 0), h - 1)


def _outline_footprints(pixels: np.ndarray, layout: RoomLayout, cell_pixels: int):
    for fx in layout.fixtures:
        poly = fx.footprint
        for i in range(len(poly)):
            x0, y0 = _to_pixel(*poly[i], layout, cell_pixels)
            x1, y1 = _to_pixel(*poly[(i + 1) % len(poly)], layout, cell_pixels)
            _draw_line(pixels, x0, y0, x1, y1, OUTLINE)


def render_field(field: np.ndarray, layout: RoomLayout,
                 scale: ColorScale | None = None, cell_pixels: int = 8) -> bytes:
    """One colored square per cell, furniture outlined, deterministic bytes."""
    scale = scale or ColorScale()
    raster = layout.raster
    if field.shape != (raster.rows, raster.cols):
        raise ValueError(f"field shape {field.shape} does not match the "
                         f"{raster.rows}x{raster.cols} grid")
    cells = _field_pixels(field, scale)
    cells = cells[::-1]  # row 0 at the top of the room
    pixels = np.repeat(np.repeat(cells, cell_pixels, axis=0), cell_pixels, axis=1)
    _outline_footprints(pixels, layout, cell_pixels)
    return _encode_ppm(pixels)


def render_trajectories(result: EvaluationResult, scale: ColorScale | None = None,
                        cell_pixels: int = 8) -> bytes:
    """Trajectory polylines and activity-colored markers over the baseline."""
    scale = scale or ColorScale()
    layout = result.layout
    raster = layout.raster
    cells = _field_pixels(result.base.baseline, scale)[::-1]
    pixels = np.repeat(np.repeat(cells, cell_pixels, axis=0), cell_pixels, axis=1)
    _outline_footprints(pixels, layout, cell_pixels)
    h, w, _ = pixels.shape
    m = max(1, cell_pixels // 3)
    for st in result.trajectories:
        pts = st.trajectory.points
        pix = [_to_pixel(x, y, layout, cell_pixels) for x, y in pts]
        for (x0, y0), (x1, y1) in zip(pix[:-1], pix[1:]):
            _draw_line(pixels, x0, y0, x1, y1, TRAJECTORY_LINE)
        for point, (px, py) in zip(st.points, pix):
            color = ACTIVITY_COLORS[point.activity]
            pixels[max(0, py - m):min(h, py + m + 1),
                   max(0, px - m):min(w, px + m + 1)] = color
    return _encode_ppm(pixels)


# ---------------------------------------------------------------------------
# delimited grid export


NA_TOKEN = "NA"


def export_grid(field: np.ndarray) -> str:
    """Comma-separated row-major matrix at full precision; NaN as NA."""
    lines = []
    for row in np.atleast_2d(field):
        lines.append(",".join(
            NA_TOKEN if math.isnan(v) else repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def import_grid(text: str) -> np.ndarray:
    """Inverse of export_grid (bit-exact round trip)."""
    rows = []
    for line in text.strip().splitlines():
        rows.append([float("nan") if tok == NA_TOKEN else float(tok)
                     for tok in line.split(",")])
    return np.array(rows, dtype=float)
