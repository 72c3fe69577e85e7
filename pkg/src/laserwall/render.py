"""Raster (PNG), ascii, and SVG views of a layout.

The presentation raster paints rooms in a fixed palette, wall bodies black,
beam cells a lighter tint of their room color, and the entrance opening in a
highlight color. The SVG adds the adjacency report: one dashed line per
required connection, green when satisfied and red when missed.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

import numpy as np
from PIL import Image

from .geometry import (BEAM_LIGHT, ENTRANCE_OPENING, FREE, WALL_BODY)
from .metrics import LayoutMetrics
from .planning import LIVING_ROOM, LayoutState
from .scenarios import DesignScenario

# Fixed per-room palette (living room first), then a neutral for unassigned.
ROOM_COLORS: tuple[tuple[int, int, int], ...] = (
    (242, 201, 76),   # living: warm yellow
    (111, 168, 220),  # blue
    (147, 196, 125),  # green
    (224, 132, 131),  # red
    (182, 149, 212),  # purple
    (246, 178, 107),  # orange
    (118, 198, 189),  # teal
    (213, 166, 189),  # rose
    (162, 196, 201),  # steel
    (201, 218, 140),  # lime
)
UNASSIGNED_COLOR = (200, 200, 200)
WALL_COLOR = (20, 20, 20)
ENTRANCE_COLOR = (255, 255, 255)


def room_color(room: int) -> tuple[int, int, int]:
    if room < 0:
        return UNASSIGNED_COLOR
    return ROOM_COLORS[room % len(ROOM_COLORS)]


def _tint(color: tuple[int, int, int], factor: float = 0.45) -> tuple[int, int, int]:
    return tuple(int(c + (255 - c) * factor) for c in color)  # type: ignore[return-value]


def raster(state: LayoutState, cell_px: int = 12) -> Image.Image:
    """Presentation PNG: rooms colored, walls black, beams tinted, entrance white."""
    rooms = state.room_label_grid()
    codes = state.grid.state
    h, w = rooms.shape
    img = np.zeros((h, w, 3), dtype=np.uint8)
    for y in range(h):
        for x in range(w):
            code = codes[y, x]
            if code == WALL_BODY:
                img[y, x] = WALL_COLOR
            elif code == ENTRANCE_OPENING:
                img[y, x] = ENTRANCE_COLOR
            elif code == BEAM_LIGHT:
                img[y, x] = _tint(room_color(int(rooms[y, x])))
            else:
                img[y, x] = room_color(int(rooms[y, x]))
    if cell_px > 1:
        img = np.repeat(np.repeat(img, cell_px, axis=0), cell_px, axis=1)
    return Image.fromarray(img, mode="RGB")


def save_png(state: LayoutState, path: Union[str, Path], cell_px: int = 12) -> None:
    raster(state, cell_px).save(Path(path), format="PNG")


def ascii_render(state: LayoutState) -> str:
    """One glyph per room (its index, letters past 9), '#' wall bodies,
    lowercase room glyph for beams, 'E' entrance."""
    rooms = state.room_label_grid()
    codes = state.grid.state
    glyphs = "0123456789ABCDEFGH"
    lower = "0123456789abcdefgh"
    h, w = rooms.shape
    out = []
    for y in range(h):
        row = []
        for x in range(w):
            code = codes[y, x]
            room = int(rooms[y, x])
            if code == WALL_BODY:
                row.append("#")
            elif code == ENTRANCE_OPENING:
                row.append("E")
            elif room < 0:
                row.append(".")
            elif code == BEAM_LIGHT:
                row.append(lower[room])
            else:
                row.append(glyphs[room])
        out.append("".join(row))
    return "\n".join(out)


def _room_centroids(rooms: np.ndarray, n_rooms: int) -> dict[int, tuple[float, float]]:
    cents = {}
    for room in range(n_rooms):
        ys, xs = np.nonzero(rooms == room)
        if ys.size:
            cents[room] = (float(xs.mean()) + 0.5, float(ys.mean()) + 0.5)
    return cents


def _nearest_boundary_point(rooms: np.ndarray, room: int,
                            centroid: tuple[float, float]) -> tuple[float, float]:
    h, w = rooms.shape
    border = np.zeros((h, w), dtype=bool)
    border[0, :] = border[-1, :] = True
    border[:, 0] = border[:, -1] = True
    owned = (rooms == room) & border
    ys, xs = np.nonzero(owned if owned.any() else border)
    cx, cy = centroid
    d2 = (xs + 0.5 - cx) ** 2 + (ys + 0.5 - cy) ** 2
    k = int(np.argmin(d2))
    return (float(xs[k]) + 0.5, float(ys[k]) + 0.5)


def svg_document(state: LayoutState, scenario: DesignScenario,
                 metrics: LayoutMetrics, cell_px: int = 14) -> str:
    """SVG drawing with the adjacency report: dashed room-to-living and
    room-to-facade lines, green when satisfied, red when missed."""
    rooms = state.room_label_grid()
    codes = state.grid.state
    h, w = rooms.shape
    px = cell_px
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w * px}" '
        f'height="{h * px}" viewBox="0 0 {w * px} {h * px}">',
        f'<rect width="{w * px}" height="{h * px}" fill="white"/>',
    ]

    def fill(x: int, y: int) -> str:
        code = codes[y, x]
        if code == WALL_BODY:
            c = WALL_COLOR
        elif code == ENTRANCE_OPENING:
            c = ENTRANCE_COLOR
        elif code == BEAM_LIGHT:
            c = _tint(room_color(int(rooms[y, x])))
        else:
            c = room_color(int(rooms[y, x]))
        return f"rgb({c[0]},{c[1]},{c[2]})"

    for y in range(h):
        for x in range(w):
            parts.append(f'<rect x="{x * px}" y="{y * px}" width="{px}" '
                         f'height="{px}" fill="{fill(x, y)}"/>')

    cents = _room_centroids(rooms, scenario.n_rooms)
    living = cents.get(LIVING_ROOM)

    def dashed(x1: float, y1: float, x2: float, y2: float, ok: bool) -> str:
        color = "green" if ok else "red"
        return (f'<line x1="{x1 * px:.1f}" y1="{y1 * px:.1f}" '
                f'x2="{x2 * px:.1f}" y2="{y2 * px:.1f}" stroke="{color}" '
                f'stroke-width="2" stroke-dasharray="6,4"/>')

    for room in range(1, scenario.n_rooms):
        ok = (LIVING_ROOM, room) in metrics.adjacency_graph
        if living and room in cents:
            parts.append(dashed(*living, *cents[room], ok))
    for room in range(scenario.n_rooms):
        if room not in cents:
            continue
        ok = metrics.facade_access[room]
        bx, by = _nearest_boundary_point(rooms, room, cents[room])
        parts.append(dashed(*cents[room], bx, by, ok))

    for room, (cx, cy) in cents.items():
        parts.append(f'<text x="{cx * px:.1f}" y="{cy * px:.1f}" '
                     f'font-size="{px}" text-anchor="middle" '
                     f'fill="black">{room}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def save_svg(state: LayoutState, scenario: DesignScenario,
             metrics: LayoutMetrics, path: Union[str, Path],
             cell_px: int = 14) -> None:
    Path(path).write_text(svg_document(state, scenario, metrics, cell_px))
