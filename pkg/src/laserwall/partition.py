"""Light-beam propagation and region extraction.

A placed wall emits one beam from each free endpoint, continuing the arm's
direction. Beams march cell by cell until blocked by the plan outline, a wall
body, the entrance opening, or another beam. Under the decreasing infiltration
mode a beam whose rate at the contact cell strictly exceeds the occupant's
recorded rate cuts through: it overwrites the cell, the victim's strictly
farther cells revert to free, and the march continues. Equal rates stop the
beam, which makes the fixed mode (all rates 1) a special case that never cuts.

Region extraction labels 4-connected components of free cells, then attaches
every remaining cell (beams, wall bodies, entrance opening) to a component so
region areas are exhaustive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy import ndimage

from .errors import IllegalPlacement
from .geometry import (BEAM_LIGHT, DIRECTION_VECTORS, ENTRANCE_OPENING, FREE,
                       WALL_BODY, CellCoord, Direction, LaserWall, PlanGrid,
                       placement_legal)

# ---------------------------------------------------------------------------
# Infiltration modes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fixed:
    """Constant rate 1 at every distance; beams always stop at other beams."""


@dataclass(frozen=True)
class Decreasing:
    """Linear decay: rate(d) = max(0, 1 - d / horizon)."""

    horizon: int

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1 cell")


InfiltrationMode = Union[Fixed, Decreasing]


def infiltration_rate(distance: int, mode: InfiltrationMode) -> float:
    """Beam strength at the given distance (>= 1) from its origin."""
    if distance < 1:
        raise ValueError("distance starts at 1, the first cell past the origin")
    if isinstance(mode, Fixed):
        return 1.0
    return max(0.0, 1.0 - distance / mode.horizon)


def mode_to_dict(mode: InfiltrationMode) -> dict:
    if isinstance(mode, Fixed):
        return {"kind": "fixed"}
    return {"kind": "decreasing", "horizon": mode.horizon}


def mode_from_dict(doc: dict) -> InfiltrationMode:
    if doc.get("kind") == "decreasing":
        return Decreasing(horizon=int(doc["horizon"]))
    return Fixed()


# ---------------------------------------------------------------------------
# Beams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Beam:
    """One propagated light ray; cells are (coord, distance, rate) from the
    origin outward."""

    owner: int
    origin: CellCoord
    direction: Direction
    cells: tuple[tuple[CellCoord, int, float], ...]


_FOUR_NEIGHBORS = ((0, -1), (1, 0), (0, 1), (-1, 0))  # N, E, S, W probe order


def propagate_beam(grid: PlanGrid, owner: int, beam_ix: int, origin: CellCoord,
                   direction: Direction, mode: InfiltrationMode) -> Beam:
    """March one beam from its origin, mutating the grid; returns the beam."""
    dx, dy = DIRECTION_VECTORS[direction]
    state, own, bix = grid.state, grid.owner, grid.beam_ix
    rate_arr, dist_arr = grid.rate, grid.dist
    cells: list[tuple[CellCoord, int, float]] = []
    x, y, d = origin.x, origin.y, 0
    while True:
        x += dx
        y += dy
        d += 1
        if not (0 <= x < grid.width and 0 <= y < grid.height):
            break
        code = state[y, x]
        if code == WALL_BODY or code == ENTRANCE_OPENING:
            break
        r = infiltration_rate(d, mode)
        if code == BEAM_LIGHT:
            if own[y, x] == owner:
                break
            if not (r > rate_arr[y, x]):
                break
            victim_owner = own[y, x]
            victim_ix = bix[y, x]
            victim_dist = dist_arr[y, x]
            cut = ((state == BEAM_LIGHT) & (own == victim_owner)
                   & (bix == victim_ix) & (dist_arr > victim_dist))
            state[cut] = FREE
            own[cut] = -1
            bix[cut] = -1
            rate_arr[cut] = 0.0
            dist_arr[cut] = 0
        state[y, x] = BEAM_LIGHT
        own[y, x] = owner
        bix[y, x] = beam_ix
        rate_arr[y, x] = r
        dist_arr[y, x] = d
        cells.append((CellCoord(x, y), d, r))
    return Beam(owner=owner, origin=origin, direction=direction, cells=tuple(cells))


def activate_wall(grid: PlanGrid, wall: LaserWall,
                  mode: InfiltrationMode) -> tuple[PlanGrid, tuple[Beam, Beam]]:
    """Paint the wall body and emit both beams (slot a first); mutates grid."""
    if not placement_legal(grid, wall):
        raise IllegalPlacement(f"wall {wall.id} placement is not legal")
    for c in wall.body_cells():
        grid.state[c.y, c.x] = WALL_BODY
        grid.owner[c.y, c.x] = wall.id
        grid.beam_ix[c.y, c.x] = -1
        grid.rate[c.y, c.x] = 0.0
        grid.dist[c.y, c.x] = 0
    beams = tuple(
        propagate_beam(grid, wall.id, ix, end, direction, mode)
        for ix, (end, direction) in enumerate(wall.free_endpoints())
    )
    return grid, beams  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Partition result
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegionInfo:
    """One region: its canonical id, full member mask (free plus attached
    cells), and area in cells."""

    id: int
    mask: np.ndarray
    area: int

    @property
    def cells(self) -> frozenset[CellCoord]:
        ys, xs = np.nonzero(self.mask)
        return frozenset(CellCoord(int(x), int(y)) for x, y in zip(xs, ys))

    def boundary_cells(self, width: int, height: int) -> frozenset[CellCoord]:
        border = np.zeros_like(self.mask)
        border[0, :] = True
        border[-1, :] = True
        border[:, 0] = True
        border[:, -1] = True
        ys, xs = np.nonzero(self.mask & border)
        return frozenset(CellCoord(int(x), int(y)) for x, y in zip(xs, ys))


@dataclass(frozen=True)
class PartitionResult:
    """Exhaustive cell -> region labeling plus wall adjacency."""

    labels: np.ndarray
    regions: tuple[RegionInfo, ...]
    wall_regions: dict[int, frozenset[int]]

    @property
    def n_regions(self) -> int:
        return len(self.regions)

    def areas(self) -> tuple[int, ...]:
        return tuple(r.area for r in self.regions)


_CROSS = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=np.int8)


def _canonical_free_labels(free_mask: np.ndarray) -> tuple[np.ndarray, int]:
    """Label free components 0..n-1 in raster first-encounter order."""
    raw, n = ndimage.label(free_mask, structure=_CROSS)
    if n == 0:
        return np.full(free_mask.shape, -1, dtype=np.int32), 0
    flat = raw.ravel()
    first = np.full(n + 1, flat.size, dtype=np.int64)
    nz = np.nonzero(flat)[0]
    # reversed so earlier indices win
    first[flat[nz[::-1]]] = nz[::-1]
    order = np.argsort(first[1:], kind="stable")
    remap = np.full(n + 1, -1, dtype=np.int32)
    remap[1:][order] = np.arange(n, dtype=np.int32)
    return remap[raw], n


def _attach_pass_direct(labels: np.ndarray, free_labels: np.ndarray) -> np.ndarray:
    """Attach unlabeled cells to the first labeled free 4-neighbor in
    N, E, S, W order (vectorized)."""
    h, w = labels.shape
    shifted = np.full((4, h, w), -1, dtype=np.int32)
    shifted[0, 1:, :] = free_labels[:-1, :]   # N neighbor
    shifted[1, :, :-1] = free_labels[:, 1:]   # E neighbor
    shifted[2, :-1, :] = free_labels[1:, :]   # S neighbor
    shifted[3, :, 1:] = free_labels[:, :-1]   # W neighbor
    out = labels.copy()
    need = out < 0
    for k in range(4):
        take = need & (shifted[k] >= 0)
        out[take] = shifted[k][take]
        need &= out < 0
    return out


def _free_neighbor_label(free_labels: np.ndarray, x: int, y: int) -> int:
    h, w = free_labels.shape
    for dx, dy in _FOUR_NEIGHBORS:
        nx, ny = x + dx, y + dy
        if 0 <= nx < w and 0 <= ny < h and free_labels[ny, nx] >= 0:
            return int(free_labels[ny, nx])
    return -1


def _bfs_attach(free_labels: np.ndarray, x: int, y: int) -> int:
    """Deterministic fallback: breadth-first through any cells, probing
    neighbors in N, E, S, W order, until a labeled free cell is reached."""
    h, w = free_labels.shape
    seen = {(x, y)}
    queue = deque([(x, y)])
    while queue:
        cx, cy = queue.popleft()
        for dx, dy in _FOUR_NEIGHBORS:
            nx, ny = cx + dx, cy + dy
            if not (0 <= nx < w and 0 <= ny < h) or (nx, ny) in seen:
                continue
            if free_labels[ny, nx] >= 0:
                return int(free_labels[ny, nx])
            seen.add((nx, ny))
            queue.append((nx, ny))
    return -1


def extract_partition(grid: PlanGrid, walls: Sequence[LaserWall],
                      beams: Sequence[Beam]) -> PartitionResult:
    """Label free components, then attach beams, wall bodies, and entrance
    cells so every cell belongs to exactly one region."""
    free_mask = grid.state == FREE
    free_labels, n = _canonical_free_labels(free_mask)
    if n == 0:
        raise IllegalPlacement("no free cells remain; plan is fully covered")

    labels = _attach_pass_direct(free_labels, free_labels)

    # Beam cells without a direct free neighbor: walk back toward the origin,
    # probing each passed cell's neighbors in the same order.
    for beam in beams:
        for coord, d, _r in beam.cells:
            x, y = coord
            if labels[y, x] >= 0:
                continue
            if grid.state[y, x] != BEAM_LIGHT or grid.owner[y, x] != beam.owner:
                continue  # cell was cut away by a later beam
            dx, dy = DIRECTION_VECTORS[beam.direction]
            got = -1
            for j in range(d - 1, 0, -1):
                jx, jy = beam.origin.x + j * dx, beam.origin.y + j * dy
                got = _free_neighbor_label(free_labels, jx, jy)
                if got >= 0:
                    break
            if got >= 0:
                labels[y, x] = got

    # Everything still unlabeled (wall bodies, boxed-in cells): BFS fallback.
    for y, x in zip(*np.nonzero(labels < 0)):
        labels[y, x] = _bfs_attach(free_labels, int(x), int(y))

    regions = []
    for rid in range(n):
        mask = labels == rid
        regions.append(RegionInfo(id=rid, mask=mask, area=int(mask.sum())))

    wall_regions: dict[int, frozenset[int]] = {}
    h, w = labels.shape
    for wall in walls:
        adjacent: set[int] = set()
        for c in wall.body_cells():
            for dx, dy in _FOUR_NEIGHBORS:
                nx, ny = c.x + dx, c.y + dy
                if 0 <= nx < w and 0 <= ny < h and grid.state[ny, nx] != WALL_BODY:
                    adjacent.add(int(labels[ny, nx]))
        wall_regions[wall.id] = frozenset(adjacent)

    return PartitionResult(labels=labels, regions=tuple(regions),
                           wall_regions=wall_regions)


def repartition(outline: PlanGrid, walls: Sequence[LaserWall],
                mode: InfiltrationMode) -> tuple[PlanGrid, PartitionResult]:
    """Recompute the full partition from scratch: paint every wall body, then
    emit beams strictly in wall-list order, then extract regions."""
    grid = outline.blank_copy()
    for wall in walls:
        if not placement_legal(grid, wall):
            raise IllegalPlacement(f"wall {wall.id} placement is not legal")
        for c in wall.body_cells():
            grid.state[c.y, c.x] = WALL_BODY
            grid.owner[c.y, c.x] = wall.id
    beams: list[Beam] = []
    for wall in walls:
        for ix, (end, direction) in enumerate(wall.free_endpoints()):
            beams.append(propagate_beam(grid, wall.id, ix, end, direction, mode))
    partition = extract_partition(grid, walls, beams)
    return grid, partition
