"""Cell lattice, wall shapes, transformations, and placement legality.

Coordinate convention: x is the column index, y is the row index, row 0 is the
top of the plan, so North is -y, South is +y, East is +x, West is -x.
Clockwise rotation maps a direction vector (dx, dy) to (-dy, dx).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, NamedTuple, Optional, Union

import numpy as np

from .errors import DegenerateShape, OutOfBounds


class CellCoord(NamedTuple):
    """Integer cell position; x is the column, y is the row."""

    x: int
    y: int


class Facade(str, Enum):
    NORTH = "north"
    EAST = "east"
    SOUTH = "south"
    WEST = "west"


class Axis(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class Direction(str, Enum):
    """Compass direction of one wall arm or beam."""

    N = "n"
    E = "e"
    S = "s"
    W = "w"


DIRECTION_VECTORS: dict[Direction, tuple[int, int]] = {
    Direction.N: (0, -1),
    Direction.E: (1, 0),
    Direction.S: (0, 1),
    Direction.W: (-1, 0),
}

_CW = {Direction.N: Direction.E, Direction.E: Direction.S,
       Direction.S: Direction.W, Direction.W: Direction.N}
_CCW = {v: k for k, v in _CW.items()}
_OPPOSITE = {Direction.N: Direction.S, Direction.S: Direction.N,
             Direction.E: Direction.W, Direction.W: Direction.E}


def rotate_direction(d: Direction, clockwise: bool) -> Direction:
    return _CW[d] if clockwise else _CCW[d]


def opposite(d: Direction) -> Direction:
    return _OPPOSITE[d]


def direction_axis(d: Direction) -> Axis:
    return Axis.VERTICAL if d in (Direction.N, Direction.S) else Axis.HORIZONTAL


class WallShape(str, Enum):
    STRAIGHT_HORIZONTAL = "straight_horizontal"
    STRAIGHT_VERTICAL = "straight_vertical"
    L_NE = "l_ne"
    L_NW = "l_nw"
    L_SE = "l_se"
    L_SW = "l_sw"


# Arm directions per shape, in (seg_a, seg_b) slot order.
SHAPE_ARMS: dict[WallShape, tuple[Direction, Direction]] = {
    WallShape.STRAIGHT_HORIZONTAL: (Direction.W, Direction.E),
    WallShape.STRAIGHT_VERTICAL: (Direction.N, Direction.S),
    WallShape.L_NE: (Direction.N, Direction.E),
    WallShape.L_NW: (Direction.N, Direction.W),
    WallShape.L_SE: (Direction.S, Direction.E),
    WallShape.L_SW: (Direction.S, Direction.W),
}

_ARMS_TO_SHAPE: dict[frozenset[Direction], WallShape] = {
    frozenset(v): k for k, v in SHAPE_ARMS.items()
}

STRAIGHT_SHAPES = (WallShape.STRAIGHT_HORIZONTAL, WallShape.STRAIGHT_VERTICAL)
ANGLED_SHAPES = (WallShape.L_NE, WallShape.L_NW, WallShape.L_SE, WallShape.L_SW)
ALL_SHAPES = STRAIGHT_SHAPES + ANGLED_SHAPES


def shape_from_arms(dir_a: Direction, dir_b: Direction) -> WallShape:
    key = frozenset((dir_a, dir_b))
    if len(key) == 1:
        raise DegenerateShape(f"segments fold onto one arm ({dir_a.value})")
    return _ARMS_TO_SHAPE[key]


class Transformation(Enum):
    """The 14 dynamic-planning actions: 8 one-cell moves + 6 quarter turns."""

    MOVE_N = "move_n"
    MOVE_NE = "move_ne"
    MOVE_E = "move_e"
    MOVE_SE = "move_se"
    MOVE_S = "move_s"
    MOVE_SW = "move_sw"
    MOVE_W = "move_w"
    MOVE_NW = "move_nw"
    ROTATE_WHOLE_CW = "rotate_whole_cw"
    ROTATE_WHOLE_CCW = "rotate_whole_ccw"
    ROTATE_SEG_A_CW = "rotate_seg_a_cw"
    ROTATE_SEG_A_CCW = "rotate_seg_a_ccw"
    ROTATE_SEG_B_CW = "rotate_seg_b_cw"
    ROTATE_SEG_B_CCW = "rotate_seg_b_ccw"


TRANSFORMATIONS: tuple[Transformation, ...] = tuple(Transformation)
TRANSFORMATION_BY_NAME: dict[str, Transformation] = {t.value: t for t in Transformation}
TRANSFORMATION_INDEX: dict[Transformation, int] = {
    t: i for i, t in enumerate(TRANSFORMATIONS)
}

MOVE_VECTORS: dict[Transformation, tuple[int, int]] = {
    Transformation.MOVE_N: (0, -1),
    Transformation.MOVE_NE: (1, -1),
    Transformation.MOVE_E: (1, 0),
    Transformation.MOVE_SE: (1, 1),
    Transformation.MOVE_S: (0, 1),
    Transformation.MOVE_SW: (-1, 1),
    Transformation.MOVE_W: (-1, 0),
    Transformation.MOVE_NW: (-1, -1),
}


# ---------------------------------------------------------------------------
# Cell states
# ---------------------------------------------------------------------------

FREE = 0
WALL_BODY = 1
BEAM_LIGHT = 2
ENTRANCE_OPENING = 3


@dataclass(frozen=True)
class Free:
    pass


@dataclass(frozen=True)
class WallBody:
    wall_id: int


@dataclass(frozen=True)
class BeamLight:
    wall_id: int
    rate: float
    distance: int


@dataclass(frozen=True)
class EntranceOpening:
    pass


CellState = Union[Free, WallBody, BeamLight, EntranceOpening]

_FREE_SINGLETON = Free()
_ENTRANCE_SINGLETON = EntranceOpening()


# ---------------------------------------------------------------------------
# Segments and walls
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    """One arm of a wall, pivot cell included."""

    start: CellCoord
    axis: Axis
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("segment length must be >= 1 cell")

    @property
    def cells(self) -> tuple[CellCoord, ...]:
        dx, dy = (1, 0) if self.axis is Axis.HORIZONTAL else (0, 1)
        return tuple(CellCoord(self.start.x + i * dx, self.start.y + i * dy)
                     for i in range(self.length))


@dataclass(frozen=True)
class LaserWall:
    """Hard base wall: two arms joined at the pivot cell.

    Arm slots a and b keep their identity across transformations so that
    per-segment rotations always act on the same physical segment.
    """

    id: int
    pivot: CellCoord
    dir_a: Direction
    dir_b: Direction
    len_a: int
    len_b: int
    room_index: Optional[int] = None

    def __post_init__(self):
        if self.len_a < 1 or self.len_b < 1:
            raise ValueError("segment lengths must be >= 1")
        if self.dir_a == self.dir_b:
            raise DegenerateShape("both arms share one direction")

    @property
    def shape(self) -> WallShape:
        return shape_from_arms(self.dir_a, self.dir_b)

    def arm_cells(self, slot: str) -> tuple[CellCoord, ...]:
        """Cells of one arm from the pivot outward, pivot excluded."""
        d, n = (self.dir_a, self.len_a) if slot == "a" else (self.dir_b, self.len_b)
        dx, dy = DIRECTION_VECTORS[d]
        return tuple(CellCoord(self.pivot.x + i * dx, self.pivot.y + i * dy)
                     for i in range(1, n + 1))

    def body_cells(self) -> tuple[CellCoord, ...]:
        """All body cells: pivot first, then arm a, then arm b."""
        return (self.pivot,) + self.arm_cells("a") + self.arm_cells("b")

    def free_endpoints(self) -> tuple[tuple[CellCoord, Direction], ...]:
        """The two beam origins with their outgoing directions, slot a first."""
        ends = []
        for slot in ("a", "b"):
            d, n = (self.dir_a, self.len_a) if slot == "a" else (self.dir_b, self.len_b)
            dx, dy = DIRECTION_VECTORS[d]
            ends.append((CellCoord(self.pivot.x + n * dx, self.pivot.y + n * dy), d))
        return tuple(ends)

    @property
    def seg_a(self) -> Segment:
        return self._segment(self.dir_a, self.len_a)

    @property
    def seg_b(self) -> Segment:
        return self._segment(self.dir_b, self.len_b)

    def _segment(self, d: Direction, n: int) -> Segment:
        dx, dy = DIRECTION_VECTORS[d]
        end = CellCoord(self.pivot.x + n * dx, self.pivot.y + n * dy)
        start = CellCoord(min(self.pivot.x, end.x), min(self.pivot.y, end.y))
        return Segment(start, direction_axis(d), n + 1)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "pivot": [self.pivot.x, self.pivot.y],
            "shape": self.shape.value,
            "dir_a": self.dir_a.value,
            "dir_b": self.dir_b.value,
            "len_a": self.len_a,
            "len_b": self.len_b,
            "room_index": self.room_index,
        }

    @staticmethod
    def from_dict(doc: dict) -> "LaserWall":
        return LaserWall(
            id=int(doc["id"]),
            pivot=CellCoord(int(doc["pivot"][0]), int(doc["pivot"][1])),
            dir_a=Direction(doc["dir_a"]),
            dir_b=Direction(doc["dir_b"]),
            len_a=int(doc["len_a"]),
            len_b=int(doc["len_b"]),
            room_index=doc.get("room_index"),
        )


# ---------------------------------------------------------------------------
# Plan grid
# ---------------------------------------------------------------------------

def entrance_cells(width: int, height: int, facade: Facade) -> tuple[CellCoord, ...]:
    """Two opening cells centered on the named facade."""
    if facade in (Facade.NORTH, Facade.SOUTH):
        y = 0 if facade is Facade.NORTH else height - 1
        x0 = (width - 2) // 2
        return (CellCoord(x0, y), CellCoord(x0 + 1, y))
    x = 0 if facade is Facade.WEST else width - 1
    y0 = (height - 2) // 2
    return (CellCoord(x, y0), CellCoord(x, y0 + 1))


class PlanGrid:
    """W x H lattice of cell states backed by numpy arrays (indexed [y, x]).

    state holds the FREE/WALL_BODY/BEAM_LIGHT/ENTRANCE_OPENING code, owner the
    wall id for body and beam cells, beam_ix which of the owner's two beams a
    light cell belongs to, rate and dist the beam's recorded infiltration rate
    and distance from its origin.
    """

    __slots__ = ("width", "height", "entrance_facade", "entrance",
                 "state", "owner", "beam_ix", "rate", "dist")

    def __init__(self, width: int, height: int, entrance_facade: Facade):
        if width < 4 or height < 4:
            raise ValueError("plan must be at least 4x4 cells")
        self.width = width
        self.height = height
        self.entrance_facade = entrance_facade
        self.entrance = entrance_cells(width, height, entrance_facade)
        self.state = np.zeros((height, width), dtype=np.int8)
        self.owner = np.full((height, width), -1, dtype=np.int16)
        self.beam_ix = np.full((height, width), -1, dtype=np.int8)
        self.rate = np.zeros((height, width), dtype=np.float64)
        self.dist = np.zeros((height, width), dtype=np.int32)
        for c in self.entrance:
            self.state[c.y, c.x] = ENTRANCE_OPENING

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def blank_copy(self) -> "PlanGrid":
        return PlanGrid(self.width, self.height, self.entrance_facade)

    def clone(self) -> "PlanGrid":
        g = PlanGrid.__new__(PlanGrid)
        g.width, g.height = self.width, self.height
        g.entrance_facade, g.entrance = self.entrance_facade, self.entrance
        g.state = self.state.copy()
        g.owner = self.owner.copy()
        g.beam_ix = self.beam_ix.copy()
        g.rate = self.rate.copy()
        g.dist = self.dist.copy()
        return g

    def cell_state(self, x: int, y: int) -> CellState:
        code = self.state[y, x]
        if code == FREE:
            return _FREE_SINGLETON
        if code == WALL_BODY:
            return WallBody(int(self.owner[y, x]))
        if code == BEAM_LIGHT:
            return BeamLight(int(self.owner[y, x]), float(self.rate[y, x]),
                             int(self.dist[y, x]))
        return _ENTRANCE_SINGLETON

    def free_count(self) -> int:
        return int(np.count_nonzero(self.state == FREE))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlanGrid):
            return NotImplemented
        return (self.width == other.width and self.height == other.height
                and self.entrance_facade == other.entrance_facade
                and np.array_equal(self.state, other.state)
                and np.array_equal(self.owner, other.owner)
                and np.array_equal(self.beam_ix, other.beam_ix)
                and np.array_equal(self.rate, other.rate)
                and np.array_equal(self.dist, other.dist))


# ---------------------------------------------------------------------------
# Wall construction and transformation
# ---------------------------------------------------------------------------

def _check_bounds(wall: LaserWall, width: int, height: int) -> LaserWall:
    for c in wall.body_cells():
        if not (0 <= c.x < width and 0 <= c.y < height):
            raise OutOfBounds(
                f"wall {wall.id} body cell ({c.x},{c.y}) exits the {width}x{height} plan")
    return wall


def instantiate_wall(shape: WallShape, pivot: CellCoord, segment_length: int,
                     room_index: Optional[int] = None, *, width: int, height: int,
                     wall_id: int = 0, seg_b_length: Optional[int] = None) -> LaserWall:
    """Build a wall of the given shape with both arms segment_length cells
    beyond the pivot (seg_b_length overrides the second arm)."""
    if segment_length < 1:
        raise ValueError("segment_length must be >= 1")
    pivot = CellCoord(int(pivot[0]), int(pivot[1]))
    dir_a, dir_b = SHAPE_ARMS[shape]
    wall = LaserWall(id=wall_id, pivot=pivot, dir_a=dir_a, dir_b=dir_b,
                     len_a=segment_length,
                     len_b=seg_b_length if seg_b_length is not None else segment_length,
                     room_index=room_index)
    return _check_bounds(wall, width, height)


def apply_transform(wall: LaserWall, t: Transformation, *, width: int,
                    height: int) -> LaserWall:
    """Geometrically transform a wall; raises OutOfBounds or DegenerateShape
    when the result is not a valid in-plan wall (an illegal action, not a bug)."""
    if t in MOVE_VECTORS:
        dx, dy = MOVE_VECTORS[t]
        moved = replace(wall, pivot=CellCoord(wall.pivot.x + dx, wall.pivot.y + dy))
        return _check_bounds(moved, width, height)
    if t is Transformation.ROTATE_WHOLE_CW or t is Transformation.ROTATE_WHOLE_CCW:
        cw = t is Transformation.ROTATE_WHOLE_CW
        rotated = replace(wall, dir_a=rotate_direction(wall.dir_a, cw),
                          dir_b=rotate_direction(wall.dir_b, cw))
        return _check_bounds(rotated, width, height)
    cw = t in (Transformation.ROTATE_SEG_A_CW, Transformation.ROTATE_SEG_B_CW)
    slot_a = t in (Transformation.ROTATE_SEG_A_CW, Transformation.ROTATE_SEG_A_CCW)
    new_a = rotate_direction(wall.dir_a, cw) if slot_a else wall.dir_a
    new_b = wall.dir_b if slot_a else rotate_direction(wall.dir_b, cw)
    if new_a == new_b:
        raise DegenerateShape(
            f"rotating segment {'a' if slot_a else 'b'} folds it onto the other arm")
    return _check_bounds(replace(wall, dir_a=new_a, dir_b=new_b), width, height)


def placement_legal(grid: PlanGrid, wall: LaserWall,
                    occupied_regions: Iterable[int] = (),
                    forbidden: Iterable[CellCoord] = (),
                    labels: Optional[np.ndarray] = None) -> bool:
    """True iff no body cell overlaps another wall's body, the entrance
    opening, a forbidden cell, or (when labels and occupied_regions are given)
    a cell inside an already-assigned region."""
    occupied = set(occupied_regions)
    banned = set((c[0], c[1]) for c in forbidden)
    for c in wall.body_cells():
        if not grid.in_bounds(c.x, c.y):
            return False
        code = grid.state[c.y, c.x]
        if code == WALL_BODY and grid.owner[c.y, c.x] != wall.id:
            return False
        if code == ENTRANCE_OPENING:
            return False
        if (c.x, c.y) in banned:
            return False
        if labels is not None and occupied and int(labels[c.y, c.x]) in occupied:
            return False
    return True
