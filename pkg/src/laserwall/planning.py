"""One-shot and dynamic planning over partitioned layouts.

One-shot planning places all walls once; rooms are then assigned either
identity-less (greedy matching by closest desired area) or identity-full (each
wall claims the smallest unassigned region adjacent to it). Dynamic planning
transforms one wall per step: the moved wall is re-activated last, and rooms
are relabeled by IoU continuity against the previous layout.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import (ConflictingAssignment, IllegalPlacement,
                     InsufficientRegions, RegionCountMismatch, UnknownWall,
                     ValidationError)
from .geometry import (BEAM_LIGHT, ENTRANCE_OPENING, WALL_BODY, CellCoord,
                       Facade, LaserWall, PlanGrid, Transformation, WallShape,
                       apply_transform, instantiate_wall)
from .errors import DegenerateShape, OutOfBounds
from .partition import (InfiltrationMode, PartitionResult, repartition)
from .scenarios import DesignScenario

LIVING_ROOM = 0

_FOUR_NEIGHBORS = ((0, -1), (1, 0), (0, 1), (-1, 0))


class LightMode(str, Enum):
    ON_LIGHT = "on"
    OFF_LIGHT = "off"


class AssignmentMode(str, Enum):
    IDENTITY_LESS = "identityless"
    IDENTITY_FULL = "identityfull"


@dataclass(frozen=True)
class RoomAssignment:
    """Region id -> room index; room 0 is always the living room."""

    region_to_room: dict[int, int]
    living_room_region: int
    unassigned: frozenset[int]

    def room_of(self, region_id: int) -> Optional[int]:
        return self.region_to_room.get(region_id)

    def region_of(self, room: int) -> Optional[int]:
        for rid, r in self.region_to_room.items():
            if r == room:
                return rid
        return None


@dataclass(frozen=True)
class LayoutState:
    """One complete layout: grid, walls in activation order, partition, rooms."""

    grid: PlanGrid
    walls: tuple[LaserWall, ...]
    partition: PartitionResult
    assignment: RoomAssignment
    light_mode: LightMode
    infiltration: InfiltrationMode

    def wall_by_id(self, wall_id: int) -> LaserWall:
        for w in self.walls:
            if w.id == wall_id:
                return w
        raise UnknownWall(f"no wall with id {wall_id}")

    def room_label_grid(self) -> np.ndarray:
        """Per-cell room index (-1 where the region is unassigned)."""
        labels = self.partition.labels
        lut = np.full(self.partition.n_regions, -1, dtype=np.int32)
        for rid, room in self.assignment.region_to_room.items():
            lut[rid] = room
        return lut[labels]


class OutcomeKind(str, Enum):
    OK = "ok"
    VIOLATION = "violation"


@dataclass(frozen=True)
class StepOutcome:
    kind: OutcomeKind
    reason: Optional[str] = None  # out_of_bounds | wall_collision |
    #                               entrance_blockage | beam_crossing

    @property
    def ok(self) -> bool:
        return self.kind is OutcomeKind.OK


OK_OUTCOME = StepOutcome(OutcomeKind.OK)


# ---------------------------------------------------------------------------
# Living-room detection
# ---------------------------------------------------------------------------


def entrance_connected_region(grid: PlanGrid, partition: PartitionResult) -> int:
    """The region owning the entrance: most member cells 4-adjacent to the
    opening, ties to the lower region id."""
    labels = partition.labels
    counts: dict[int, int] = {}
    entrance_set = {(c.x, c.y) for c in grid.entrance}
    for c in grid.entrance:
        for dx, dy in _FOUR_NEIGHBORS:
            nx, ny = c.x + dx, c.y + dy
            if not grid.in_bounds(nx, ny) or (nx, ny) in entrance_set:
                continue
            rid = int(labels[ny, nx])
            counts[rid] = counts.get(rid, 0) + 1
    if not counts:
        raise IllegalPlacement("entrance opening is sealed off")
    best = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))
    return best[0]


# ---------------------------------------------------------------------------
# Room assignment
# ---------------------------------------------------------------------------


def assign_identityless(partition: PartitionResult, scenario: DesignScenario,
                        entrance_region: int) -> RoomAssignment:
    """Greedy matching: biggest regions first, each takes the remaining room
    with the closest desired area; ties to the lower room index."""
    if partition.n_regions != scenario.n_rooms:
        raise RegionCountMismatch(
            f"{partition.n_regions} regions for {scenario.n_rooms} rooms")
    mapping = {entrance_region: LIVING_ROOM}
    remaining_rooms = [r for r in range(1, scenario.n_rooms)]
    order = sorted((r for r in partition.regions if r.id != entrance_region),
                   key=lambda r: (-r.area, r.id))
    for region in order:
        best = min(remaining_rooms,
                   key=lambda room: (abs(region.area - scenario.desired_areas[room]),
                                     room))
        mapping[region.id] = best
        remaining_rooms.remove(best)
    return RoomAssignment(region_to_room=mapping,
                          living_room_region=entrance_region,
                          unassigned=frozenset())


def assign_identityfull(walls: Sequence[LaserWall], partition: PartitionResult,
                        entrance_region: int) -> RoomAssignment:
    """Each wall, in placement order, claims its smallest unassigned adjacent
    region (ties to the lower region id); the entrance region is the living
    room regardless and can never be claimed."""
    mapping = {entrance_region: LIVING_ROOM}
    area_of = {r.id: r.area for r in partition.regions}
    for wall in walls:
        if wall.room_index is None:
            raise ValidationError(f"wall {wall.id} carries no room index")
        if wall.room_index in mapping.values():
            continue
        candidates = [rid for rid in partition.wall_regions.get(wall.id, ())
                      if rid not in mapping]
        if not candidates:
            raise ConflictingAssignment(
                f"wall {wall.id} has no unassigned adjacent region to claim")
        chosen = min(candidates, key=lambda rid: (area_of[rid], rid))
        mapping[chosen] = wall.room_index
    unassigned = frozenset(r.id for r in partition.regions if r.id not in mapping)
    return RoomAssignment(region_to_room=mapping,
                          living_room_region=entrance_region,
                          unassigned=unassigned)


# ---------------------------------------------------------------------------
# One-shot planning
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Pick:
    shape: WallShape
    pivot: CellCoord
    room_index: Optional[int] = None


def _outline(scenario: DesignScenario) -> PlanGrid:
    return PlanGrid(scenario.grid_width, scenario.grid_height,
                    scenario.entrance_facade)


def one_shot_plan(scenario: DesignScenario, picks: Sequence[Pick],
                  mode: AssignmentMode, infiltration: InfiltrationMode,
                  light_mode: LightMode = LightMode.OFF_LIGHT) -> LayoutState:
    """Place all walls in one pass, then assign rooms per the chosen mode."""
    if len(picks) != scenario.n_walls:
        raise ValidationError(
            f"scenario {scenario.id} needs {scenario.n_walls} picks, got {len(picks)}")
    identity_full = mode is AssignmentMode.IDENTITY_FULL
    if identity_full:
        rooms = [p.room_index for p in picks]
        if any(r is None for r in rooms):
            raise ValidationError("identity-full picks must carry a room index")
        if len(set(rooms)) != len(rooms) or not all(
                1 <= r < scenario.n_rooms for r in rooms):  # type: ignore[operator]
            raise ValidationError(
                "identity-full room indices must be distinct and in 1..n_rooms-1")

    outline = _outline(scenario)
    walls: list[LaserWall] = []
    grid, partition = repartition(outline, walls, infiltration)
    assignment: Optional[RoomAssignment] = None

    for k, pick in enumerate(picks):
        try:
            wall = instantiate_wall(pick.shape, pick.pivot, scenario.segment_length,
                                    room_index=pick.room_index if identity_full else None,
                                    width=scenario.grid_width,
                                    height=scenario.grid_height, wall_id=k)
        except OutOfBounds as e:
            raise IllegalPlacement(f"pick {k}: {e}", pick_index=k) from e
        occupied: set[int] = set()
        if identity_full and assignment is not None:
            occupied = {rid for rid, room in assignment.region_to_room.items()
                        if room != LIVING_ROOM}
        for c in wall.body_cells():
            code = grid.state[c.y, c.x]
            if code == WALL_BODY:
                raise IllegalPlacement(f"pick {k}: body overlaps wall "
                                       f"{int(grid.owner[c.y, c.x])}", pick_index=k)
            if code == ENTRANCE_OPENING:
                raise IllegalPlacement(f"pick {k}: body covers the entrance opening",
                                       pick_index=k)
            if occupied and int(partition.labels[c.y, c.x]) in occupied:
                raise IllegalPlacement(f"pick {k}: body inside an occupied region",
                                       pick_index=k)
        walls.append(wall)
        grid, partition = repartition(outline, walls, infiltration)
        if identity_full:
            entrance = entrance_connected_region(grid, partition)
            try:
                assignment = assign_identityfull(walls, partition, entrance)
            except ConflictingAssignment as e:
                raise IllegalPlacement(
                    f"pick {k}: wall can only claim the entrance-connected region",
                    pick_index=k) from e

    if partition.n_regions < scenario.n_rooms:
        raise InsufficientRegions(
            f"{partition.n_regions} regions for {scenario.n_rooms} rooms")
    entrance = entrance_connected_region(grid, partition)
    if identity_full:
        assignment = assign_identityfull(walls, partition, entrance)
    else:
        assignment = assign_identityless(partition, scenario, entrance)
    return LayoutState(grid=grid, walls=tuple(walls), partition=partition,
                       assignment=assignment, light_mode=light_mode,
                       infiltration=infiltration)


def initial_state(scenario: DesignScenario, walls: Sequence[LaserWall],
                  light_mode: LightMode,
                  infiltration: InfiltrationMode) -> LayoutState:
    """Build a layout state for already-instantiated walls (used by the
    environment after sampling an initial configuration)."""
    grid, partition = repartition(_outline(scenario), walls, infiltration)
    entrance = entrance_connected_region(grid, partition)
    assignment = assign_identityfull(walls, partition, entrance)
    return LayoutState(grid=grid, walls=tuple(walls), partition=partition,
                       assignment=assignment, light_mode=light_mode,
                       infiltration=infiltration)


# ---------------------------------------------------------------------------
# Dynamic planning
# ---------------------------------------------------------------------------


def transform_legality(state: LayoutState, wall_id: int,
                       t: Transformation) -> tuple[Optional[LaserWall], Optional[str]]:
    """Check one transformation; returns (new wall, None) when legal or
    (None, reason) when it would violate a hard constraint.

    Beams in the current grid are obstacles for the moved body. Off-light
    removes the moved wall's own beams from that context; on-light keeps them,
    so a wall may not cross its own beam path.
    """
    wall = state.wall_by_id(wall_id)
    grid = state.grid
    try:
        moved = apply_transform(wall, t, width=grid.width, height=grid.height)
    except (OutOfBounds, DegenerateShape):
        return None, "out_of_bounds"
    off_light = state.light_mode is LightMode.OFF_LIGHT
    for c in moved.body_cells():
        code = grid.state[c.y, c.x]
        if code == WALL_BODY and grid.owner[c.y, c.x] != wall_id:
            return None, "wall_collision"
        if code == ENTRANCE_OPENING:
            return None, "entrance_blockage"
        if code == BEAM_LIGHT:
            if off_light and grid.owner[c.y, c.x] == wall_id:
                continue
            return None, "beam_crossing"
    return moved, None


def dynamic_step(state: LayoutState, wall_id: int,
                 t: Transformation) -> tuple[LayoutState, StepOutcome]:
    """Apply one transformation; violations leave the state untouched."""
    moved, reason = transform_legality(state, wall_id, t)
    if moved is None:
        return state, StepOutcome(OutcomeKind.VIOLATION, reason)
    new_order = tuple(w for w in state.walls if w.id != wall_id) + (moved,)
    outline = PlanGrid(state.grid.width, state.grid.height,
                       state.grid.entrance_facade)
    grid, partition = repartition(outline, new_order, state.infiltration)
    assignment = reassign_rooms_iou(state, grid, partition, new_order)
    new_state = LayoutState(grid=grid, walls=new_order, partition=partition,
                            assignment=assignment, light_mode=state.light_mode,
                            infiltration=state.infiltration)
    return new_state, OK_OUTCOME


def _iou(mask_a: np.ndarray, mask_b: np.ndarray) -> float:
    inter = int(np.count_nonzero(mask_a & mask_b))
    if inter == 0:
        return 0.0
    union = int(np.count_nonzero(mask_a | mask_b))
    return inter / union


def best_iou_candidate(candidates: Sequence[int], prev_mask: Optional[np.ndarray],
                       region_masks: dict[int, np.ndarray]) -> int:
    """Highest-IoU candidate region against the previous room region, ties to
    the lower region id; with no previous region every IoU is 0."""
    def key(rid: int) -> tuple[float, int]:
        iou = _iou(region_masks[rid], prev_mask) if prev_mask is not None else 0.0
        return (-iou, rid)
    return min(candidates, key=key)


def reassign_rooms_iou(prev: LayoutState, grid: PlanGrid,
                       partition: PartitionResult,
                       walls_in_order: Sequence[LaserWall]) -> RoomAssignment:
    """Relabel rooms after a dynamic step: (a) the entrance region is the
    living room, (b) regions identical to a previous room region keep that
    room, (c) remaining walls in order (moved last) take their adjacent
    unassigned region of highest IoU against their previous room region."""
    prev_room_masks: dict[int, np.ndarray] = {}
    for rid, room in prev.assignment.region_to_room.items():
        prev_room_masks[room] = prev.partition.regions[rid].mask

    entrance = entrance_connected_region(grid, partition)
    mapping: dict[int, int] = {entrance: LIVING_ROOM}
    taken = {LIVING_ROOM}

    for region in partition.regions:  # step (b), ascending region id
        if region.id in mapping:
            continue
        for room in sorted(prev_room_masks):
            if room in taken:
                continue
            if np.array_equal(region.mask, prev_room_masks[room]):
                mapping[region.id] = room
                taken.add(room)
                break

    region_masks = {r.id: r.mask for r in partition.regions}
    for wall in walls_in_order:  # step (c), moved wall is already last
        room = wall.room_index
        if room is None or room in taken:
            continue
        candidates = [rid for rid in partition.wall_regions.get(wall.id, ())
                      if rid not in mapping]
        if not candidates:
            continue
        chosen = best_iou_candidate(candidates, prev_room_masks.get(room),
                                    region_masks)
        mapping[chosen] = room
        taken.add(room)

    unassigned = frozenset(r.id for r in partition.regions if r.id not in mapping)
    return RoomAssignment(region_to_room=mapping, living_room_region=entrance,
                          unassigned=unassigned)
