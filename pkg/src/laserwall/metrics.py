"""Geometric and topological evaluation of layouts against a scenario.

Closeness blends a geometric score (per-room area fidelity, zeroed for rooms
whose bounding-box aspect ratio leaves the allowed range) with a topological
score (satisfied fraction of required connections: every room adjacent to the
living room, every room owning at least one facade cell).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .planning import LIVING_ROOM, LayoutState
from .scenarios import DesignScenario


@dataclass(frozen=True)
class LayoutMetrics:
    areas: tuple[int, ...]
    aspects: tuple[float, ...]
    adjacency_graph: frozenset[tuple[int, int]]
    facade_access: tuple[bool, ...]
    entrance_ok: bool
    connections_satisfied: int
    connections_required: int
    unassigned_rooms: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "areas": list(self.areas),
            "aspects": [a if math.isfinite(a) else None for a in self.aspects],
            "adjacency_graph": sorted(list(p) for p in self.adjacency_graph),
            "facade_access": list(self.facade_access),
            "entrance_ok": self.entrance_ok,
            "connections_satisfied": self.connections_satisfied,
            "connections_required": self.connections_required,
            "unassigned_rooms": list(self.unassigned_rooms),
        }


def _room_adjacency(room_grid: np.ndarray) -> frozenset[tuple[int, int]]:
    pairs: set[tuple[int, int]] = set()
    for a, b in ((room_grid[:, :-1], room_grid[:, 1:]),
                 (room_grid[:-1, :], room_grid[1:, :])):
        differ = (a != b) & (a >= 0) & (b >= 0)
        if differ.any():
            lo = np.minimum(a[differ], b[differ])
            hi = np.maximum(a[differ], b[differ])
            pairs.update(zip(lo.tolist(), hi.tolist()))
    return frozenset(pairs)


def compute_metrics(state: LayoutState, scenario: DesignScenario) -> LayoutMetrics:
    """Pure function of the room-label grid and the scenario."""
    room_grid = state.room_label_grid()
    n = scenario.n_rooms
    h, w = room_grid.shape

    flat = room_grid[room_grid >= 0]
    counts = np.bincount(flat, minlength=n) if flat.size else np.zeros(n, int)
    areas = tuple(int(c) for c in counts[:n])

    aspects = []
    for room in range(n):
        ys, xs = np.nonzero(room_grid == room)
        if ys.size == 0:
            aspects.append(math.inf)
            continue
        bw = int(xs.max()) - int(xs.min()) + 1
        bh = int(ys.max()) - int(ys.min()) + 1
        aspects.append(max(bw, bh) / min(bw, bh))

    adjacency = _room_adjacency(room_grid)

    border = np.zeros_like(room_grid, dtype=bool)
    border[0, :] = border[-1, :] = True
    border[:, 0] = border[:, -1] = True
    for c in state.grid.entrance:
        border[c.y, c.x] = False
    facade_access = tuple(bool(np.any((room_grid == room) & border))
                          for room in range(n))

    entrance_ok = False
    entrance_set = {(c.x, c.y) for c in state.grid.entrance}
    for c in state.grid.entrance:
        for dx, dy in ((0, -1), (1, 0), (0, 1), (-1, 0)):
            nx, ny = c.x + dx, c.y + dy
            if (0 <= nx < w and 0 <= ny < h and (nx, ny) not in entrance_set
                    and room_grid[ny, nx] == LIVING_ROOM):
                entrance_ok = True

    living_links = sum(1 for room in range(1, n)
                       if (LIVING_ROOM, room) in adjacency)
    satisfied = living_links + sum(facade_access)
    unassigned_rooms = tuple(room for room in range(n) if counts[room] == 0)

    return LayoutMetrics(
        areas=areas, aspects=tuple(aspects), adjacency_graph=adjacency,
        facade_access=facade_access, entrance_ok=entrance_ok,
        connections_satisfied=int(satisfied),
        connections_required=scenario.connections_required,
        unassigned_rooms=unassigned_rooms,
    )


def geometric_score(metrics: LayoutMetrics, scenario: DesignScenario) -> float:
    """Mean per-room contribution: 1 - min(1, |area - desired| / desired),
    forced to 0 for rooms with an out-of-bounds aspect ratio."""
    low, high = scenario.aspect_bounds
    total = 0.0
    for room in range(scenario.n_rooms):
        aspect = metrics.aspects[room]
        if not (low <= aspect <= high):
            continue
        desired = scenario.desired_areas[room]
        err = abs(metrics.areas[room] - desired) / desired
        total += 1.0 - min(1.0, err)
    return total / scenario.n_rooms


def topological_score(metrics: LayoutMetrics) -> float:
    return metrics.connections_satisfied / metrics.connections_required


def closeness(metrics: LayoutMetrics, scenario: DesignScenario,
              geometric_weight: float = 0.5,
              topological_weight: float = 0.5) -> float:
    """Scalar layout quality in [0, 1]."""
    g = geometric_score(metrics, scenario)
    t = topological_score(metrics)
    return geometric_weight * g + topological_weight * t


def state_closeness(state: LayoutState, scenario: DesignScenario) -> float:
    return closeness(compute_metrics(state, scenario), scenario)
