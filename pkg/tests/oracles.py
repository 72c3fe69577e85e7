"""Independent brute-force reference implementations used by the tests.

Everything here is written directly from the documented rules with plain
Python loops: breadth-first flood fill instead of scipy labeling, explicit
cell walks instead of vectorized passes. The production code must agree with
these, not the other way around.
"""

from collections import deque

import numpy as np

FREE = 0
WALL_BODY = 1
BEAM_LIGHT = 2
ENTRANCE_OPENING = 3

# probe order N, E, S, W as (dx, dy)
NESW = ((0, -1), (1, 0), (0, 1), (-1, 0))


def flood_fill_free_labels(state: np.ndarray) -> np.ndarray:
    """Label 4-connected components of free cells, ids assigned in raster
    first-encounter order, -1 elsewhere."""
    h, w = state.shape
    labels = np.full((h, w), -1, dtype=np.int32)
    next_id = 0
    for sy in range(h):
        for sx in range(w):
            if state[sy, sx] != FREE or labels[sy, sx] >= 0:
                continue
            queue = deque([(sx, sy)])
            labels[sy, sx] = next_id
            while queue:
                x, y = queue.popleft()
                for dx, dy in NESW:
                    nx, ny = x + dx, y + dy
                    if (0 <= nx < w and 0 <= ny < h
                            and state[ny, nx] == FREE and labels[ny, nx] < 0):
                        labels[ny, nx] = next_id
                        queue.append((nx, ny))
            next_id += 1
    return labels


def _free_neighbor(free_labels: np.ndarray, x: int, y: int) -> int:
    h, w = free_labels.shape
    for dx, dy in NESW:
        nx, ny = x + dx, y + dy
        if 0 <= nx < w and 0 <= ny < h and free_labels[ny, nx] >= 0:
            return int(free_labels[ny, nx])
    return -1


def oracle_member_labels(grid, beams) -> np.ndarray:
    """Full member labeling: flood-filled free cells, then three attachment
    passes (direct neighbor, beam walk toward origin, breadth-first fallback),
    each resolving against free-cell labels only."""
    state = grid.state
    h, w = state.shape
    free_labels = flood_fill_free_labels(state)
    labels = free_labels.copy()

    # pass 1: direct labeled free neighbor, N/E/S/W priority
    for y in range(h):
        for x in range(w):
            if labels[y, x] < 0:
                got = _free_neighbor(free_labels, x, y)
                if got >= 0:
                    labels[y, x] = got

    # pass 2: surviving beam cells walk back toward their origin
    for beam in beams:
        dx, dy = {"n": (0, -1), "e": (1, 0), "s": (0, 1), "w": (-1, 0)}[
            beam.direction.value]
        for coord, d, _r in beam.cells:
            x, y = coord
            if labels[y, x] >= 0:
                continue
            if state[y, x] != BEAM_LIGHT or grid.owner[y, x] != beam.owner:
                continue
            for j in range(d - 1, 0, -1):
                got = _free_neighbor(free_labels,
                                     beam.origin.x + j * dx,
                                     beam.origin.y + j * dy)
                if got >= 0:
                    labels[y, x] = got
                    break

    # pass 3: breadth-first through any cells, N/E/S/W push order
    for y in range(h):
        for x in range(w):
            if labels[y, x] >= 0:
                continue
            seen = {(x, y)}
            queue = deque([(x, y)])
            found = -1
            while queue and found < 0:
                cx, cy = queue.popleft()
                for dx, dy in NESW:
                    nx, ny = cx + dx, cy + dy
                    if not (0 <= nx < w and 0 <= ny < h) or (nx, ny) in seen:
                        continue
                    if free_labels[ny, nx] >= 0:
                        found = int(free_labels[ny, nx])
                        break
                    seen.add((nx, ny))
                    queue.append((nx, ny))
            labels[y, x] = found
    return labels


def infiltration_expected(distance: int, kind: str, horizon: int = 1) -> float:
    if kind == "fixed":
        return 1.0
    return max(0.0, 1.0 - distance / horizon)


def closeness_oracle(room_labels: np.ndarray, entrance: set, scenario,
                     n_unassigned_rooms: int = 0) -> float:
    """Recompute closeness from a room-label grid: geometric term from areas
    and bounding-box aspects, topological term from room adjacencies and
    facade access, averaged half and half."""
    n = scenario.n_rooms
    desired = scenario.desired_areas
    lo, hi = scenario.aspect_bounds
    h, w = room_labels.shape

    g_parts = []
    for room in range(n):
        ys, xs = np.nonzero(room_labels == room)
        if len(xs) == 0:
            g_parts.append(0.0)
            continue
        bw = int(xs.max()) - int(xs.min()) + 1
        bh = int(ys.max()) - int(ys.min()) + 1
        aspect = max(bw, bh) / min(bw, bh)
        if lo <= aspect <= hi:
            area = len(xs)
            g_parts.append(1.0 - min(1.0, abs(area - desired[room]) / desired[room]))
        else:
            g_parts.append(0.0)
    g = sum(g_parts) / n

    adjacent = set()
    for y in range(h):
        for x in range(w):
            a = room_labels[y, x]
            for dx, dy in ((1, 0), (0, 1)):
                nx, ny = x + dx, y + dy
                if nx < w and ny < h:
                    b = room_labels[ny, nx]
                    if a >= 0 and b >= 0 and a != b:
                        adjacent.add((min(int(a), int(b)), max(int(a), int(b))))

    facade = [False] * n
    for y in range(h):
        for x in range(w):
            if (x, y) in entrance:
                continue
            if x == 0 or y == 0 or x == w - 1 or y == h - 1:
                room = room_labels[y, x]
                if room >= 0:
                    facade[int(room)] = True

    satisfied = sum(1 for room in range(1, n) if (0, room) in adjacent)
    satisfied += sum(1 for room in range(n) if facade[room])
    required = (n - 1) + n
    t = satisfied / required
    return 0.5 * g + 0.5 * t
