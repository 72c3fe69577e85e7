"""Shared test helpers: seeded random wall configurations."""

import numpy as np
import pytest

from laserwall import (
    CellCoord,
    OutOfBounds,
    WallShape,
    builtin_scenarios,
    entrance_cells,
    instantiate_wall,
)

ALL_SHAPES = tuple(WallShape)


def sample_walls(scenario, rng, count=None, max_tries=500):
    """Draw a random set of non-overlapping, in-bounds walls for a scenario.

    Pure geometric sampling (no identity constraints): bodies must stay inside
    the outline and avoid one another and the entrance opening.
    """
    count = scenario.n_walls if count is None else count
    walls = []
    taken = set(entrance_cells(scenario.grid_width, scenario.grid_height,
                               scenario.entrance_facade))
    tries = 0
    while len(walls) < count and tries < max_tries:
        tries += 1
        shape = ALL_SHAPES[rng.integers(len(ALL_SHAPES))]
        pivot = CellCoord(int(rng.integers(scenario.grid_width)),
                          int(rng.integers(scenario.grid_height)))
        try:
            wall = instantiate_wall(shape, pivot, scenario.segment_length,
                                    width=scenario.grid_width,
                                    height=scenario.grid_height,
                                    wall_id=len(walls))
        except OutOfBounds:
            continue
        body = set(wall.body_cells())
        if body & taken:
            continue
        walls.append(wall)
        taken |= body
    return walls


@pytest.fixture
def scenarios():
    return builtin_scenarios()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
