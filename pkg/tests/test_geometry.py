"""Wall shapes, transformations, the plan grid, and placement legality."""

import numpy as np
import pytest

from laserwall import (
    BEAM_LIGHT,
    ENTRANCE_OPENING,
    FREE,
    TRANSFORMATIONS,
    WALL_BODY,
    CellCoord,
    DegenerateShape,
    Direction,
    Facade,
    LaserWall,
    OutOfBounds,
    PlanGrid,
    Transformation,
    WallShape,
    apply_transform,
    entrance_cells,
    instantiate_wall,
    placement_legal,
)


def wall(shape, pivot, seg=2, width=12, height=12, wall_id=0):
    return instantiate_wall(shape, CellCoord(*pivot), seg,
                            width=width, height=height, wall_id=wall_id)


class TestWallBodies:
    def test_straight_horizontal_cells(self):
        w = wall(WallShape.STRAIGHT_HORIZONTAL, (5, 5))
        assert w.body_cells() == (
            CellCoord(5, 5),
            CellCoord(4, 5), CellCoord(3, 5),
            CellCoord(6, 5), CellCoord(7, 5),
        )

    def test_straight_vertical_cells(self):
        w = wall(WallShape.STRAIGHT_VERTICAL, (5, 5))
        assert set(w.body_cells()) == {
            CellCoord(5, y) for y in (3, 4, 5, 6, 7)}

    def test_l_ne_cells(self):
        w = wall(WallShape.L_NE, (5, 5))
        assert set(w.body_cells()) == {
            CellCoord(5, 5), CellCoord(5, 4), CellCoord(5, 3),
            CellCoord(6, 5), CellCoord(7, 5)}

    @pytest.mark.parametrize("shape", list(WallShape))
    def test_body_size_is_two_arms_plus_pivot(self, shape):
        for seg in (1, 2, 4):
            w = wall(shape, (6, 6), seg=seg, width=16, height=16)
            cells = w.body_cells()
            assert len(cells) == 2 * seg + 1
            assert len(set(cells)) == len(cells)

    def test_free_endpoints_are_arm_tips(self):
        w = wall(WallShape.L_SW, (5, 5))
        (end_a, dir_a), (end_b, dir_b) = w.free_endpoints()
        assert (end_a, dir_a) == (CellCoord(5, 7), Direction.S)
        assert (end_b, dir_b) == (CellCoord(3, 5), Direction.W)

    def test_asymmetric_arm_lengths(self):
        w = instantiate_wall(WallShape.STRAIGHT_HORIZONTAL, CellCoord(5, 5), 2,
                             width=12, height=12, seg_b_length=3)
        assert CellCoord(8, 5) in w.body_cells()
        assert len(w.body_cells()) == 6

    def test_roundtrip_dict(self):
        w = wall(WallShape.L_NW, (4, 7), wall_id=3)
        assert LaserWall.from_dict(w.to_dict()) == w


class TestTransformations:
    def test_fourteen_transformations_in_order(self):
        names = [t.value for t in TRANSFORMATIONS]
        assert names == [
            "move_n", "move_ne", "move_e", "move_se", "move_s", "move_sw",
            "move_w", "move_nw", "rotate_whole_cw", "rotate_whole_ccw",
            "rotate_seg_a_cw", "rotate_seg_a_ccw", "rotate_seg_b_cw",
            "rotate_seg_b_ccw",
        ]

    @pytest.mark.parametrize("t,expected", [
        (Transformation.MOVE_N, (5, 4)),
        (Transformation.MOVE_NE, (6, 4)),
        (Transformation.MOVE_E, (6, 5)),
        (Transformation.MOVE_SE, (6, 6)),
        (Transformation.MOVE_S, (5, 6)),
        (Transformation.MOVE_SW, (4, 6)),
        (Transformation.MOVE_W, (4, 5)),
        (Transformation.MOVE_NW, (4, 4)),
    ])
    def test_moves_shift_pivot_one_cell(self, t, expected):
        w = wall(WallShape.STRAIGHT_HORIZONTAL, (5, 5))
        moved = apply_transform(w, t, width=12, height=12)
        assert moved.pivot == CellCoord(*expected)
        assert moved.shape == w.shape

    def test_whole_rotation_cw_turns_straight_into_straight(self):
        w = wall(WallShape.STRAIGHT_HORIZONTAL, (5, 5))
        r = apply_transform(w, Transformation.ROTATE_WHOLE_CW,
                            width=12, height=12)
        assert r.shape == WallShape.STRAIGHT_VERTICAL
        assert r.pivot == w.pivot

    def test_whole_rotation_cw_maps_l_shapes(self):
        w = wall(WallShape.L_NE, (5, 5))
        r = apply_transform(w, Transformation.ROTATE_WHOLE_CW,
                            width=12, height=12)
        assert r.shape == WallShape.L_SE

    def test_segment_rotation_changes_one_arm(self):
        w = wall(WallShape.STRAIGHT_HORIZONTAL, (5, 5))
        r = apply_transform(w, Transformation.ROTATE_SEG_A_CW,
                            width=12, height=12)
        assert r.shape == WallShape.L_NE
        assert r.dir_b == w.dir_b

    def test_segment_rotation_onto_other_arm_is_degenerate(self):
        w = wall(WallShape.L_NE, (5, 5))
        with pytest.raises(DegenerateShape):
            apply_transform(w, Transformation.ROTATE_SEG_A_CW,
                            width=12, height=12)

    def test_move_off_the_outline_is_out_of_bounds(self):
        w = wall(WallShape.STRAIGHT_HORIZONTAL, (2, 5))
        with pytest.raises(OutOfBounds):
            apply_transform(w, Transformation.MOVE_W, width=12, height=12)

    def test_rotation_near_border_is_out_of_bounds(self):
        w = wall(WallShape.STRAIGHT_HORIZONTAL, (5, 1))
        with pytest.raises(OutOfBounds):
            apply_transform(w, Transformation.ROTATE_WHOLE_CW,
                            width=12, height=12)

    def test_rotations_preserve_pivot_and_lengths(self):
        w = wall(WallShape.L_SE, (6, 6), width=16, height=16)
        for t in TRANSFORMATIONS[8:]:
            try:
                r = apply_transform(w, t, width=16, height=16)
            except (OutOfBounds, DegenerateShape):
                continue
            assert r.pivot == w.pivot
            assert (r.len_a, r.len_b) == (w.len_a, w.len_b)


class TestEntranceAndGrid:
    @pytest.mark.parametrize("facade,cells", [
        (Facade.WEST, ((0, 5), (0, 6))),
        (Facade.EAST, ((11, 5), (11, 6))),
        (Facade.NORTH, ((5, 0), (6, 0))),
        (Facade.SOUTH, ((5, 11), (6, 11))),
    ])
    def test_entrance_two_cells_centered(self, facade, cells):
        got = entrance_cells(12, 12, facade)
        assert got == tuple(CellCoord(*c) for c in cells)

    def test_fresh_grid_free_except_entrance(self):
        g = PlanGrid(10, 8, Facade.NORTH)
        assert g.state.shape == (8, 10)
        opening = entrance_cells(10, 8, Facade.NORTH)
        for c in opening:
            assert g.state[c.y, c.x] == ENTRANCE_OPENING
        assert (g.state == FREE).sum() == 10 * 8 - 2

    def test_cell_codes_are_distinct(self):
        assert len({FREE, WALL_BODY, BEAM_LIGHT, ENTRANCE_OPENING}) == 4


class TestPlacementLegality:
    def test_fresh_grid_accepts_interior_wall(self):
        g = PlanGrid(12, 12, Facade.WEST)
        assert placement_legal(g, wall(WallShape.STRAIGHT_VERTICAL, (6, 5)))

    def test_overlap_with_painted_body_is_illegal(self):
        g = PlanGrid(12, 12, Facade.WEST)
        first = wall(WallShape.STRAIGHT_VERTICAL, (6, 5))
        for c in first.body_cells():
            g.state[c.y, c.x] = WALL_BODY
        second = wall(WallShape.STRAIGHT_HORIZONTAL, (6, 5), wall_id=1)
        assert not placement_legal(g, second)

    def test_body_on_entrance_opening_is_illegal(self):
        g = PlanGrid(12, 12, Facade.WEST)
        # entrance occupies (0, 5) and (0, 6); an arm reaching x=0,y=5 collides
        w = wall(WallShape.STRAIGHT_HORIZONTAL, (2, 5))
        assert not placement_legal(g, w)

    def test_beam_cells_do_not_block_placement(self):
        g = PlanGrid(12, 12, Facade.WEST)
        g.state[2, 6] = BEAM_LIGHT
        w = wall(WallShape.STRAIGHT_VERTICAL, (6, 4), seg=2)
        assert placement_legal(g, w)

    def test_forbidden_cells_block_placement(self):
        g = PlanGrid(12, 12, Facade.WEST)
        w = wall(WallShape.STRAIGHT_VERTICAL, (6, 5))
        assert not placement_legal(g, w, forbidden=[CellCoord(6, 5)])

    def test_occupied_region_blocks_placement(self):
        g = PlanGrid(12, 12, Facade.WEST)
        labels = np.zeros((12, 12), dtype=np.int32)
        labels[:, 6:] = 1
        w = wall(WallShape.STRAIGHT_VERTICAL, (8, 5))
        assert not placement_legal(g, w, occupied_regions=[1], labels=labels)
        assert placement_legal(g, w, occupied_regions=[0], labels=labels)
        w_left = wall(WallShape.STRAIGHT_VERTICAL, (3, 5))
        assert placement_legal(g, w_left, occupied_regions=[1], labels=labels)
