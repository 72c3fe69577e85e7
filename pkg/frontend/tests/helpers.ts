// Fabricated snapshots for unit tests that do not need a live service.

import type { StatePayload, WallDoc } from '../src/types';
import { TRANSFORMATIONS } from '../src/types';

export function makeWall(overrides: Partial<WallDoc> = {}): WallDoc {
    return {
        id: 0,
        pivot: [3, 2],
        shape: 'straight_vertical',
        dir_a: 'n',
        dir_b: 's',
        len_a: 1,
        len_b: 1,
        room_index: null,
        ...overrides,
    };
}

/** An 8x6 board with two walls and a hand-written mask. */
export function makePayload(overrides: Partial<StatePayload> = {}): StatePayload {
    const width = 8;
    const height = 6;
    const walls = [
        makeWall({ id: 0 }),
        makeWall({
            id: 1,
            pivot: [6, 3],
            shape: 'l_nw',
            dir_a: 'n',
            dir_b: 'w',
            len_a: 2,
            len_b: 1,
        }),
    ];
    const rooms: number[][] = [];
    for (let y = 0; y < height; y++) {
        const row: number[] = [];
        for (let x = 0; x < width; x++) {
            row.push(x < 3 ? 0 : 1);
        }
        rooms.push(row);
    }
    const structure = rooms.map((row) => row.map(() => 0));
    structure[1][3] = 1;
    structure[2][3] = 1;
    structure[3][3] = 1;
    structure[0][3] = 2;
    structure[4][3] = 2;
    structure[5][3] = 2;
    structure[3][0] = 3;
    const mask = new Array(walls.length * TRANSFORMATIONS.length).fill(false);
    mask[0] = true; // wall 0 move_n
    mask[6] = true; // wall 0 move_w
    mask[14 + 8] = true; // wall 1 rotate_whole_cw
    return {
        session_id: 'test-session',
        scenario: {
            id: 1,
            n_rooms: 2,
            desired_areas: [24, 24],
            entrance_facade: 'w',
            grid: { width, height },
            aspect_bounds: [1.0, 3.0],
            segment_length: 1,
            seed: 0,
        },
        rooms,
        structure,
        walls,
        metrics: {
            areas: [24, 24],
            aspects: [1.33, 1.33],
            adjacency_graph: [[0, 1]],
            facade_access: [true, true],
            entrance_ok: true,
            connections_satisfied: 3,
            connections_required: 3,
            unassigned_rooms: [],
        },
        closeness: 0.5,
        connections: [
            { kind: 'living', room: 1, satisfied: true },
            { kind: 'facade', room: 0, satisfied: true },
            { kind: 'facade', room: 1, satisfied: false },
        ],
        satisfied_connections: [],
        missed_connections: [],
        reward: null,
        outcome: 'ok',
        action_mask: mask,
        transformation_names: [...TRANSFORMATIONS],
        terminated: false,
        truncated: false,
        steps: 0,
        seed: 11,
        ...overrides,
    };
}
