/** Wire types for the layout service HTTP API. */

export interface GridSize {
    width: number;
    height: number;
}

export interface ScenarioDoc {
    id: number;
    n_rooms: number;
    desired_areas: number[];
    entrance_facade: string;
    grid: GridSize;
    aspect_bounds: [number, number];
    segment_length: number;
    seed: number;
}

export interface WallDoc {
    id: number;
    pivot: [number, number];
    shape: string;
    dir_a: string;
    dir_b: string;
    len_a: number;
    len_b: number;
    room_index: number | null;
}

export interface ConnectionRow {
    kind: 'living' | 'facade';
    room: number;
    satisfied: boolean;
}

export interface RewardDict {
    violation: number;
    deviation: number;
    terminal: number;
    bonus: number;
    total: number;
}

export interface MetricsDict {
    areas: number[];
    aspects: (number | null)[];
    adjacency_graph: number[][];
    facade_access: boolean[];
    entrance_ok: boolean;
    connections_satisfied: number;
    connections_required: number;
    unassigned_rooms: number[];
}

/** Full board snapshot returned by create/state/step/reset. */
export interface StatePayload {
    session_id: string;
    scenario: ScenarioDoc;
    rooms: number[][];
    structure: number[][];
    walls: WallDoc[];
    metrics: MetricsDict;
    closeness: number;
    connections: ConnectionRow[];
    satisfied_connections: ConnectionRow[];
    missed_connections: ConnectionRow[];
    reward: RewardDict | null;
    outcome: string;
    action_mask: boolean[] | null;
    transformation_names: string[];
    terminated: boolean;
    truncated: boolean;
    steps: number;
    seed: number | null;
}

export interface LegalAction {
    action_index: number;
    wall_id: number;
    transformation: string;
}

export interface ActionsPayload {
    session_id: string;
    actions: LegalAction[];
}

export interface CreateSessionRequest {
    scenario?: number;
    light_mode?: string;
    infiltration?: string;
    horizon?: number | null;
    wall_types?: string;
    max_steps?: number;
    observation?: string;
    seed?: number | null;
}

/** Structure-channel cell codes, matching the service's label grid. */
export const FREE = 0;
export const WALL_BODY = 1;
export const BEAM_LIGHT = 2;
export const ENTRANCE_OPENING = 3;

/** The 14 transformations in action-index order: 8 moves, then 6 turns. */
export const TRANSFORMATIONS = [
    'move_n', 'move_ne', 'move_e', 'move_se',
    'move_s', 'move_sw', 'move_w', 'move_nw',
    'rotate_whole_cw', 'rotate_whole_ccw',
    'rotate_seg_a_cw', 'rotate_seg_a_ccw',
    'rotate_seg_b_cw', 'rotate_seg_b_ccw',
] as const;

export type TransformationName = (typeof TRANSFORMATIONS)[number];
