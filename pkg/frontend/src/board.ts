/** Canvas board: paints the label grid the service returns and resolves
 *  clicks to wall selections. No partition logic lives here; every cell is
 *  drawn straight from the latest snapshot. */

import type { StatePayload, WallDoc } from './types';
import { BEAM_LIGHT, ENTRANCE_OPENING, FREE, WALL_BODY } from './types';

const ROOM_COLORS = [
    '#e8c268', '#7fb3d5', '#a9dfbf', '#d7a3db',
    '#f1948a', '#85e0d5', '#f0b27a', '#b2babb',
    '#d4e157',
];
const UNASSIGNED_COLOR = '#dcdcdc';
const WALL_COLOR = '#33363b';
const ENTRANCE_COLOR = '#2ecc71';
const SELECT_COLOR = '#ff3b30';

export function roomColor(room: number): string {
    if (room < 0) return UNASSIGNED_COLOR;
    return ROOM_COLORS[room % ROOM_COLORS.length];
}

function tint(hex: string, factor = 0.45): string {
    const n = parseInt(hex.slice(1), 16);
    const ch = (shift: number) => {
        const v = (n >> shift) & 0xff;
        return Math.round(v + (255 - v) * factor);
    };
    return `rgb(${ch(16)},${ch(8)},${ch(0)})`;
}

const DIRECTION_VECTORS: Record<string, [number, number]> = {
    n: [0, -1], e: [1, 0], s: [0, 1], w: [-1, 0],
};

/** Body cells of a wall from its serialized form: pivot plus both arms. */
export function wallBodyCells(wall: WallDoc): [number, number][] {
    const cells: [number, number][] = [[wall.pivot[0], wall.pivot[1]]];
    const arms: [string, number][] = [[wall.dir_a, wall.len_a], [wall.dir_b, wall.len_b]];
    for (const [dir, len] of arms) {
        const [dx, dy] = DIRECTION_VECTORS[dir];
        for (let k = 1; k <= len; k++) {
            cells.push([wall.pivot[0] + dx * k, wall.pivot[1] + dy * k]);
        }
    }
    return cells;
}

export class Board {
    readonly canvas: HTMLCanvasElement;
    cellPx = 16;
    private rooms: number[][] = [];
    private structure: number[][] = [];
    private wallOwner = new Map<string, number>();
    private width = 0;
    private height = 0;

    constructor(canvas: HTMLCanvasElement) {
        this.canvas = canvas;
    }

    update(payload: StatePayload): void {
        this.rooms = payload.rooms;
        this.structure = payload.structure;
        this.height = payload.rooms.length;
        this.width = this.height > 0 ? payload.rooms[0].length : 0;
        this.wallOwner.clear();
        for (const wall of payload.walls) {
            for (const [x, y] of wallBodyCells(wall)) {
                this.wallOwner.set(`${x},${y}`, wall.id);
            }
        }
        this.canvas.width = this.width * this.cellPx;
        this.canvas.height = this.height * this.cellPx;
    }

    /** The exact per-cell room ids the painter reads; used by tests to
     *  prove the render matches the service's label grid. */
    renderedRooms(): number[][] {
        return this.rooms.map((row) => row.slice());
    }

    wallAt(cellX: number, cellY: number): number | null {
        return this.wallOwner.get(`${cellX},${cellY}`) ?? null;
    }

    cellFromOffset(offsetX: number, offsetY: number): [number, number] {
        return [Math.floor(offsetX / this.cellPx), Math.floor(offsetY / this.cellPx)];
    }

    draw(selectedWall: number | null): void {
        const ctx = this.canvas.getContext('2d');
        if (!ctx) return;
        const px = this.cellPx;
        ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
        for (let y = 0; y < this.height; y++) {
            for (let x = 0; x < this.width; x++) {
                const code = this.structure[y][x];
                let fill: string;
                if (code === WALL_BODY) {
                    fill = WALL_COLOR;
                } else if (code === ENTRANCE_OPENING) {
                    fill = ENTRANCE_COLOR;
                } else if (code === BEAM_LIGHT) {
                    fill = tint(roomColor(this.rooms[y][x]));
                } else {
                    fill = roomColor(this.rooms[y][x]);
                }
                ctx.fillStyle = fill;
                ctx.fillRect(x * px, y * px, px, px);
                if (code === FREE) continue;
                if (code === WALL_BODY && this.wallAt(x, y) === selectedWall) {
                    ctx.strokeStyle = SELECT_COLOR;
                    ctx.lineWidth = 2;
                    ctx.strokeRect(x * px + 1, y * px + 1, px - 2, px - 2);
                }
            }
        }
        ctx.strokeStyle = 'rgba(0,0,0,0.15)';
        ctx.lineWidth = 1;
        ctx.beginPath();
        for (let x = 0; x <= this.width; x++) {
            ctx.moveTo(x * px + 0.5, 0);
            ctx.lineTo(x * px + 0.5, this.height * px);
        }
        for (let y = 0; y <= this.height; y++) {
            ctx.moveTo(0, y * px + 0.5);
            ctx.lineTo(this.width * px, y * px + 0.5);
        }
        ctx.stroke();
    }
}
