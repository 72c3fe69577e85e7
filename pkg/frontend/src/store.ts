/** Client-side view state: the latest board snapshot plus the episode's
 *  step log. The server stays authoritative; everything here is replayable
 *  from the seed and the log. */

import type { ConnectionRow, StatePayload, WallDoc } from './types';
import { TRANSFORMATIONS } from './types';

export interface StepEntry {
    wallId: number;
    transformation: string;
    reward: number;
    closeness: number;
    outcome: string;
}

export type EpisodeStatus = 'live' | 'terminated' | 'truncated';

export class ViewState {
    payload: StatePayload | null = null;
    selectedWall: number | null = null;
    history: StepEntry[] = [];
    busy = false;

    get sessionId(): string | null {
        return this.payload?.session_id ?? null;
    }

    get status(): EpisodeStatus {
        if (!this.payload) return 'live';
        if (this.payload.terminated) return 'terminated';
        if (this.payload.truncated) return 'truncated';
        return 'live';
    }

    get walls(): WallDoc[] {
        return this.payload?.walls ?? [];
    }

    get connections(): ConnectionRow[] {
        return this.payload?.connections ?? [];
    }

    /** Action indices currently legal; empty once the episode is done. */
    legalActions(): Set<number> {
        const mask = this.payload?.action_mask;
        const legal = new Set<number>();
        if (!mask) return legal;
        mask.forEach((ok, index) => {
            if (ok) legal.add(index);
        });
        return legal;
    }

    isLegal(wallId: number, transformation: string): boolean {
        const mask = this.payload?.action_mask;
        if (!mask) return false;
        const t = TRANSFORMATIONS.indexOf(transformation as any);
        if (t < 0) return false;
        return mask[wallId * TRANSFORMATIONS.length + t] === true;
    }

    /** Install a fresh board (create or reset): clears log and selection. */
    beginEpisode(payload: StatePayload): void {
        this.payload = payload;
        this.history = [];
        this.selectedWall = payload.walls.length > 0 ? payload.walls[0].id : null;
    }

    /** Install a stepped board and log the action that produced it. */
    applyStep(payload: StatePayload, wallId: number, transformation: string): void {
        this.payload = payload;
        this.history.push({
            wallId,
            transformation,
            reward: payload.reward?.total ?? 0,
            closeness: payload.closeness,
            outcome: payload.outcome,
        });
    }

    /** The replay plan for undo: every logged action but the last. */
    undoActions(): { wallId: number; transformation: string }[] {
        return this.history.slice(0, -1).map((entry) => ({
            wallId: entry.wallId,
            transformation: entry.transformation,
        }));
    }

    selectWall(wallId: number | null): void {
        if (wallId === null) {
            this.selectedWall = null;
            return;
        }
        if (this.walls.some((w) => w.id === wallId)) {
            this.selectedWall = wallId;
        }
    }
}
