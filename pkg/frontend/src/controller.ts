/** Wires the widgets to the service: one active session per tab, at most
 *  one in-flight request, undo by replaying the truncated action log. */

import { ApiClient, ApiError } from './api';
import { Board } from './board';
import { Panels } from './panels';
import { TransformationPalette } from './palette';
import { ViewState } from './store';
import type { ScenarioDoc } from './types';

export interface ControllerElements {
    scenarioSelect: HTMLSelectElement;
    seedInput: HTMLInputElement;
    maxStepsInput: HTMLInputElement;
    newButton: HTMLButtonElement;
    resetButton: HTMLButtonElement;
    undoButton: HTMLButtonElement;
    canvas: HTMLCanvasElement;
    paletteRoot: HTMLElement;
    panelsRoot: HTMLElement;
    banner: HTMLElement;
    status: HTMLElement;
}

export class StudioController {
    readonly api: ApiClient;
    readonly view = new ViewState();
    readonly board: Board;
    readonly palette: TransformationPalette;
    readonly panels: Panels;
    private readonly ui: ControllerElements;
    private scenarios: ScenarioDoc[] = [];

    constructor(api: ApiClient, ui: ControllerElements) {
        this.api = api;
        this.ui = ui;
        this.board = new Board(ui.canvas);
        this.palette = new TransformationPalette(ui.paletteRoot);
        this.panels = new Panels(ui.panelsRoot);
        this.palette.onPick = (t) => void this.step(t);
        ui.canvas.addEventListener('click', (ev) => this.onCanvasClick(ev));
        ui.newButton.addEventListener('click', () => void this.createSession());
        ui.resetButton.addEventListener('click', () => void this.reset());
        ui.undoButton.addEventListener('click', () => void this.undo());
    }

    async init(): Promise<void> {
        this.scenarios = await this.api.listScenarios();
        this.ui.scenarioSelect.textContent = '';
        for (const sc of this.scenarios) {
            const option = document.createElement('option');
            option.value = String(sc.id);
            option.textContent = `${sc.id}: ${sc.n_rooms} rooms, `
                + `${sc.grid.width}x${sc.grid.height}, ${sc.entrance_facade}`;
            this.ui.scenarioSelect.appendChild(option);
        }
    }

    async createSession(): Promise<void> {
        if (this.view.busy) return;
        this.view.busy = true;
        this.render();
        try {
            const old = this.view.sessionId;
            if (old !== null) {
                await this.api.deleteSession(old).catch(() => undefined);
            }
            const seedRaw = this.ui.seedInput.value.trim();
            const maxSteps = parseInt(this.ui.maxStepsInput.value, 10) || 200;
            const payload = await this.api.createSession({
                scenario: parseInt(this.ui.scenarioSelect.value, 10) || 1,
                seed: seedRaw === '' ? null : parseInt(seedRaw, 10),
                max_steps: maxSteps,
            });
            this.panels.maxSteps = maxSteps;
            this.view.beginEpisode(payload);
            this.clearBanner();
        } catch (err) {
            this.showError(err);
        } finally {
            this.view.busy = false;
            this.render();
        }
    }

    onCanvasClick(ev: MouseEvent): void {
        if (!this.view.payload) return;
        const rect = this.ui.canvas.getBoundingClientRect();
        const [x, y] = this.board.cellFromOffset(
            ev.clientX - rect.left, ev.clientY - rect.top);
        const wall = this.board.wallAt(x, y);
        if (wall !== null) {
            this.view.selectWall(wall);
            this.render();
        }
    }

    async step(transformation: string): Promise<void> {
        const wall = this.view.selectedWall;
        const sessionId = this.view.sessionId;
        if (this.view.busy || wall === null || sessionId === null) return;
        if (!this.view.isLegal(wall, transformation)) return;
        this.view.busy = true;
        this.render();
        try {
            const payload = await this.api.step(sessionId, wall, transformation);
            this.view.applyStep(payload, wall, transformation);
            if (payload.terminated) {
                this.showFinished(payload.closeness, (payload.reward?.bonus ?? 0) > 0);
            } else if (payload.truncated) {
                this.showBanner('Step budget exhausted. Reset to try again.', 'truncated');
            }
        } catch (err) {
            this.showError(err);
        } finally {
            this.view.busy = false;
            this.render();
        }
    }

    async reset(): Promise<void> {
        const sessionId = this.view.sessionId;
        if (this.view.busy || sessionId === null) return;
        this.view.busy = true;
        this.render();
        try {
            const payload = await this.api.reset(sessionId, this.view.payload?.seed ?? null);
            this.view.beginEpisode(payload);
            this.clearBanner();
        } catch (err) {
            this.showError(err);
        } finally {
            this.view.busy = false;
            this.render();
        }
    }

    /** Undo the last move by resetting to the episode seed and replaying
     *  the logged actions except the last one. */
    async undo(): Promise<void> {
        const sessionId = this.view.sessionId;
        if (this.view.busy || sessionId === null) return;
        if (this.view.history.length === 0) return;
        const plan = this.view.undoActions();
        const seed = this.view.payload?.seed ?? null;
        this.view.busy = true;
        this.render();
        try {
            const fresh = await this.api.reset(sessionId, seed);
            this.view.beginEpisode(fresh);
            for (const action of plan) {
                const payload = await this.api.step(
                    sessionId, action.wallId, action.transformation);
                this.view.applyStep(payload, action.wallId, action.transformation);
            }
            this.clearBanner();
        } catch (err) {
            this.showError(err);
        } finally {
            this.view.busy = false;
            this.render();
        }
    }

    render(): void {
        if (this.view.payload) {
            this.board.update(this.view.payload);
            this.board.draw(this.view.selectedWall);
        }
        this.palette.update(this.view);
        this.panels.update(this.view);
        const { status } = this.ui;
        if (!this.view.payload) {
            status.textContent = 'no session';
        } else {
            const id = this.view.payload.session_id.slice(0, 8);
            status.textContent = `session ${id} (${this.view.status})`
                + (this.view.busy ? ' ...' : '');
        }
        this.ui.resetButton.disabled = this.view.busy || !this.view.payload;
        this.ui.undoButton.disabled = this.view.busy
            || this.view.history.length === 0;
        this.ui.newButton.disabled = this.view.busy;
    }

    private showFinished(closeness: number, bonus: boolean): void {
        const text = `Layout accepted at closeness ${closeness.toFixed(3)}`
            + (bonus ? ', full adjacency bonus earned!' : ', without the adjacency bonus.');
        this.showBanner(text, 'celebrate');
    }

    private showBanner(text: string, kind: string): void {
        this.ui.banner.textContent = text;
        this.ui.banner.className = `banner ${kind}`;
        this.ui.banner.hidden = false;
    }

    private clearBanner(): void {
        this.ui.banner.hidden = true;
        this.ui.banner.textContent = '';
        this.ui.banner.className = 'banner';
    }

    private showError(err: unknown): void {
        if (err instanceof ApiError && err.staleSession) {
            this.view.payload = null;
            this.view.history = [];
            this.showBanner('Session expired on the server. Create a new one.', 'error');
            return;
        }
        const message = err instanceof Error ? err.message : String(err);
        this.showBanner(`Service error: ${message}`, 'error');
    }
}
