/** Thin typed client for the layout session service. */

import type {
    ActionsPayload,
    CreateSessionRequest,
    ScenarioDoc,
    StatePayload,
} from './types';

export class ApiError extends Error {
    readonly status: number;
    readonly code: string;

    constructor(status: number, code: string, detail: string) {
        super(detail);
        this.status = status;
        this.code = code;
    }

    /** True when the server no longer knows this session (evicted or
     *  deleted); the UI should offer to create a fresh one. */
    get staleSession(): boolean {
        return this.status === 404 && this.code === 'unknown_session';
    }
}

type FetchLike = typeof fetch;

export class ApiClient {
    private readonly base: string;
    private readonly fetchFn: FetchLike;

    constructor(base = '', fetchFn: FetchLike = (...args) => fetch(...args)) {
        this.base = base.replace(/\/$/, '');
        this.fetchFn = fetchFn;
    }

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        const resp = await this.fetchFn(this.base + path, {
            method,
            headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
            body: body === undefined ? undefined : JSON.stringify(body),
        });
        if (resp.status === 204) {
            return undefined as T;
        }
        const data = await resp.json().catch(() => null);
        if (!resp.ok) {
            const detail = data && typeof data === 'object' ? (data as any).detail : null;
            if (detail && typeof detail === 'object') {
                throw new ApiError(resp.status, detail.error ?? 'error', detail.detail ?? resp.statusText);
            }
            throw new ApiError(resp.status, 'error', typeof detail === 'string' ? detail : resp.statusText);
        }
        return data as T;
    }

    listScenarios(): Promise<ScenarioDoc[]> {
        return this.request('GET', '/scenarios');
    }

    createSession(req: CreateSessionRequest): Promise<StatePayload> {
        return this.request('POST', '/sessions', req);
    }

    getState(sessionId: string): Promise<StatePayload> {
        return this.request('GET', `/sessions/${sessionId}/state`);
    }

    getActions(sessionId: string): Promise<ActionsPayload> {
        return this.request('GET', `/sessions/${sessionId}/actions`);
    }

    step(sessionId: string, wallId: number, transformation: string): Promise<StatePayload> {
        return this.request('POST', `/sessions/${sessionId}/step`, {
            wall_id: wallId,
            transformation,
        });
    }

    reset(sessionId: string, seed: number | null): Promise<StatePayload> {
        return this.request('POST', `/sessions/${sessionId}/reset`, { seed });
    }

    deleteSession(sessionId: string): Promise<void> {
        return this.request('DELETE', `/sessions/${sessionId}`);
    }
}
