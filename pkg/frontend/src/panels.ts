/** Status panels: per-room areas against the target, aspect ratios, the
 *  closeness gauge, reward decomposition, step budget, the connection
 *  checklist (green satisfied, red missed), and the reward history. */

import { roomColor } from './board';
import type { ViewState } from './store';

function el(tag: string, className: string, text?: string): HTMLElement {
    const node = document.createElement(tag);
    node.className = className;
    if (text !== undefined) node.textContent = text;
    return node;
}

export class Panels {
    readonly root: HTMLElement;
    maxSteps = 200;

    constructor(root: HTMLElement) {
        this.root = root;
    }

    update(view: ViewState): void {
        this.root.textContent = '';
        const payload = view.payload;
        if (!payload) return;
        this.root.appendChild(this.roomsTable(view));
        this.root.appendChild(this.closenessGauge(payload.closeness));
        this.root.appendChild(this.stepCounter(payload.steps));
        this.root.appendChild(this.rewardPanel(view));
        this.root.appendChild(this.checklist(view));
        this.root.appendChild(this.historyPanel(view));
    }

    private roomsTable(view: ViewState): HTMLElement {
        const payload = view.payload!;
        const panel = el('section', 'panel rooms-panel');
        panel.appendChild(el('h3', 'panel-title', 'Rooms'));
        const table = document.createElement('table');
        const head = document.createElement('tr');
        for (const caption of ['', 'room', 'area', 'desired', 'aspect']) {
            head.appendChild(el('th', 'rooms-head', caption));
        }
        table.appendChild(head);
        const { areas, aspects } = payload.metrics;
        payload.scenario.desired_areas.forEach((desired, room) => {
            const row = document.createElement('tr');
            row.className = 'room-row';
            const swatch = el('td', 'room-swatch');
            swatch.style.backgroundColor = roomColor(room);
            row.appendChild(swatch);
            const name = room === 0 ? '0 (living)' : String(room);
            row.appendChild(el('td', 'room-name', name));
            row.appendChild(el('td', 'room-area', String(areas[room] ?? 0)));
            row.appendChild(el('td', 'room-desired', String(desired)));
            const aspect = aspects[room];
            row.appendChild(el('td', 'room-aspect',
                aspect === null ? '-' : aspect.toFixed(2)));
            table.appendChild(row);
        });
        panel.appendChild(table);
        return panel;
    }

    private closenessGauge(closeness: number): HTMLElement {
        const panel = el('section', 'panel closeness-panel');
        panel.appendChild(el('h3', 'panel-title', 'Closeness'));
        const gauge = el('div', 'gauge');
        const fill = el('div', 'gauge-fill');
        fill.style.width = `${Math.round(closeness * 100)}%`;
        gauge.appendChild(fill);
        const mark = el('div', 'gauge-threshold');
        mark.style.left = '80%';
        gauge.appendChild(mark);
        panel.appendChild(gauge);
        panel.appendChild(el('div', 'gauge-value', closeness.toFixed(3)));
        return panel;
    }

    private stepCounter(steps: number): HTMLElement {
        const panel = el('section', 'panel steps-panel');
        panel.appendChild(el('h3', 'panel-title', 'Steps'));
        panel.appendChild(el('div', 'steps-value', `${steps} / ${this.maxSteps}`));
        return panel;
    }

    private rewardPanel(view: ViewState): HTMLElement {
        const panel = el('section', 'panel reward-panel');
        panel.appendChild(el('h3', 'panel-title', 'Last reward'));
        const reward = view.payload!.reward;
        if (!reward) {
            panel.appendChild(el('div', 'reward-empty', 'no step yet'));
            return panel;
        }
        const parts: [string, number][] = [
            ['violation', reward.violation],
            ['deviation', reward.deviation],
            ['terminal', reward.terminal],
            ['bonus', reward.bonus],
            ['total', reward.total],
        ];
        for (const [name, value] of parts) {
            const row = el('div', `reward-row reward-${name}`);
            row.appendChild(el('span', 'reward-name', name));
            row.appendChild(el('span', 'reward-value', value.toFixed(2)));
            panel.appendChild(row);
        }
        return panel;
    }

    private checklist(view: ViewState): HTMLElement {
        const panel = el('section', 'panel connections-panel');
        panel.appendChild(el('h3', 'panel-title', 'Connections'));
        const list = el('ul', 'connection-list');
        for (const row of view.connections) {
            const item = el('li',
                `connection-row ${row.satisfied ? 'satisfied' : 'missed'}`);
            item.dataset.kind = row.kind;
            item.dataset.room = String(row.room);
            const label = row.kind === 'living'
                ? `room ${row.room} adjacent to living room`
                : `room ${row.room} touches a facade`;
            item.appendChild(el('span', 'connection-mark',
                row.satisfied ? '✓' : '✗'));
            item.appendChild(el('span', 'connection-label', label));
            list.appendChild(item);
        }
        panel.appendChild(list);
        return panel;
    }

    private historyPanel(view: ViewState): HTMLElement {
        const panel = el('section', 'panel history-panel');
        panel.appendChild(el('h3', 'panel-title', 'Reward history'));
        const list = el('ol', 'history-list');
        for (const entry of view.history) {
            const item = el('li', 'history-row');
            const summary = `wall ${entry.wallId} ${entry.transformation}: `
                + `${entry.reward.toFixed(2)} (closeness ${entry.closeness.toFixed(3)})`;
            item.textContent = entry.outcome === 'ok'
                ? summary : `${summary} [${entry.outcome}]`;
            list.appendChild(item);
        }
        panel.appendChild(list);
        return panel;
    }
}
