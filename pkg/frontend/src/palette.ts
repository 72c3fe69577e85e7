/** The transformation palette: exactly 14 controls, eight one-cell moves
 *  and six quarter turns, each disabled whenever the action mask says the
 *  move would violate a hard constraint. Disabled buttons never emit. */

import type { ViewState } from './store';
import { TRANSFORMATIONS } from './types';

const LABELS: Record<string, string> = {
    move_n: '↑', move_ne: '↗', move_e: '→', move_se: '↘',
    move_s: '↓', move_sw: '↙', move_w: '←', move_nw: '↖',
    rotate_whole_cw: '⟳', rotate_whole_ccw: '⟲',
    rotate_seg_a_cw: 'A⟳', rotate_seg_a_ccw: 'A⟲',
    rotate_seg_b_cw: 'B⟳', rotate_seg_b_ccw: 'B⟲',
};

const MOVE_GRID_ORDER = [
    'move_nw', 'move_n', 'move_ne',
    'move_w', null, 'move_e',
    'move_sw', 'move_s', 'move_se',
];

const ROTATION_ORDER = [
    'rotate_whole_ccw', 'rotate_whole_cw',
    'rotate_seg_a_ccw', 'rotate_seg_a_cw',
    'rotate_seg_b_ccw', 'rotate_seg_b_cw',
];

export class TransformationPalette {
    readonly root: HTMLElement;
    readonly buttons = new Map<string, HTMLButtonElement>();
    onPick: (transformation: string) => void = () => {};

    constructor(root: HTMLElement) {
        this.root = root;
        const moves = document.createElement('div');
        moves.className = 'palette-moves';
        for (const name of MOVE_GRID_ORDER) {
            if (name === null) {
                const spacer = document.createElement('span');
                spacer.className = 'palette-spacer';
                moves.appendChild(spacer);
                continue;
            }
            moves.appendChild(this.makeButton(name));
        }
        const turns = document.createElement('div');
        turns.className = 'palette-turns';
        for (const name of ROTATION_ORDER) {
            turns.appendChild(this.makeButton(name));
        }
        root.appendChild(moves);
        root.appendChild(turns);
        if (this.buttons.size !== TRANSFORMATIONS.length) {
            throw new Error(`palette must expose ${TRANSFORMATIONS.length} controls`);
        }
    }

    private makeButton(name: string): HTMLButtonElement {
        const button = document.createElement('button');
        button.type = 'button';
        button.className = 'palette-button';
        button.dataset.transformation = name;
        button.title = name;
        button.textContent = LABELS[name];
        button.disabled = true;
        button.addEventListener('click', () => {
            if (!button.disabled) this.onPick(name);
        });
        this.buttons.set(name, button);
        return button;
    }

    /** Enable exactly the transformations legal for the selected wall. */
    update(view: ViewState): void {
        const wall = view.selectedWall;
        for (const [name, button] of this.buttons) {
            const legal = wall !== null && !view.busy && view.status === 'live'
                && view.isLegal(wall, name);
            button.disabled = !legal;
        }
    }
}
