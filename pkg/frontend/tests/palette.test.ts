import { beforeEach, describe, expect, it } from 'vitest';
import { TransformationPalette } from '../src/palette';
import { ViewState } from '../src/store';
import { TRANSFORMATIONS } from '../src/types';
import { makePayload } from './helpers';

function freshPalette(): TransformationPalette {
    const root = document.createElement('div');
    document.body.appendChild(root);
    return new TransformationPalette(root);
}

describe('TransformationPalette', () => {
    beforeEach(() => {
        document.body.textContent = '';
    });

    it('exposes exactly one control per transformation', () => {
        const palette = freshPalette();
        const buttons = palette.root.querySelectorAll('button.palette-button');
        expect(buttons).toHaveLength(14);
        const names = new Set(
            Array.from(buttons, (b) => (b as HTMLButtonElement).dataset.transformation),
        );
        expect(names).toEqual(new Set(TRANSFORMATIONS));
    });

    it('enables buttons only where the mask allows the selected wall', () => {
        const palette = freshPalette();
        const view = new ViewState();
        view.beginEpisode(makePayload());
        view.selectWall(0);
        palette.update(view);
        for (const name of TRANSFORMATIONS) {
            expect(palette.buttons.get(name)!.disabled).toBe(!view.isLegal(0, name));
        }
        view.selectWall(1);
        palette.update(view);
        expect(palette.buttons.get('rotate_whole_cw')!.disabled).toBe(false);
        expect(palette.buttons.get('move_n')!.disabled).toBe(true);
    });

    it('disables everything with no selection, while busy, and after the episode ends', () => {
        const palette = freshPalette();
        const view = new ViewState();
        view.beginEpisode(makePayload());

        view.selectWall(null);
        palette.update(view);
        expect([...palette.buttons.values()].every((b) => b.disabled)).toBe(true);

        view.selectWall(0);
        view.busy = true;
        palette.update(view);
        expect([...palette.buttons.values()].every((b) => b.disabled)).toBe(true);

        view.busy = false;
        view.beginEpisode(makePayload({ terminated: true, action_mask: null }));
        palette.update(view);
        expect([...palette.buttons.values()].every((b) => b.disabled)).toBe(true);
    });

    it('emits picks from enabled buttons only', () => {
        const palette = freshPalette();
        const view = new ViewState();
        view.beginEpisode(makePayload());
        view.selectWall(0);
        palette.update(view);
        const picks: string[] = [];
        palette.onPick = (name) => picks.push(name);
        palette.buttons.get('move_n')!.click();
        palette.buttons.get('move_e')!.click();
        palette.buttons.get('rotate_seg_b_ccw')!.click();
        expect(picks).toEqual(['move_n']);
    });
});
