import { ApiClient } from './api';
import { StudioController } from './controller';

function grab<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node as T;
}

document.addEventListener('DOMContentLoaded', () => {
    const controller = new StudioController(new ApiClient(''), {
        scenarioSelect: grab<HTMLSelectElement>('scenario'),
        seedInput: grab<HTMLInputElement>('seed'),
        maxStepsInput: grab<HTMLInputElement>('max-steps'),
        newButton: grab<HTMLButtonElement>('new-session'),
        resetButton: grab<HTMLButtonElement>('reset'),
        undoButton: grab<HTMLButtonElement>('undo'),
        canvas: grab<HTMLCanvasElement>('board'),
        paletteRoot: grab('palette'),
        panelsRoot: grab('panels'),
        banner: grab('banner'),
        status: grab('status'),
    });
    void controller.init();
});
