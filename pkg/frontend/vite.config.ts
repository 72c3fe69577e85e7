/// <reference types="vitest" />
import { defineConfig } from 'vite';

// The session service runs separately (laserwall serve, default port 8123);
// the dev server proxies API paths to it so the page stays same-origin.
const service = 'http://127.0.0.1:8123';

export default defineConfig({
    server: {
        proxy: {
            '/scenarios': service,
            '/sessions': service,
        },
    },
    test: {
        environment: 'jsdom',
        setupFiles: ['tests/setup.ts'],
        include: ['tests/**/*.test.ts'],
        testTimeout: 120000,
        hookTimeout: 120000,
    },
});
