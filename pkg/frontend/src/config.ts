// Static deployment configuration, fetched from config.json next to the page.

import { INDIA_VIEWPORT, Viewport } from "./state.js";

export interface DashboardConfig {
    apiBaseUrl: string;
    pollIntervalMs: number;
    tileUrl: string;
    defaultViewport: Viewport;
}

export const DEFAULT_CONFIG: DashboardConfig = {
    apiBaseUrl: "http://127.0.0.1:8040",
    pollIntervalMs: 30_000,
    tileUrl: "https://tile.openstreetmap.org/{z}/{x}/{y}.png",
    defaultViewport: INDIA_VIEWPORT,
};

export async function loadConfig(url = "./config.json"): Promise<DashboardConfig> {
    try {
        const resp = await fetch(url);
        if (!resp.ok) {
            return DEFAULT_CONFIG;
        }
        const overrides = (await resp.json()) as Partial<DashboardConfig>;
        return { ...DEFAULT_CONFIG, ...overrides };
    } catch {
        return DEFAULT_CONFIG;
    }
}
