// Page bootstrap: wire the search bar, date pickers, map, histogram and
// untagged list to the controller, then poll.

import { DashboardController } from "./controller.js";
import { loadConfig } from "./config.js";
import { createMap, updateMarkers } from "./map.js";
import { buildMarkerSpecs } from "./markers.js";
import { renderHistogram, renderUntagged } from "./panels.js";
import { initialState } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) {
        throw new Error(`missing #${id}`);
    }
    return node as T;
}

async function boot(): Promise<void> {
    const config = await loadConfig();
    const handle = createMap(el("map"), config.defaultViewport, config.tileUrl);
    const banner = el<HTMLDivElement>("error-banner");
    const histogramEl = el<HTMLDivElement>("histogram");
    const untaggedEl = el<HTMLDivElement>("untagged");

    const controller = new DashboardController(
        {
            baseUrl: config.apiBaseUrl,
            fetchFn: (url) => fetch(url),
            pollIntervalMs: config.pollIntervalMs,
            onFrame: (frame) => {
                banner.hidden = true;
                updateMarkers(handle, buildMarkerSpecs(frame.tweets), (spec) => {
                    controller.state = {
                        ...controller.state,
                        selectedFeature: { tweetId: spec.tweetId, phrase: spec.phrase },
                    };
                });
                renderHistogram(histogramEl, frame.histogram);
                renderUntagged(untaggedEl, frame.untagged);
            },
            onError: (message) => {
                banner.textContent = `refresh failed: ${message} (showing previous data)`;
                banner.hidden = false;
            },
        },
        initialState(config.defaultViewport),
    );

    const search = el<HTMLInputElement>("search");
    search.addEventListener("change", () => void controller.onSearch(search.value));

    const from = el<HTMLInputElement>("date-from");
    const to = el<HTMLInputElement>("date-to");
    const applyDates = () => {
        if (from.value && to.value) {
            void controller.onDateChange({ from: from.value, to: to.value });
        } else if (!from.value && !to.value) {
            void controller.onDateChange(null);
        }
    };
    from.addEventListener("change", applyDates);
    to.addEventListener("change", applyDates);
    el<HTMLButtonElement>("clear-dates").addEventListener("click", () => {
        from.value = "";
        to.value = "";
        void controller.onDateChange(null);
    });

    await controller.refresh();
    controller.startPolling();
}

void boot();
