// Leaflet glue: one circle marker per spec, popup on click.  Kept thin; all
// layout and color decisions happen in markers.ts where they are testable.

import * as L from "leaflet";

import type { MarkerSpec } from "./markers.js";
import type { Viewport } from "./state.js";

export interface MapHandle {
    map: L.Map;
    layer: L.LayerGroup;
}

export function createMap(el: HTMLElement, viewport: Viewport, tileUrl: string): MapHandle {
    const map = L.map(el, { worldCopyJump: true }).setView(
        [viewport.lat, viewport.lon], viewport.zoom,
    );
    L.tileLayer(tileUrl, {
        attribution: "&copy; OpenStreetMap contributors",
        maxZoom: 18,
    }).addTo(map);
    const layer = L.layerGroup().addTo(map);
    return { map, layer };
}

export function updateMarkers(
    handle: MapHandle,
    specs: MarkerSpec[],
    onSelect?: (spec: MarkerSpec) => void,
): void {
    handle.layer.clearLayers();
    for (const spec of specs) {
        const marker = L.circleMarker([spec.lat, spec.lon], {
            radius: 7,
            color: "#222",
            weight: 1,
            fillColor: spec.color,
            fillOpacity: 0.92,
        });
        marker.bindPopup(spec.popupHtml);
        if (onSelect) {
            marker.on("click", () => onSelect(spec));
        }
        handle.layer.addLayer(marker);
    }
}
