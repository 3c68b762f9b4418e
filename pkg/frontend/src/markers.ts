// Feature validation and marker layout.  Invalid features are skipped with a
// console warning; features sharing exact coordinates fan out on a small
// circle so every marker stays individually clickable.

import type { FeatureCollection, GeoFeature } from "./api.js";
import { markerColor } from "./color.js";

export interface MarkerSpec {
    lat: number;
    lon: number;
    color: string;
    tweetId: string;
    phrase: string;
    popupHtml: string;
}

const FAN_RADIUS_DEG = 0.004;

function isValidFeature(feature: unknown): feature is GeoFeature {
    const f = feature as GeoFeature;
    if (!f || f.type !== "Feature" || !f.geometry || f.geometry.type !== "Point") {
        return false;
    }
    const coords = f.geometry.coordinates;
    if (!Array.isArray(coords) || coords.length !== 2) {
        return false;
    }
    const [lon, lat] = coords;
    if (typeof lon !== "number" || typeof lat !== "number") {
        return false;
    }
    if (lat < -90 || lat > 90 || lon < -180 || lon > 180) {
        return false;
    }
    const p = f.properties;
    return Boolean(p && typeof p.tweet_id === "string" && typeof p.hour === "number");
}

function escapeHtml(text: string): string {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

function popupHtml(feature: GeoFeature): string {
    const p = feature.properties;
    return (
        `<div class="popup">` +
        `<p class="popup-text">${escapeHtml(p.text)}</p>` +
        `<p class="popup-meta">${escapeHtml(p.phrase)} · ${escapeHtml(p.created_at)}</p>` +
        `</div>`
    );
}

export function buildMarkerSpecs(collection: FeatureCollection): MarkerSpec[] {
    const specs: MarkerSpec[] = [];
    const byCoordinate = new Map<string, number>();
    for (const feature of collection.features ?? []) {
        if (!isValidFeature(feature)) {
            console.warn("skipping invalid feature", feature);
            continue;
        }
        const [lon, lat] = feature.geometry.coordinates;
        const key = `${lat},${lon}`;
        const seen = byCoordinate.get(key) ?? 0;
        byCoordinate.set(key, seen + 1);
        // first marker sits exactly on the point; duplicates circle around it
        const angle = (seen * 2 * Math.PI) / 8;
        const offset = seen === 0 ? 0 : FAN_RADIUS_DEG * (1 + Math.floor((seen - 1) / 8));
        specs.push({
            lat: lat + offset * Math.sin(angle),
            lon: lon + offset * Math.cos(angle),
            color: markerColor(feature.properties.hour),
            tweetId: feature.properties.tweet_id,
            phrase: feature.properties.phrase,
            popupHtml: popupHtml(feature),
        });
    }
    return specs;
}
