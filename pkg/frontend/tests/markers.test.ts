import { afterEach, describe, expect, it, vi } from "vitest";

import type { FeatureCollection, GeoFeature } from "../src/api.js";
import { buildMarkerSpecs } from "../src/markers.js";

function feature(overrides: Partial<GeoFeature["properties"]> = {},
                 coordinates: [number, number] = [77.23, 28.65]): GeoFeature {
    return {
        type: "Feature",
        geometry: { type: "Point", coordinates },
        properties: {
            tweet_id: "t1",
            text: "flood in Delhi",
            created_at: "2017-10-01T02:00:00Z",
            hour: 2,
            phrase: "Delhi",
            geoname_id: 1273294,
            ...overrides,
        },
    };
}

function collection(features: unknown[]): FeatureCollection {
    return { type: "FeatureCollection", features: features as GeoFeature[] };
}

afterEach(() => {
    vi.restoreAllMocks();
});

describe("marker construction", () => {
    it("one marker per feature with popup text, time and phrase", () => {
        const specs = buildMarkerSpecs(collection([feature()]));
        expect(specs).toHaveLength(1);
        expect(specs[0].lat).toBe(28.65);
        expect(specs[0].lon).toBe(77.23);
        expect(specs[0].popupHtml).toContain("flood in Delhi");
        expect(specs[0].popupHtml).toContain("2017-10-01T02:00:00Z");
        expect(specs[0].popupHtml).toContain("Delhi");
    });

    it("skips invalid features with a console warning", () => {
        const warn = vi.spyOn(console, "warn").mockImplementation(() => undefined);
        const broken = [
            { type: "Feature" },
            feature({}, [200, 95]),
            { type: "Feature", geometry: { type: "LineString", coordinates: [] } },
        ];
        const specs = buildMarkerSpecs(collection([...broken, feature()]));
        expect(specs).toHaveLength(1);
        expect(warn).toHaveBeenCalledTimes(3);
    });

    it("fans out markers sharing exact coordinates so each stays reachable", () => {
        const specs = buildMarkerSpecs(
            collection([feature({ tweet_id: "a" }), feature({ tweet_id: "b" })]),
        );
        expect(specs).toHaveLength(2);
        const positions = new Set(specs.map((s) => `${s.lat},${s.lon}`));
        expect(positions.size).toBe(2);
        // the fan stays tight around the true point
        for (const spec of specs) {
            expect(Math.abs(spec.lat - 28.65)).toBeLessThan(0.01);
            expect(Math.abs(spec.lon - 77.23)).toBeLessThan(0.01);
        }
    });

    it("escapes markup in tweet text", () => {
        const specs = buildMarkerSpecs(
            collection([feature({ text: "<script>alert(1)</script>" })]),
        );
        expect(specs[0].popupHtml).not.toContain("<script>");
        expect(specs[0].popupHtml).toContain("&lt;script&gt;");
    });

    it("empty collection yields an empty layer", () => {
        expect(buildMarkerSpecs(collection([]))).toEqual([]);
    });
});
