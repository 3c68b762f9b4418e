import { describe, expect, it } from "vitest";

import { buildFilterQuery, initialState, withDateRange, withSearch } from "../src/state.js";

describe("filter query serialization", () => {
    it("encodes the two-term search exactly as the service example", () => {
        const state = withSearch(initialState(), "Dengue, Malaria");
        expect(buildFilterQuery(state)).toBe("q=Dengue,%20Malaria");
    });

    it("keeps commas literal while percent-encoding spaces", () => {
        const state = withSearch(initialState(), "flood relief, dengue fever");
        expect(buildFilterQuery(state)).toBe("q=flood%20relief,%20dengue%20fever");
    });

    it("is empty with no filters", () => {
        expect(buildFilterQuery(initialState())).toBe("");
    });

    it("appends inclusive date bounds", () => {
        let state = withSearch(initialState(), "dengue");
        state = withDateRange(state, { from: "2017-09-12", to: "2017-10-13" });
        expect(buildFilterQuery(state)).toBe("q=dengue&from=2017-09-12&to=2017-10-13");
    });

    it("clearing the range drops from/to entirely", () => {
        let state = withDateRange(initialState(), { from: "2017-09-12", to: "2017-09-13" });
        state = withDateRange(state, null);
        expect(buildFilterQuery(state)).toBe("");
    });

    it("rejects an inverted range", () => {
        expect(() => withDateRange(initialState(), { from: "2017-10-02", to: "2017-10-01" }))
            .toThrow(/invalid date range/);
    });
});
