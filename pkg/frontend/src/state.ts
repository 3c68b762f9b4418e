// View state and its serialization into the API query string.

export interface DateRange {
    from: string;  // YYYY-MM-DD
    to: string;
}

export interface Viewport {
    lat: number;
    lon: number;
    zoom: number;
}

export interface ViewState {
    queryText: string;
    dateRange: DateRange | null;
    viewport: Viewport;
    selectedFeature: { tweetId: string; phrase: string } | null;
}

// Deployment focus is India, but the map itself pans anywhere.
export const INDIA_VIEWPORT: Viewport = { lat: 21.0, lon: 78.5, zoom: 5 };

export function initialState(viewport: Viewport = INDIA_VIEWPORT): ViewState {
    return { queryText: "", dateRange: null, viewport, selectedFeature: null };
}

export function withSearch(state: ViewState, queryText: string): ViewState {
    return { ...state, queryText };
}

export function withDateRange(state: ViewState, range: DateRange | null): ViewState {
    if (range && range.from > range.to) {
        throw new Error(`invalid date range: ${range.from} > ${range.to}`);
    }
    return { ...state, dateRange: range };
}

/**
 * Serialize the filter portion of the state for /tweets, /histogram and
 * /untagged.  Spaces are percent-encoded but commas are kept literal, so the
 * two-term search "Dengue, Malaria" travels as q=Dengue,%20Malaria.
 */
export function buildFilterQuery(state: ViewState): string {
    const parts: string[] = [];
    if (state.queryText.trim()) {
        parts.push("q=" + encodeURIComponent(state.queryText).replace(/%2C/gi, ","));
    }
    if (state.dateRange) {
        parts.push("from=" + encodeURIComponent(state.dateRange.from));
        parts.push("to=" + encodeURIComponent(state.dateRange.to));
    }
    return parts.join("&");
}
