// Filter state drives three panels (map, histogram, untagged list) that must
// always show the same query generation.  Each refresh fetches all three
// endpoints with one serialized filter and commits them in a single frame;
// an in-flight refresh superseded by a newer one is discarded (latest wins),
// and a failed refresh raises a banner while the previous frame stays up.

import {
    FeatureCollection,
    FetchLike,
    HistogramRow,
    UntaggedPage,
    fetchHistogram,
    fetchTweets,
    fetchUntagged,
} from "./api.js";
import { DateRange, ViewState, buildFilterQuery, initialState, withDateRange, withSearch } from "./state.js";

export interface Frame {
    query: string;
    tweets: FeatureCollection;
    histogram: HistogramRow[];
    untagged: UntaggedPage;
}

export interface ControllerOptions {
    baseUrl: string;
    fetchFn: FetchLike;
    onFrame: (frame: Frame) => void;
    onError?: (message: string) => void;
    pollIntervalMs?: number;
}

export class DashboardController {
    state: ViewState;
    private readonly options: ControllerOptions;
    private generation = 0;
    private pollTimer: ReturnType<typeof setInterval> | null = null;

    constructor(options: ControllerOptions, state: ViewState = initialState()) {
        this.options = options;
        this.state = state;
    }

    onSearch(text: string): Promise<void> {
        this.state = withSearch(this.state, text);
        return this.refresh();
    }

    onDateChange(range: DateRange | null): Promise<void> {
        this.state = withDateRange(this.state, range);
        return this.refresh();
    }

    async refresh(): Promise<void> {
        const generation = ++this.generation;
        const query = buildFilterQuery(this.state);
        const { baseUrl, fetchFn } = this.options;
        try {
            const [tweets, histogram, untagged] = await Promise.all([
                fetchTweets(fetchFn, baseUrl, query),
                fetchHistogram(fetchFn, baseUrl, query),
                fetchUntagged(fetchFn, baseUrl, query),
            ]);
            if (generation !== this.generation) {
                return;  // a newer filter superseded this request
            }
            this.options.onFrame({ query, tweets, histogram, untagged });
        } catch (err) {
            if (generation !== this.generation) {
                return;
            }
            this.options.onError?.(err instanceof Error ? err.message : String(err));
        }
    }

    startPolling(): void {
        const interval = this.options.pollIntervalMs ?? 30_000;
        this.stopPolling();
        this.pollTimer = setInterval(() => void this.refresh(), interval);
    }

    stopPolling(): void {
        if (this.pollTimer !== null) {
            clearInterval(this.pollTimer);
            this.pollTimer = null;
        }
    }
}
