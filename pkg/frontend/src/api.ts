// Typed wrappers over the service HTTP API.  The dashboard never extracts
// locations itself; everything it shows comes from these endpoints.

export interface GeoFeature {
    type: "Feature";
    geometry: { type: "Point"; coordinates: [number, number] };  // [lon, lat]
    properties: {
        tweet_id: string;
        text: string;
        created_at: string;
        hour: number;
        phrase: string;
        geoname_id: number;
    };
}

export interface FeatureCollection {
    type: "FeatureCollection";
    features: GeoFeature[];
}

export interface HistogramRow {
    day: string;   // YYYY-MM-DD
    count: number;
}

export interface UntaggedRow {
    tweet_id: string;
    text: string;
    created_at: string;
    hour: number;
}

export interface UntaggedPage {
    page: number;
    page_size: number;
    total: number;
    items: UntaggedRow[];
}

export type FetchLike = (url: string) => Promise<Response>;

async function getJson<T>(fetchFn: FetchLike, url: string): Promise<T> {
    const resp = await fetchFn(url);
    if (!resp.ok) {
        throw new Error(`GET ${url} failed: ${resp.status}`);
    }
    return (await resp.json()) as T;
}

function withQuery(base: string, path: string, query: string): string {
    return query ? `${base}${path}?${query}` : `${base}${path}`;
}

export function fetchTweets(
    fetchFn: FetchLike, baseUrl: string, query: string,
): Promise<FeatureCollection> {
    return getJson(fetchFn, withQuery(baseUrl, "/tweets", query));
}

export function fetchHistogram(
    fetchFn: FetchLike, baseUrl: string, query: string,
): Promise<HistogramRow[]> {
    return getJson(fetchFn, withQuery(baseUrl, "/histogram", query));
}

export function fetchUntagged(
    fetchFn: FetchLike, baseUrl: string, query: string,
): Promise<UntaggedPage> {
    return getJson(fetchFn, withQuery(baseUrl, "/untagged", query));
}
