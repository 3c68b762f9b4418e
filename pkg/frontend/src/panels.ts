// DOM renderers for the histogram and untagged panels.

import type { HistogramRow, UntaggedPage } from "./api.js";

export function renderHistogram(el: HTMLElement, rows: HistogramRow[]): void {
    el.textContent = "";
    const max = Math.max(1, ...rows.map((r) => r.count));
    for (const row of rows) {
        const bar = document.createElement("div");
        bar.className = "bar";
        bar.title = `${row.day}: ${row.count} tagged`;
        bar.dataset.day = row.day;
        bar.dataset.count = String(row.count);
        const fill = document.createElement("div");
        fill.className = "bar-fill";
        fill.style.height = `${Math.round((row.count / max) * 100)}%`;
        const label = document.createElement("span");
        label.className = "bar-label";
        label.textContent = row.day.slice(5);  // MM-DD
        bar.append(fill, label);
        el.append(bar);
    }
}

export function renderUntagged(el: HTMLElement, page: UntaggedPage): void {
    el.textContent = "";
    const heading = document.createElement("p");
    heading.className = "untagged-total";
    heading.textContent = `${page.total} tweets without an inferred location`;
    el.append(heading);
    for (const row of page.items) {
        const item = document.createElement("div");
        item.className = "untagged-item";
        item.dataset.tweetId = row.tweet_id;
        const text = document.createElement("p");
        text.textContent = row.text;
        const meta = document.createElement("small");
        meta.textContent = row.created_at;
        item.append(text, meta);
        el.append(item);
    }
}
