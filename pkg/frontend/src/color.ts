// Hour-of-day marker shading: tweets posted at night render darker.
// Lightness is a monotone function of the hour's distance from midnight,
// with hour 0 the darkest pole and midday the lightest.

const HUE = 16;          // warm marker tone
const SATURATION = 85;
const LIGHTNESS_MIN = 18;  // 00:00
const LIGHTNESS_MAX = 62;  // 12:00

export function hourDistanceFromMidnight(hour: number): number {
    if (!Number.isInteger(hour) || hour < 0 || hour > 23) {
        throw new Error(`hour out of range: ${hour}`);
    }
    return Math.min(hour, 24 - hour);
}

export function markerLightness(hour: number): number {
    const dist = hourDistanceFromMidnight(hour);
    return LIGHTNESS_MIN + ((LIGHTNESS_MAX - LIGHTNESS_MIN) * dist) / 12;
}

export function markerColor(hour: number): string {
    return `hsl(${HUE}, ${SATURATION}%, ${markerLightness(hour).toFixed(1)}%)`;
}

/** Parse the lightness component back out of a markerColor() string. */
export function lightnessOf(color: string): number {
    const match = /,\s*([\d.]+)%\)$/.exec(color);
    if (!match) {
        throw new Error(`not an hsl marker color: ${color}`);
    }
    return parseFloat(match[1]);
}
