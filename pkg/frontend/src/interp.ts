/**
 * Monotone piecewise-linear interpolation over a scale's samples table.
 * This is the only way the UI converts between values and positions;
 * expressions are never evaluated on this side of the document boundary.
 */

export interface Sampler {
  values: Float64Array;
  positions: Float64Array; // strictly monotone, increasing or decreasing
  increasing: boolean;
}

export function samplerFrom(samples: [number, number][]): Sampler {
  const n = samples.length;
  const values = new Float64Array(n);
  const positions = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    values[i] = samples[i][0];
    positions[i] = samples[i][1];
  }
  return { values, positions, increasing: positions[n - 1] > positions[0] };
}

/** Largest index i with keys[i] <= x for an ascending array (or -1). */
function lowerBound(keys: ArrayLike<number>, x: number, flip: boolean): number {
  let lo = 0;
  let hi = keys.length - 1;
  const key = (i: number) => (flip ? -keys[i] : keys[i]);
  if (x < key(0)) return -1;
  if (x >= key(hi)) return hi;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (key(mid) <= x) lo = mid;
    else hi = mid;
  }
  return lo;
}

/** Value printed at a lath-local position, or null when off the scale. */
export function valueAtPosition(s: Sampler, positionMm: number): number | null {
  const n = s.positions.length;
  const flip = !s.increasing;
  const p = flip ? -positionMm : positionMm;
  const first = flip ? -s.positions[0] : s.positions[0];
  const last = flip ? -s.positions[n - 1] : s.positions[n - 1];
  if (p < first || p > last) return null;
  const i = lowerBound(s.positions, p, flip);
  if (i < 0) return null;
  if (i >= n - 1) return s.values[n - 1];
  const p1 = flip ? -s.positions[i] : s.positions[i];
  const p2 = flip ? -s.positions[i + 1] : s.positions[i + 1];
  const t = p2 === p1 ? 0 : (p - p1) / (p2 - p1);
  return s.values[i] + t * (s.values[i + 1] - s.values[i]);
}

/** Lath-local position of a value, or null when outside the sampled range. */
export function positionAtValue(s: Sampler, value: number): number | null {
  const n = s.values.length;
  if (value < s.values[0] || value > s.values[n - 1]) return null;
  const i = lowerBound(s.values, value, false);
  if (i < 0) return null;
  if (i >= n - 1) return s.positions[n - 1];
  const v1 = s.values[i];
  const v2 = s.values[i + 1];
  const t = v2 === v1 ? 0 : (value - v1) / (v2 - v1);
  return s.positions[i] + t * (s.positions[i + 1] - s.positions[i]);
}
