/**
 * Pure view state and its transitions.  All geometry is in rule millimeters;
 * the screen mapping is xPx = (mm - panMm) * zoom.  Every transition returns
 * a fresh state with readouts recomputed, so the rendering layer only draws.
 */

import { Sampler, samplerFrom, valueAtPosition } from "./interp.js";
import { Lath, ModelDocument, ScaleDocument, TickJson } from "./types.js";

export interface Readout {
  scale: string;
  lath: Lath;
  value: number | null; // null when the hairline is off this scale
}

export interface ViewState {
  doc: ModelDocument;
  samplers: Record<string, Sampler>;
  offsetMm: number; // slide displacement
  hairlineMm: number; // absolute rule position of the cursor
  zoom: number; // px per mm, same for every lath
  panMm: number; // rule mm at the viewport's left edge
  viewportPx: number;
  readouts: Readout[];
}

/** Minimum on-screen spacing before a tick is culled (reveals under zoom). */
export const MIN_TICK_PX = 6;

export function scalesOf(doc: ModelDocument): Array<{ scale: ScaleDocument; lath: Lath }> {
  return [
    ...doc.stator.map((scale) => ({ scale, lath: "stator" as Lath })),
    ...doc.slide.map((scale) => ({ scale, lath: "slide" as Lath })),
  ];
}

export function modelWindow(doc: ModelDocument, offsetMm: number): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const { scale, lath } of scalesOf(doc)) {
    const shift = lath === "slide" ? offsetMm : 0;
    lo = Math.min(lo, scale.window_mm[0] + shift);
    hi = Math.max(hi, scale.window_mm[1] + shift);
  }
  return [lo, hi];
}

export function computeReadouts(
  doc: ModelDocument,
  samplers: Record<string, Sampler>,
  offsetMm: number,
  hairlineMm: number
): Readout[] {
  return scalesOf(doc).map(({ scale, lath }) => {
    const local = lath === "slide" ? hairlineMm - offsetMm : hairlineMm;
    return {
      scale: scale.spec.name,
      lath,
      value: valueAtPosition(samplers[scale.spec.name], local),
    };
  });
}

export function loadModel(doc: ModelDocument, viewportPx: number): ViewState {
  const samplers: Record<string, Sampler> = {};
  for (const { scale } of scalesOf(doc)) {
    samplers[scale.spec.name] = samplerFrom(scale.samples);
  }
  const [lo, hi] = modelWindow(doc, doc.offset_mm);
  const zoom = viewportPx / Math.max(1e-9, hi - lo);
  return {
    doc,
    samplers,
    offsetMm: doc.offset_mm,
    hairlineMm: doc.hairline_mm,
    zoom,
    panMm: lo,
    viewportPx,
    readouts: computeReadouts(doc, samplers, doc.offset_mm, doc.hairline_mm),
  };
}

function withReadouts(st: ViewState): ViewState {
  return { ...st, readouts: computeReadouts(st.doc, st.samplers, st.offsetMm, st.hairlineMm) };
}

/** Translate the slide by a screen distance. */
export function dragSlide(st: ViewState, dxPx: number): ViewState {
  return withReadouts({ ...st, offsetMm: st.offsetMm + dxPx / st.zoom });
}

/** Put the hairline under a viewport pixel. */
export function setHairline(st: ViewState, xPx: number): ViewState {
  return withReadouts({ ...st, hairlineMm: st.panMm + xPx / st.zoom });
}

/** Pan by a screen distance. */
export function panView(st: ViewState, dxPx: number): ViewState {
  return { ...st, panMm: st.panMm - dxPx / st.zoom };
}

/**
 * Zoom all laths together by `factor`, keeping the rule point under
 * `centerPx` fixed on screen.
 */
export function zoomAt(st: ViewState, factor: number, centerPx: number): ViewState {
  const anchorMm = st.panMm + centerPx / st.zoom;
  const zoom = Math.min(1e7, Math.max(1e-4, st.zoom * factor));
  return { ...st, zoom, panMm: anchorMm - centerPx / zoom };
}

export function mmToPx(st: ViewState, mm: number): number {
  return (mm - st.panMm) * st.zoom;
}

export function pxToMm(st: ViewState, px: number): number {
  return st.panMm + px / st.zoom;
}

/**
 * Ticks that fit on screen at this zoom: majors first, then minors that
 * keep at least MIN_TICK_PX pixels from every kept neighbor.  Zooming in
 * shrinks the cull distance, revealing ticks that were collapsed.
 */
export function visibleTicks(scale: ScaleDocument, zoom: number, minPx: number = MIN_TICK_PX): TickJson[] {
  const minMm = minPx / zoom;
  const byLevel = [...scale.ticks].sort(
    (a, b) => a.level - b.level || a.position_mm - b.position_mm
  );
  const kept: number[] = []; // positions, ascending
  const out: TickJson[] = [];
  for (const t of byLevel) {
    // binary search the insertion point among kept positions
    let lo = 0;
    let hi = kept.length;
    while (lo < hi) {
      const mid = (lo + hi) >> 1;
      if (kept[mid] < t.position_mm) lo = mid + 1;
      else hi = mid;
    }
    const prevOk = lo === 0 || t.position_mm - kept[lo - 1] >= minMm;
    const nextOk = lo === kept.length || kept[lo] - t.position_mm >= minMm;
    if (prevOk && nextOk) {
      kept.splice(lo, 0, t.position_mm);
      out.push(t);
    }
  }
  return out.sort((a, b) => a.position_mm - b.position_mm);
}

/** Round-trippable display text for a readout (em dash when off scale). */
export function formatReadout(value: number | null, digits: number = 4): string {
  if (value === null || !isFinite(value)) return "—";
  if (value === 0) return "0";
  const text = value.toPrecision(digits);
  return text.includes("e") ? text : text.replace(/(\.\d*?)0+$/, "$1").replace(/\.$/, "");
}
