import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { positionAtValue, samplerFrom, valueAtPosition } from "../src/interp.js";
import { parseModelDocument } from "../src/model.js";
import {
  dragSlide,
  loadModel,
  setHairline,
  visibleTicks,
  zoomAt,
  formatReadout,
} from "../src/view.js";

const fixtureText = readFileSync(new URL("../fixtures/demo-model.json", import.meta.url), "utf-8");
const doc = parseModelDocument(fixtureText);
const VIEWPORT = 900;

function readoutOf(st: ReturnType<typeof loadModel>, name: string): number | null {
  const r = st.readouts.find((r) => r.scale === name);
  if (!r) throw new Error(`no readout for ${name}`);
  return r.value;
}

describe("interpolation over samples", () => {
  it("reproduces every tick value within 0.1% of the value range", () => {
    for (const scale of [...doc.stator, ...doc.slide]) {
      const s = samplerFrom(scale.samples);
      const range = scale.samples[scale.samples.length - 1][0] - scale.samples[0][0];
      for (const t of scale.ticks) {
        const v = valueAtPosition(s, t.position_mm);
        expect(v).not.toBeNull();
        expect(Math.abs((v as number) - t.value)).toBeLessThanOrEqual(1e-3 * Math.abs(range));
      }
    }
  });

  it("inverts its own position mapping", () => {
    const s = samplerFrom(doc.stator[0].samples);
    for (const v of [1.5, 2, 3.7, 6, 9.99]) {
      const p = positionAtValue(s, v);
      expect(p).not.toBeNull();
      expect(valueAtPosition(s, p as number)).toBeCloseTo(v, 6);
    }
  });

  it("handles descending position columns", () => {
    const s = samplerFrom([
      [1, 0],
      [2, -30.1],
      [4, -60.2],
      [10, -100],
    ]);
    expect(s.increasing).toBe(false);
    expect(valueAtPosition(s, -30.1)).toBeCloseTo(2, 12);
    expect(valueAtPosition(s, -80.1)).toBeCloseTo(4 + 6 * ((80.1 - 60.2) / 39.8), 10);
    expect(valueAtPosition(s, 5)).toBeNull();
  });

  it("returns null off the sampled range", () => {
    const s = samplerFrom(doc.stator[0].samples);
    expect(valueAtPosition(s, 1e5)).toBeNull();
    expect(positionAtValue(s, 99)).toBeNull();
  });
});

describe("view state transitions", () => {
  it("loads with the document's offset and hairline", () => {
    const st = loadModel(doc, VIEWPORT);
    expect(st.offsetMm).toBe(doc.offset_mm);
    expect(st.hairlineMm).toBe(doc.hairline_mm);
    expect(st.readouts.length).toBe(3);
  });

  it("C's 1 over D's 3, hairline at C's 2, reads D = 6.00 within 0.1%", () => {
    let st = loadModel(doc, VIEWPORT);
    const samplerC = st.samplers["C"];
    const samplerD = st.samplers["D"];
    const posD3 = positionAtValue(samplerD, 3)!;
    const posC1 = positionAtValue(samplerC, 1)!;
    const wantedOffset = posD3 - posC1;
    st = dragSlide(st, wantedOffset * st.zoom); // slide starts at offset 0
    expect(st.offsetMm).toBeCloseTo(wantedOffset, 9);
    const hairMm = st.offsetMm + positionAtValue(samplerC, 2)!;
    st = setHairline(st, (hairMm - st.panMm) * st.zoom);
    const d = readoutOf(st, "D");
    expect(d).not.toBeNull();
    expect(Math.abs((d as number) - 6.0)).toBeLessThanOrEqual(0.001 * 9); // 0.1% of D's value range
    expect(formatReadout(d, 3)).toBe("6");
  });

  it("hairline on S1 of D reads the origin value 1", () => {
    let st = loadModel(doc, VIEWPORT);
    st = setHairline(st, (0 - st.panMm) * st.zoom);
    expect(readoutOf(st, "D")).toBeCloseTo(1.0, 6);
  });

  it("off-scale readouts are null", () => {
    let st = loadModel(doc, VIEWPORT);
    st = setHairline(st, (400 - st.panMm) * st.zoom); // beyond every window
    expect(readoutOf(st, "D")).toBeNull();
  });

  it("drag followed by the inverse drag restores readouts exactly", () => {
    const st0 = loadModel(doc, VIEWPORT);
    const st1 = dragSlide(dragSlide(st0, 137.25), -137.25);
    expect(st1.offsetMm).toBe(st0.offsetMm);
    expect(st1.readouts).toEqual(st0.readouts);
  });

  it("readouts are recomputed by every transition", () => {
    const st0 = loadModel(doc, VIEWPORT);
    const st1 = dragSlide(st0, 50);
    expect(st1.readouts).not.toEqual(st0.readouts);
  });

  it("zoom keeps the anchor point fixed and applies to every lath", () => {
    const st0 = loadModel(doc, VIEWPORT);
    const centerPx = 300;
    const anchor = st0.panMm + centerPx / st0.zoom;
    const st1 = zoomAt(st0, 10, centerPx);
    expect(st1.zoom).toBeCloseTo(10 * st0.zoom, 9);
    expect(st1.panMm + centerPx / st1.zoom).toBeCloseTo(anchor, 9);
    // zoom is a single shared factor: there is nothing per lath to diverge
    expect(st1.readouts).toEqual(st0.readouts);
  });
});

describe("tick culling under zoom", () => {
  it("x10 zoom near the -inf end reveals an additional tick level", () => {
    const st = loadModel(doc, VIEWPORT);
    const x10 = doc.stator.find((s) => s.spec.name === "X10")!;
    expect(x10.origin.label).toBe("-inf");
    const nearEnd = (ticks: { position_mm: number; level: number }[]) =>
      ticks.filter((t) => t.position_mm <= 5.0);
    const before = nearEnd(visibleTicks(x10, st.zoom));
    const after = nearEnd(visibleTicks(x10, st.zoom * 10));
    expect(after.length).toBeGreaterThan(before.length);
    const levelsBefore = new Set(before.map((t) => t.level));
    const levelsAfter = new Set(after.map((t) => t.level));
    const extra = [...levelsAfter].filter((l) => !levelsBefore.has(l));
    expect(extra.length).toBeGreaterThanOrEqual(1);
  });

  it("never drops majors in favor of minors", () => {
    const d = doc.stator[0];
    const st = loadModel(doc, VIEWPORT);
    const vis = visibleTicks(d, st.zoom);
    const majors = d.ticks.filter((t) => t.level === 0).map((t) => t.value);
    const visMajors = vis.filter((t) => t.level === 0).map((t) => t.value);
    expect(visMajors).toEqual(majors);
  });

  it("keeps every tick once the zoom is deep enough", () => {
    const d = doc.stator[0];
    expect(visibleTicks(d, 1e5).length).toBe(d.ticks.length);
  });
});
