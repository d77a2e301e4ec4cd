/**
 * Canvas rendering of the rule.  Tick lines are snapped to device pixels so
 * an alignment of two marks reads as one line, which is the whole product.
 */

import { Lath, ScaleDocument } from "./types.js";
import { ViewState, mmToPx, scalesOf, visibleTicks } from "./view.js";

export const ROW_PX = 84;
const LEVEL_FRACTION = [1.0, 0.6, 0.35];
const RULE_PX = 44;
const LABEL_BAND = 16;

function snap(x: number, dpr: number): number {
  return Math.round(x * dpr) / dpr + 0.5 / dpr;
}

function drawScaleRow(
  ctx: CanvasRenderingContext2D,
  st: ViewState,
  scale: ScaleDocument,
  lath: Lath,
  top: number,
  widthPx: number,
  dpr: number
): void {
  const shift = lath === "slide" ? st.offsetMm : 0;
  const baseline = top + LABEL_BAND + RULE_PX;
  const x0 = mmToPx(st, scale.window_mm[0] + shift);
  const x1 = mmToPx(st, scale.window_mm[1] + shift);

  ctx.fillStyle = lath === "slide" ? "#fdf6e3" : "#ffffff";
  ctx.fillRect(Math.max(0, x0), top + 2, Math.min(widthPx, x1) - Math.max(0, x0), ROW_PX - 6);

  ctx.strokeStyle = "#222";
  ctx.lineWidth = 1 / dpr < 1 ? 1 : 1;
  ctx.beginPath();
  ctx.moveTo(snap(x0, dpr), snap(baseline, dpr));
  ctx.lineTo(snap(x1, dpr), snap(baseline, dpr));
  ctx.stroke();

  ctx.font = "11px system-ui, sans-serif";
  ctx.textAlign = "center";
  ctx.fillStyle = "#111";
  for (const t of visibleTicks(scale, st.zoom)) {
    const x = snap(mmToPx(st, t.position_mm + shift), dpr);
    if (x < -20 || x > widthPx + 20) continue;
    const len = RULE_PX * LEVEL_FRACTION[Math.min(t.level, 2)];
    ctx.beginPath();
    ctx.moveTo(x, baseline);
    ctx.lineTo(x, baseline - len);
    ctx.stroke();
    if (t.label) ctx.fillText(t.label, x, top + LABEL_BAND - 4);
  }

  // S1 marker: triangle under the baseline plus the x0 label
  const sx = mmToPx(st, 0 + shift);
  if (sx > -20 && sx < widthPx + 20) {
    ctx.beginPath();
    ctx.moveTo(sx, baseline + 2);
    ctx.lineTo(sx - 5, baseline + 11);
    ctx.lineTo(sx + 5, baseline + 11);
    ctx.closePath();
    ctx.fillStyle = "#b32";
    ctx.fill();
    if (scale.origin.label) {
      ctx.fillText(scale.origin.label, sx, baseline + 22);
    }
    if (scale.accumulation) {
      ctx.strokeStyle = "#b32";
      const dir = Math.abs(scale.window_mm[1]) >= Math.abs(scale.window_mm[0]) ? 1 : -1;
      for (let k = 1; k <= 3; k++) {
        const cx = sx + dir * (6 + 5 * k);
        ctx.beginPath();
        ctx.moveTo(cx + dir * 3, baseline - 0.7 * RULE_PX);
        ctx.lineTo(cx, baseline - 0.35 * RULE_PX);
        ctx.lineTo(cx + dir * 3, baseline);
        ctx.stroke();
      }
      ctx.strokeStyle = "#222";
    }
  }

  ctx.fillStyle = "#666";
  ctx.textAlign = "left";
  ctx.fillText(scale.spec.name, 6, top + LABEL_BAND + 8);
}

export function drawRule(ctx: CanvasRenderingContext2D, st: ViewState, dpr: number): void {
  const widthPx = st.viewportPx;
  const rows = scalesOf(st.doc);
  const heightPx = rows.length * ROW_PX + 8;
  ctx.save();
  ctx.clearRect(0, 0, widthPx, heightPx);
  rows.forEach(({ scale, lath }, i) => {
    drawScaleRow(ctx, st, scale, lath, 4 + i * ROW_PX, widthPx, dpr);
  });
  // hairline across every lath
  const hx = snap(mmToPx(st, st.hairlineMm), dpr);
  ctx.strokeStyle = "#c00";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(hx, 0);
  ctx.lineTo(hx, heightPx);
  ctx.stroke();
  ctx.restore();
}

export function ruleHeightPx(st: ViewState): number {
  return scalesOf(st.doc).length * ROW_PX + 8;
}

export function slideRowRange(st: ViewState): [number, number] {
  const rows = scalesOf(st.doc);
  let first = -1;
  let last = -1;
  rows.forEach(({ lath }, i) => {
    if (lath === "slide") {
      if (first < 0) first = i;
      last = i;
    }
  });
  return [4 + first * ROW_PX, 4 + (last + 1) * ROW_PX];
}
