import { DocumentError, parseModelDocument } from "./model.js";
import { drawRule, ruleHeightPx, slideRowRange } from "./render.js";
import {
  ViewState,
  dragSlide,
  formatReadout,
  loadModel,
  panView,
  setHairline,
  zoomAt,
} from "./view.js";

let state: ViewState | null = null;

const canvas = document.getElementById("rule") as HTMLCanvasElement;
const readoutBox = document.getElementById("readouts") as HTMLElement;
const banner = document.getElementById("banner") as HTMLElement;
const fileInput = document.getElementById("file") as HTMLInputElement;

function showError(message: string): void {
  banner.textContent = message;
  banner.style.display = "block";
}

function clearError(): void {
  banner.style.display = "none";
}

function redraw(): void {
  if (!state) return;
  const dpr = window.devicePixelRatio || 1;
  const width = canvas.clientWidth;
  const height = ruleHeightPx(state);
  canvas.width = Math.round(width * dpr);
  canvas.height = Math.round(height * dpr);
  canvas.style.height = `${height}px`;
  const ctx = canvas.getContext("2d")!;
  ctx.scale(dpr, dpr);
  drawRule(ctx, state, dpr);

  readoutBox.innerHTML = "";
  for (const r of state.readouts) {
    const div = document.createElement("div");
    div.className = "readout";
    div.innerHTML = `<span class="name">${r.scale}</span><span class="val">${formatReadout(
      r.value
    )}</span><span class="lath">${r.lath}</span>`;
    readoutBox.appendChild(div);
  }
}

function update(next: ViewState): void {
  state = next;
  redraw();
}

function loadText(text: string): void {
  try {
    const doc = parseModelDocument(text);
    clearError();
    update(loadModel(doc, canvas.clientWidth));
  } catch (e) {
    if (e instanceof DocumentError) showError(`document rejected — ${e.message}`);
    else throw e;
  }
}

fileInput.addEventListener("change", () => {
  const f = fileInput.files?.[0];
  if (!f) return;
  f.text().then(loadText, (e) => showError(String(e)));
});

// Drag on a slide row moves the slide; anywhere else pans the view.
// A plain click (no movement) sets the hairline.
canvas.addEventListener("pointerdown", (e: PointerEvent) => {
  if (!state) return;
  const rect = canvas.getBoundingClientRect();
  const startX = e.clientX;
  const y = e.clientY - rect.top;
  const [slideTop, slideBottom] = slideRowRange(state);
  const onSlide = y >= slideTop && y < slideBottom;
  let lastX = startX;
  let moved = false;
  canvas.setPointerCapture(e.pointerId);
  const onMove = (ev: PointerEvent) => {
    const dx = ev.clientX - lastX;
    lastX = ev.clientX;
    if (Math.abs(ev.clientX - startX) > 2) moved = true;
    if (!state || dx === 0) return;
    update(onSlide ? dragSlide(state, dx) : panView(state, dx));
  };
  const onUp = (ev: PointerEvent) => {
    canvas.removeEventListener("pointermove", onMove);
    canvas.removeEventListener("pointerup", onUp);
    if (!moved && state) {
      update(setHairline(state, ev.clientX - rect.left));
    }
  };
  canvas.addEventListener("pointermove", onMove);
  canvas.addEventListener("pointerup", onUp);
});

canvas.addEventListener(
  "wheel",
  (e: WheelEvent) => {
    if (!state) return;
    e.preventDefault();
    const rect = canvas.getBoundingClientRect();
    const factor = e.deltaY < 0 ? 1.25 : 0.8;
    update(zoomAt(state, factor, e.clientX - rect.left));
  },
  { passive: false }
);

window.addEventListener("resize", redraw);

// try the bundled demo model (works when served, not from file://)
fetch("fixtures/demo-model.json")
  .then((r) => (r.ok ? r.text() : Promise.reject(new Error(`HTTP ${r.status}`))))
  .then(loadText)
  .catch(() => showError("no demo model found — open a model document exported by the CLI"));
