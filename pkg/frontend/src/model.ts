import { ModelDocument, ScaleDocument } from "./types.js";

export const FORMAT_VERSION = 1;

export class DocumentError extends Error {}

function fail(path: string, message: string): never {
  throw new DocumentError(`${path}: ${message}`);
}

function checkScale(doc: ScaleDocument, path: string, sharedUnit: number): void {
  if (!doc.spec) fail(path, "missing spec");
  if (typeof doc.spec.name !== "string" || !doc.spec.name) fail(`${path}.spec.name`, "missing");
  if (doc.spec.unit_mm !== sharedUnit) {
    fail(
      `${path}.spec.unit_mm`,
      `unit ${doc.spec.unit_mm} differs from shared_unit_mm ${sharedUnit}; ` +
        "all scales must be zoomed by the same factor"
    );
  }
  if (doc.direction !== "lr" && doc.direction !== "rl") fail(`${path}.direction`, "must be lr|rl");
  if (!Array.isArray(doc.ticks) || doc.ticks.length < 2) fail(`${path}.ticks`, "need at least 2");
  let lastPos = -Infinity;
  for (let i = 0; i < doc.ticks.length; i++) {
    const t = doc.ticks[i];
    if (typeof t.value !== "number" || typeof t.position_mm !== "number") {
      fail(`${path}.ticks[${i}]`, "value/position_mm must be numbers");
    }
    if (!(t.position_mm > lastPos)) fail(`${path}.ticks[${i}]`, "positions must increase");
    lastPos = t.position_mm;
  }
  const rows = doc.samples;
  if (!Array.isArray(rows) || rows.length < 2) fail(`${path}.samples`, "need at least 2 rows");
  const sign = Math.sign(rows[1][1] - rows[0][1]);
  for (let i = 1; i < rows.length; i++) {
    const [v0, p0] = rows[i - 1];
    const [v1, p1] = rows[i];
    if (!(v1 > v0)) fail(`${path}.samples`, `values not strictly increasing at row ${i}`);
    if (Math.sign(p1 - p0) !== sign || p1 === p0) {
      fail(`${path}.samples`, `positions not strictly monotone at row ${i}`);
    }
  }
}

/** Parse and validate a model document exported by `sliderule export`. */
export function parseModelDocument(text: string): ModelDocument {
  let doc: ModelDocument;
  try {
    doc = JSON.parse(text);
  } catch (e) {
    throw new DocumentError(`not valid JSON: ${(e as Error).message}`);
  }
  if (doc.format_version !== FORMAT_VERSION) {
    fail("format_version", `unsupported ${doc.format_version}, expected ${FORMAT_VERSION}`);
  }
  if (doc.kind !== "model") fail("kind", `expected "model", got ${JSON.stringify(doc.kind)}`);
  if (!(typeof doc.shared_unit_mm === "number" && doc.shared_unit_mm > 0)) {
    fail("shared_unit_mm", "must be a positive number");
  }
  if (typeof doc.offset_mm !== "number" || typeof doc.hairline_mm !== "number") {
    fail("offset_mm/hairline_mm", "must be numbers");
  }
  const names = new Set<string>();
  (["stator", "slide"] as const).forEach((lath) => {
    const scales = doc[lath];
    if (!Array.isArray(scales)) fail(lath, "must be an array of scale documents");
    scales.forEach((s, i) => {
      checkScale(s, `${lath}[${i}]`, doc.shared_unit_mm);
      if (names.has(s.spec.name)) fail(`${lath}[${i}].spec.name`, `duplicate ${s.spec.name}`);
      names.add(s.spec.name);
    });
  });
  return doc;
}
