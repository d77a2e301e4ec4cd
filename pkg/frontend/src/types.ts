/** Mirrors docs/FORMAT.md of the sliderule package (format_version 1). */

export interface DomainJson {
  lo: number | string; // "-inf" / "+inf" for infinite endpoints
  hi: number | string;
  lo_open: boolean;
  hi_open: boolean;
}

export interface FunctionDescriptor {
  kind: string; // "expr" | "inverse" | "affine"; the UI never evaluates these
  [key: string]: unknown;
}

export interface SpecJson {
  name: string;
  function: FunctionDescriptor;
  domain: DomainJson;
  effective_domain: [number, number];
  unit_mm: number;
  label_format?: { sig_digits: number };
}

export interface OriginJson {
  kind: "root" | "limit" | "standalone";
  x0: number | string | null;
  side: "left" | "right" | "interior";
  label: string;
}

export interface TickJson {
  value: number;
  position_mm: number;
  level: number; // 0 major (labeled), 1, 2 minor
  label: string | null;
}

export interface ScaleDocument {
  format_version: number;
  kind: "scale";
  spec: SpecJson;
  origin: OriginJson;
  direction: "lr" | "rl";
  window_mm: [number, number];
  accumulation: boolean;
  ticks: TickJson[];
  samples: [number, number][]; // [value, position_mm], both columns strictly monotone
  analysis?: unknown;
}

export interface ModelDocument {
  format_version: number;
  kind: "model";
  shared_unit_mm: number;
  offset_mm: number;
  hairline_mm: number;
  stator: ScaleDocument[];
  slide: ScaleDocument[];
}

export type Lath = "stator" | "slide";
