"""Deterministic SVG rendering of scale and model documents.

Coordinates are millimeters (2 decimals); identical documents yield
byte-identical output.  Each scale becomes one <g>: a baseline, ticks whose
lengths step 100%/60%/35% of the rule height by level, labels on the
majors, the S1 triangle with its x0 label, and an accumulation glyph where
values pile up against the origin.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["RenderOptions", "render_svg"]


@dataclass(frozen=True)
class RenderOptions:
    rule_height_mm: float = 14.0
    margin_mm: float = 8.0
    font_mm: float = 3.0
    row_gap_mm: float = 4.0
    stroke_mm: float = 0.18


_LEVEL_FRACTION = (1.0, 0.6, 0.35)


def _f(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )


def _row_height(opt: RenderOptions) -> float:
    # label band above the graduation, origin band below the baseline
    return (opt.font_mm + 1.5) + opt.rule_height_mm + (opt.font_mm + 3.0)


def _scale_group(doc: dict, opt: RenderOptions, tx: float, ty: float) -> list:
    name = doc["spec"]["name"]
    h = opt.rule_height_mm
    label_band = opt.font_mm + 1.5
    baseline = label_band + h
    win_lo, win_hi = doc["window_mm"]
    out = [f'<g id="scale-{_esc(name)}" transform="translate({_f(tx)},{_f(ty)})">']
    out.append(
        f'<line x1="{_f(win_lo)}" y1="{_f(baseline)}" x2="{_f(win_hi)}" y2="{_f(baseline)}" '
        f'stroke="#000" stroke-width="{_f(opt.stroke_mm)}"/>'
    )
    for tick in doc["ticks"]:
        x = tick["position_mm"]
        frac = _LEVEL_FRACTION[min(int(tick["level"]), 2)]
        out.append(
            f'<line x1="{_f(x)}" y1="{_f(baseline)}" x2="{_f(x)}" y2="{_f(baseline - h * frac)}" '
            f'stroke="#000" stroke-width="{_f(opt.stroke_mm)}"/>'
        )
        if tick.get("label"):
            out.append(
                f'<text x="{_f(x)}" y="{_f(label_band - 0.8)}" font-size="{_f(opt.font_mm)}" '
                f'font-family="Helvetica, Arial, sans-serif" text-anchor="middle">'
                f"{_esc(tick['label'])}</text>"
            )
    # S1: triangle pointing at the baseline from below, x0 label underneath
    tri_y = baseline + 0.5
    out.append(
        f'<path d="M {_f(0.0)} {_f(tri_y)} L {_f(-1.1)} {_f(tri_y + 2.2)} '
        f'L {_f(1.1)} {_f(tri_y + 2.2)} Z" fill="#000"/>'
    )
    origin_label = doc["origin"].get("label", "")
    if origin_label:
        out.append(
            f'<text x="{_f(0.0)}" y="{_f(tri_y + 2.2 + opt.font_mm)}" '
            f'font-size="{_f(opt.font_mm)}" font-family="Helvetica, Arial, sans-serif" '
            f'text-anchor="middle">{_esc(origin_label)}</text>'
        )
    if doc.get("accumulation"):
        side = 1.0 if abs(win_hi) >= abs(win_lo) else -1.0
        for k in (1, 2, 3):
            x0 = side * (0.7 * k)
            x1 = side * (0.7 * k + 0.5)
            out.append(
                f'<line x1="{_f(x1)}" y1="{_f(baseline - 0.7 * h)}" x2="{_f(x0)}" '
                f'y2="{_f(baseline - 0.35 * h)}" stroke="#000" '
                f'stroke-width="{_f(opt.stroke_mm)}"/>'
            )
            out.append(
                f'<line x1="{_f(x0)}" y1="{_f(baseline - 0.35 * h)}" x2="{_f(x1)}" '
                f'y2="{_f(baseline)}" stroke="#000" stroke-width="{_f(opt.stroke_mm)}"/>'
            )
    out.append("</g>")
    return out


def render_svg(doc: dict, options: RenderOptions = RenderOptions()) -> str:
    """Render a scale or model document to SVG text."""
    opt = options
    kind = doc.get("kind")
    if kind == "scale":
        scale_docs = [(doc, 0.0)]
        offset = 0.0
        hairline = None
        win_lo, win_hi = doc["window_mm"]
    elif kind == "model":
        offset = doc["offset_mm"]
        hairline = doc["hairline_mm"]
        scale_docs = [(d, 0.0) for d in doc["stator"]] + [(d, offset) for d in doc["slide"]]
        win_lo = min(d["window_mm"][0] + dx for d, dx in scale_docs)
        win_hi = max(d["window_mm"][1] + dx for d, dx in scale_docs)
    else:
        raise ValueError(f"not a renderable document: kind={kind!r}")

    row_h = _row_height(opt)
    width = (win_hi - win_lo) + 2 * opt.margin_mm
    height = len(scale_docs) * row_h + (len(scale_docs) - 1) * opt.row_gap_mm + 2 * opt.margin_mm
    tx0 = opt.margin_mm - win_lo

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}mm" height="{_f(height)}mm" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
        f'<rect x="0" y="0" width="{_f(width)}" height="{_f(height)}" fill="#fff"/>',
    ]
    for i, (sdoc, dx) in enumerate(scale_docs):
        ty = opt.margin_mm + i * (row_h + opt.row_gap_mm)
        lines.extend(_scale_group(sdoc, opt, tx0 + dx, ty))
    if hairline is not None:
        x = tx0 + hairline
        lines.append(
            f'<line x1="{_f(x)}" y1="{_f(opt.margin_mm - 2)}" x2="{_f(x)}" '
            f'y2="{_f(height - opt.margin_mm + 2)}" stroke="#c00" '
            f'stroke-width="{_f(opt.stroke_mm * 1.5)}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
