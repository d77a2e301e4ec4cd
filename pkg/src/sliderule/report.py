"""Report rendering: a figure of the function and its scale, a delimited
density profile, and the analysis blob, written side by side into a
directory.  Matplotlib is imported lazily so the core library stays
import-light."""

from __future__ import annotations

import csv
import json
import math
import os

from . import analysis, documents
from .scale import RenderedScale

__all__ = ["write_report"]

_LEVEL_LEN = (1.0, 0.6, 0.35)


def _profile_rows(s: RenderedScale, n: int = 257):
    fn = s.spec.f
    a, b = s.effective_domain
    unit = s.spec.unit_mm
    rows = []
    for pt in analysis.density_profile(fn, s.spec.domain, n):
        y = fn.value(pt.x)
        if not math.isfinite(y):
            continue
        rows.append(
            {
                "x": pt.x,
                "f": y,
                "position_mm": unit * y,
                "slope_abs": pt.slope_abs,
                "curvature": pt.curvature,
            }
        )
    del a, b
    return rows


def _figure(s: RenderedScale, rows, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [r["x"] for r in rows]
    ys = [r["f"] for r in rows]
    fig, (ax_fn, ax_scale) = plt.subplots(
        2, 1, figsize=(9, 6), gridspec_kw={"height_ratios": [3, 1]}
    )
    ax_fn.plot(xs, ys, lw=1.4, color="#1f77b4")
    ax_fn.axhline(0.0, color="#888", lw=0.7)
    ax_fn.set_ylabel("f(x)  (scale units)")
    ax_fn.set_title(f"{s.spec.name}: distance function and graduation")
    ax_fn.grid(True, alpha=0.25)

    # construction droplines from a few major ticks to the value axis
    majors = [t for t in s.ticks if t.level == 0]
    for t in majors[:12]:
        y = t.position_mm / s.spec.unit_mm
        ax_fn.plot([t.value, t.value], [min(0.0, y), max(0.0, y)], color="#bbb", lw=0.5)

    win_lo, win_hi = s.window_mm
    for t in s.ticks:
        frac = _LEVEL_LEN[min(t.level, 2)]
        ax_scale.plot([t.position_mm, t.position_mm], [0.0, frac], color="k", lw=0.6)
        if t.label:
            ax_scale.text(t.position_mm, 1.12, t.label, ha="center", va="bottom", fontsize=7)
    ax_scale.plot([win_lo, win_hi], [0.0, 0.0], color="k", lw=1.0)
    ax_scale.plot([0.0], [-0.18], marker="^", color="k", markersize=7)
    if s.origin.label:
        ax_scale.text(0.0, -0.62, s.origin.label, ha="center", va="top", fontsize=8)
    ax_scale.set_xlim(win_lo - 0.03 * (win_hi - win_lo + 1), win_hi + 0.03 * (win_hi - win_lo + 1))
    ax_scale.set_ylim(-1.0, 1.8)
    ax_scale.set_yticks([])
    ax_scale.set_xlabel("position (mm)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(s: RenderedScale, out_dir: str, n_profile: int = 257) -> dict:
    """Write <name>_profile.csv, <name>_figure.png and <name>_analysis.json.

    Returns the paths written, keyed by artifact."""
    os.makedirs(out_dir, exist_ok=True)
    stem = s.spec.name or "scale"
    rows = _profile_rows(s, n_profile)

    csv_path = os.path.join(out_dir, f"{stem}_profile.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["x", "f", "position_mm", "slope_abs", "curvature"]
        )
        writer.writeheader()
        writer.writerows(rows)

    fig_path = os.path.join(out_dir, f"{stem}_figure.png")
    _figure(s, rows, fig_path)

    blob = documents._analysis_blob(s)
    blob["origin"] = {
        "kind": s.origin.report.kind,
        "x0": documents._num_or_symbol(s.origin.report.x0),
        "side": s.origin.report.side,
    }
    json_path = os.path.join(out_dir, f"{stem}_analysis.json")
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(blob, fh, indent=2)
        fh.write("\n")
    return {"profile": csv_path, "figure": fig_path, "analysis": json_path}
