"""Scale and model documents: the JSON interchange format.

The UI and any other consumer read these documents instead of evaluating
expressions: each scale carries its tick set plus a dense monotone samples
table (value, position) used for interpolation.  Infinite endpoints are the
strings "+inf"/"-inf"; everything else is plain JSON numbers (which
round-trip float64 exactly).
"""

from __future__ import annotations

import json
import math
import os

from . import analysis
from .engine import SlideRuleModel, new_model
from .errors import SchemaError, VersionError
from .interval import Interval
from .scale import (
    LabelFormat,
    OriginInfo,
    RenderedScale,
    ScaleSpec,
    Tick,
    _domain_from_json,
    _domain_to_json,
    distance_from_descriptor,
    function_descriptor,
)

FORMAT_VERSION = 1
DEFAULT_SAMPLES = 1024

__all__ = [
    "FORMAT_VERSION",
    "scale_document",
    "model_document",
    "save_document",
    "load_document",
    "validate_document",
    "rendered_scale_from_document",
    "model_from_document",
]


def _num_or_symbol(x):
    if x is None:
        return None
    if math.isinf(x):
        return "+inf" if x > 0 else "-inf"
    return x


def _symbol_to_num(v, path):
    if v is None:
        return None
    if v == "+inf":
        return math.inf
    if v == "-inf":
        return -math.inf
    if isinstance(v, (int, float)):
        return float(v)
    raise SchemaError(f"expected number or +inf/-inf, got {v!r}", path)


def _samples_table(s: RenderedScale, n: int):
    a, b = s.effective_domain
    fn = s.spec.f
    unit = s.spec.unit_mm
    rows = []
    for k in range(n):
        v = a + (b - a) * k / (n - 1)
        y = fn.value(v)
        if not math.isfinite(y):
            continue
        p = unit * y
        if rows and not (p != rows[-1][1]):
            continue  # drop position-collapsed rows, keep both columns strict
        if rows and (p > rows[-1][1]) != (s.direction == "lr"):
            continue
        rows.append([v, p])
    return rows


def _analysis_blob(s: RenderedScale) -> dict:
    fn, dom = s.spec.f, s.spec.domain
    mono = "increasing" if s.direction == "lr" else "decreasing"
    asym = analysis.detect_asymptotes(fn, dom)
    properties = []
    try:
        if dom.lo >= 0:
            properties.append(analysis.check_homogeneity(fn, dom))
    except (ValueError, analysis.DomainError):
        pass
    for check in (
        lambda: analysis.check_log_shift(fn, 10.0),
        lambda: analysis.check_exp_shift(fn),
        lambda: analysis.check_self_inverse(fn, dom),
    ):
        try:
            properties.append(check())
        except (ValueError, analysis.DomainError):
            pass
    return {
        "monotonicity": {"kind": mono},
        "asymptotes": {
            "slant": list(asym.slant) if asym.slant else None,
            "horizontal": list(asym.horizontal) if asym.horizontal else None,
            "vertical": asym.vertical,
        },
        "properties": [
            {
                "property": p.property,
                "holds": p.holds,
                "max_residual": p.max_residual if math.isfinite(p.max_residual) else None,
                "samples_used": p.samples_used,
                "params": {k: v for k, v in p.params.items() if v == v},
            }
            for p in properties
        ],
    }


def scale_document(s: RenderedScale, samples: int = DEFAULT_SAMPLES, with_analysis: bool = True) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "scale",
        "spec": {
            "name": s.spec.name,
            "function": function_descriptor(s.spec.f),
            "domain": _domain_to_json(s.spec.domain),
            "effective_domain": list(s.effective_domain),
            "unit_mm": s.spec.unit_mm,
            "label_format": {"sig_digits": s.spec.label_format.sig_digits},
        },
        "origin": {
            "kind": s.origin.report.kind,
            "x0": _num_or_symbol(s.origin.report.x0),
            "side": s.origin.report.side,
            "label": s.origin.label,
        },
        "direction": s.direction,
        "window_mm": list(s.window_mm),
        "accumulation": s.accumulation,
        "ticks": [
            {"value": t.value, "position_mm": t.position_mm, "level": t.level, "label": t.label}
            for t in s.ticks
        ],
        "samples": _samples_table(s, samples),
    }
    if with_analysis:
        doc["analysis"] = _analysis_blob(s)
    return doc


def model_document(model: SlideRuleModel, samples: int = DEFAULT_SAMPLES, with_analysis: bool = False) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "model",
        "shared_unit_mm": model.shared_unit_mm,
        "offset_mm": model.offset_mm,
        "hairline_mm": model.hairline_mm,
        "stator": [scale_document(s, samples, with_analysis) for s in model.stator],
        "slide": [scale_document(s, samples, with_analysis) for s in model.slide],
    }


# ---------------------------------------------------------------------------
# Validation


def _need(doc: dict, key: str, path: str):
    if key not in doc:
        raise SchemaError("missing field", f"{path}.{key}" if path else key)
    return doc[key]


def _validate_scale(doc: dict, path: str = ""):
    spec = _need(doc, "spec", path)
    spath = f"{path}.spec" if path else "spec"
    for key in ("name", "function", "domain", "unit_mm", "effective_domain"):
        _need(spec, key, spath)
    unit = spec["unit_mm"]
    if not (isinstance(unit, (int, float)) and math.isfinite(unit) and unit > 0):
        raise SchemaError(f"unit_mm must be a positive number, got {unit!r}", f"{spath}.unit_mm")
    fn = distance_from_descriptor(spec["function"], f"{spath}.function")
    _domain_from_json(spec["domain"], f"{spath}.domain")
    origin = _need(doc, "origin", path)
    opath = f"{path}.origin" if path else "origin"
    kind = _need(origin, "kind", opath)
    if kind not in (analysis.ROOT, analysis.LIMIT_ENDPOINT, analysis.STANDALONE):
        raise SchemaError(f"unknown origin kind {kind!r}", f"{opath}.kind")
    _symbol_to_num(origin.get("x0"), f"{opath}.x0")
    if _need(doc, "direction", path) not in ("lr", "rl"):
        raise SchemaError("direction must be 'lr' or 'rl'", f"{path}.direction" if path else "direction")

    ticks = _need(doc, "ticks", path)
    tpath = f"{path}.ticks" if path else "ticks"
    last_pos = None
    for i, t in enumerate(ticks):
        for key in ("value", "position_mm", "level"):
            _need(t, key, f"{tpath}[{i}]")
        p = t["position_mm"]
        if last_pos is not None and not p > last_pos:
            raise SchemaError("tick positions must be strictly increasing", f"{tpath}[{i}]")
        last_pos = p
        y = fn.value(t["value"])
        if not math.isfinite(y) or abs(p - unit * y) > 1e-9 * (1.0 + abs(p)):
            raise SchemaError(
                f"tick at value {t['value']!r} inconsistent with the distance function",
                f"{tpath}[{i}]",
            )

    samples = _need(doc, "samples", path)
    mpath = f"{path}.samples" if path else "samples"
    if len(samples) < 2:
        raise SchemaError("need at least two sample rows", mpath)
    sgn = None
    for i, row in enumerate(samples):
        if not (isinstance(row, (list, tuple)) and len(row) == 2):
            raise SchemaError("sample rows are [value, position_mm] pairs", f"{mpath}[{i}]")
        if i:
            dv = samples[i][0] - samples[i - 1][0]
            dp = samples[i][1] - samples[i - 1][1]
            if dv <= 0:
                raise SchemaError("sample values must be strictly increasing", mpath)
            if dp == 0:
                raise SchemaError("sample positions must be strictly monotone", mpath)
            s = 1 if dp > 0 else -1
            if sgn is None:
                sgn = s
            elif s != sgn:
                raise SchemaError("sample positions must be strictly monotone", mpath)


def _validate_model(doc: dict):
    unit = _need(doc, "shared_unit_mm", "")
    for lath in ("stator", "slide"):
        scales = _need(doc, lath, "")
        for i, sdoc in enumerate(scales):
            path = f"{lath}[{i}]"
            _validate_scale(sdoc, path)
            if sdoc["spec"]["unit_mm"] != unit:
                raise SchemaError(
                    f"unit {sdoc['spec']['unit_mm']!r} differs from shared_unit_mm {unit!r}",
                    f"{path}.spec.unit_mm",
                )
    for key in ("offset_mm", "hairline_mm"):
        v = _need(doc, key, "")
        if not (isinstance(v, (int, float)) and math.isfinite(v)):
            raise SchemaError("must be a finite number", key)


def validate_document(doc: dict) -> str:
    """Check a parsed document against the schema; returns its kind."""
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionError(f"unsupported format_version {version!r} (expected {FORMAT_VERSION})")
    kind = doc.get("kind")
    if kind == "scale":
        _validate_scale(doc)
    elif kind == "model":
        _validate_model(doc)
    else:
        raise SchemaError(f"unknown document kind {kind!r}", "kind")
    return kind


# ---------------------------------------------------------------------------
# I/O and reconstruction


def save_document(doc: dict, path: str) -> None:
    validate_document(doc)
    text = json.dumps(doc, indent=2, allow_nan=False)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"not valid JSON: {exc}", os.path.basename(path))
    except OSError as exc:
        raise SchemaError(f"cannot read document: {exc}", path)
    validate_document(doc)
    return doc


def rendered_scale_from_document(doc: dict) -> RenderedScale:
    spec = doc["spec"]
    fn = distance_from_descriptor(spec["function"])
    dom = _domain_from_json(spec["domain"], "spec.domain")
    fmt = LabelFormat(int(spec.get("label_format", {}).get("sig_digits", 6)))
    origin = doc["origin"]
    report = analysis.OriginReport(
        origin["kind"], _symbol_to_num(origin.get("x0"), "origin.x0"), origin["side"]
    )
    return RenderedScale(
        spec=ScaleSpec(spec["name"], fn, dom, float(spec["unit_mm"]), fmt),
        origin=OriginInfo(report, origin.get("label", "")),
        ticks=tuple(
            Tick(t["value"], t["position_mm"], int(t["level"]), t.get("label"))
            for t in doc["ticks"]
        ),
        window_mm=tuple(doc["window_mm"]),
        direction=doc["direction"],
        accumulation=bool(doc.get("accumulation", False)),
        effective_domain=tuple(spec["effective_domain"]),
    )


def model_from_document(doc: dict) -> SlideRuleModel:
    stator = [rendered_scale_from_document(d) for d in doc["stator"]]
    slide = [rendered_scale_from_document(d) for d in doc["slide"]]
    return new_model(
        stator, slide, offset_mm=float(doc["offset_mm"]), hairline_mm=float(doc["hairline_mm"])
    )
