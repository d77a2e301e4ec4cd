"""Command-line surface: every library operation behind one executable.

Subcommands: analyze, build, transform, catalog, compute, render, export,
report.  Documents travel as JSON (path or '-' for stdin/stdout); exit code
1 signals a domain/library error, 2 a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import analysis, documents, engine, report
from .catalog import catalog_codes, catalog_scale
from .errors import SlideRuleError
from .expr import parse as parse_expr
from .interval import Interval, fmt_endpoint, parse_endpoint
from .scale import (
    LabelFormat,
    ScaleSpec,
    build_scale,
    format_value,
    inverse_scale,
    negate_scale,
    reflect_argument_scale,
    translate_scale,
    zoom_scale,
)
from .svgrender import RenderOptions, render_svg

__all__ = ["main"]


def _parse_domain(text: str, open_spec: str) -> Interval:
    parts = text.split(":")
    if len(parts) != 2:
        raise SlideRuleError(f"domain must be 'a:b', got {text!r}")
    lo, hi = parse_endpoint(parts[0]), parse_endpoint(parts[1])
    lo_open = open_spec in ("lo", "both")
    hi_open = open_spec in ("hi", "both")
    try:
        return Interval(lo, hi, lo_open, hi_open)
    except ValueError as exc:
        raise SlideRuleError(str(exc))


def _load_doc(arg: str) -> dict:
    if arg == "-":
        doc = json.load(sys.stdin)
        documents.validate_document(doc)
        return doc
    return documents.load_document(arg)


def _emit_doc(doc: dict, out: str) -> None:
    if out == "-":
        documents.validate_document(doc)
        json.dump(doc, sys.stdout, indent=2, allow_nan=False)
        sys.stdout.write("\n")
    else:
        documents.save_document(doc, out)


def _fmt_witness(w) -> str:
    if not w:
        return ""
    return f" (witness x1={format_value(w[0])}, x2={format_value(w[1])}; f'(x1)*f'(x2) < 0)"


def _analyze_blobs(fn, dom: Interval):
    mono = analysis.classify_monotonicity(fn, dom)
    out = {
        "monotonicity": {
            "kind": mono.kind,
            "witness": list(mono.witness) if mono.witness else None,
        }
    }
    if mono.monotone:
        origin = analysis.locate_origin(fn, dom)
        out["origin"] = {
            "kind": origin.kind,
            "x0": None
            if origin.x0 is None
            else (fmt_endpoint(origin.x0) if math.isinf(origin.x0) else origin.x0),
            "side": origin.side,
        }
    asym = analysis.detect_asymptotes(fn, dom)
    out["asymptotes"] = {
        "slant": list(asym.slant) if asym.slant else None,
        "horizontal": list(asym.horizontal) if asym.horizontal else None,
        "vertical": asym.vertical,
    }
    props = []
    try:
        if dom.lo >= 0:
            props.append(analysis.check_homogeneity(fn, dom))
    except (ValueError, analysis.DomainError):
        pass
    for check in (
        lambda: analysis.check_log_shift(fn, 10.0),
        lambda: analysis.check_exp_shift(fn),
        lambda: analysis.check_self_inverse(fn, dom),
    ):
        try:
            props.append(check())
        except (ValueError, analysis.DomainError):
            pass
    out["properties"] = [
        {
            "property": p.property,
            "holds": p.holds,
            "max_residual": p.max_residual if math.isfinite(p.max_residual) else None,
            "samples_used": p.samples_used,
            "params": {k: v for k, v in p.params.items() if v == v},
        }
        for p in props
    ]
    try:
        out["symmetry_candidates"] = [
            {"q": q, "r": r} for q, r in analysis.suggest_point_symmetry(fn, dom)
        ]
    except analysis.DomainError:
        out["symmetry_candidates"] = []
    return out


def _cmd_analyze(args) -> int:
    fn = parse_expr(args.expression)
    dom = _parse_domain(args.domain, args.open)
    blobs = _analyze_blobs(fn, dom)
    if args.json:
        json.dump(blobs, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0
    print(f"function: {args.expression}")
    print(f"domain: {dom}")
    mono = blobs["monotonicity"]
    if mono["kind"] == analysis.NON_MONOTONE:
        w = mono["witness"]
        print(f"monotonicity: NonMonotone{_fmt_witness(w)}")
    else:
        print(f"monotonicity: {mono['kind'].capitalize()}")
    if "origin" in blobs:
        o = blobs["origin"]
        x0 = "" if o["x0"] is None else f" x0={o['x0'] if isinstance(o['x0'], str) else format_value(o['x0'])}"
        print(f"origin: {o['kind']}{x0} (S1 {o['side']})")
    a = blobs["asymptotes"]
    parts = []
    if a["slant"]:
        parts.append(f"slant c={format_value(a['slant'][0])} b={format_value(a['slant'][1])}")
    if a["horizontal"]:
        parts.append(f"horizontal d={format_value(a['horizontal'][0])} at {a['horizontal'][1]}")
    if a["vertical"] is not None:
        parts.append(f"vertical pole x={format_value(a['vertical'])}")
    print(f"asymptotes: {'; '.join(parts) if parts else 'none detected'}")
    for p in blobs["properties"]:
        verdict = "holds" if p["holds"] else "fails"
        extra = "".join(
            f" {k}={format_value(v) if isinstance(v, float) else v}" for k, v in p["params"].items()
        )
        print(f"property {p['property']}: {verdict}{extra} (samples {p['samples_used']})")
    if blobs["symmetry_candidates"]:
        cands = ", ".join(
            f"(q={format_value(c['q'])}, r={format_value(c['r'])})"
            for c in blobs["symmetry_candidates"]
        )
        print(f"point-symmetry candidates (advisory): {cands}")
    return 0


def _cmd_build(args) -> int:
    fn = parse_expr(args.expression)
    dom = _parse_domain(args.domain, args.open)
    spec = ScaleSpec(
        name=args.name or args.expression,
        f=fn,
        domain=dom,
        unit_mm=args.unit,
        label_format=LabelFormat(args.sig_digits),
    )
    scale = build_scale(spec)
    _emit_doc(documents.scale_document(scale, samples=args.samples), args.out)
    return 0


def _cmd_transform(args) -> int:
    doc = _load_doc(args.document)
    if doc.get("kind") != "scale":
        raise SlideRuleError("transform expects a scale document")
    scale = documents.rendered_scale_from_document(doc)
    op = args.op
    if op == "negate":
        scale = negate_scale(scale)
    elif op == "reflect":
        scale = reflect_argument_scale(scale)
    elif op == "inverse":
        scale = inverse_scale(scale)
    elif op.startswith("translate:"):
        scale = translate_scale(scale, float(op.split(":", 1)[1]))
    elif op.startswith("zoom:"):
        scale = zoom_scale(scale, float(op.split(":", 1)[1]))
    else:
        raise SlideRuleError(
            f"unknown op {op!r}; use negate|reflect|translate:<v>|zoom:<u>|inverse"
        )
    if args.name:
        from dataclasses import replace

        scale = replace(scale, spec=replace(scale.spec, name=args.name))
    _emit_doc(documents.scale_document(scale, samples=args.samples), args.out)
    return 0


def _cmd_catalog(args) -> int:
    if args.list or not args.code:
        for code in catalog_codes():
            print(code)
        return 0
    spec = catalog_scale(args.code, args.unit)
    scale = build_scale(spec)
    _emit_doc(documents.scale_document(scale, samples=args.samples), args.out)
    return 0


def _cmd_compute(args) -> int:
    model = documents.model_from_document(_load_doc(args.model))
    out = engine.compute(model, args.f, args.g, args.h, args.x, args.y)
    print(f"z = {out.value:.10g}")
    return 0


def _cmd_render(args) -> int:
    doc = _load_doc(args.document)
    opt = RenderOptions(
        rule_height_mm=args.rule_height, margin_mm=args.margin, font_mm=args.font
    )
    svg = render_svg(doc, opt)
    if args.out == "-":
        sys.stdout.write(svg)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return 0


def _scale_from_arg(arg: str, unit: float):
    import os

    if os.path.exists(arg) or arg.endswith(".json"):
        doc = documents.load_document(arg)
        if doc.get("kind") != "scale":
            raise SlideRuleError(f"{arg}: not a scale document")
        scale = documents.rendered_scale_from_document(doc)
        if scale.unit_mm != unit:
            scale = zoom_scale(scale, unit)
        return scale
    return build_scale(catalog_scale(arg, unit))


def _cmd_export(args) -> int:
    stator = [_scale_from_arg(a, args.unit) for a in args.stator or []]
    slide = [_scale_from_arg(a, args.unit) for a in args.slide or []]
    model = engine.new_model(stator, slide, offset_mm=args.offset, hairline_mm=args.hairline)
    _emit_doc(
        documents.model_document(model, samples=args.samples, with_analysis=False), args.out
    )
    return 0


def _cmd_report(args) -> int:
    fn = parse_expr(args.expression)
    dom = _parse_domain(args.domain, args.open)
    spec = ScaleSpec(
        name=args.name or "scale",
        f=fn,
        domain=dom,
        unit_mm=args.unit,
        label_format=LabelFormat(args.sig_digits),
    )
    scale = build_scale(spec)
    paths = report.write_report(scale, args.out)
    for kind, path in paths.items():
        print(f"{kind}: {path}")
    return 0


def _add_domain_args(p, required=True):
    p.add_argument("--domain", required=required, help="value interval 'a:b'; endpoints may be -inf/+inf")
    p.add_argument(
        "--open",
        choices=("none", "lo", "hi", "both"),
        default="none",
        help="which domain endpoints are open (excluded)",
    )


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sliderule",
        description="Analyze, build, transform, render and operate slide-rule scales.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="characterize a distance function")
    p.add_argument("expression")
    _add_domain_args(p)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("build", help="build a scale document from an expression")
    p.add_argument("expression")
    _add_domain_args(p)
    p.add_argument("--unit", type=float, default=250.0, help="physical unit u in mm")
    p.add_argument("--name", default=None)
    p.add_argument("--sig-digits", type=int, default=6)
    p.add_argument("--samples", type=int, default=documents.DEFAULT_SAMPLES)
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("transform", help="apply a scale transform to a document")
    p.add_argument("document", help="scale document path, or - for stdin")
    p.add_argument("--op", required=True, help="negate|reflect|translate:<v>|zoom:<u>|inverse")
    p.add_argument("--name", default=None)
    p.add_argument("--samples", type=int, default=documents.DEFAULT_SAMPLES)
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(fn=_cmd_transform)

    p = sub.add_parser("catalog", help="emit a traditional scale (A, C, D, CI, K, ...)")
    p.add_argument("code", nargs="?")
    p.add_argument("--unit", type=float, default=250.0)
    p.add_argument("--list", action="store_true", help="list known codes")
    p.add_argument("--samples", type=int, default=documents.DEFAULT_SAMPLES)
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(fn=_cmd_catalog)

    p = sub.add_parser("compute", help="z = h^-1(f(x) + g(y)) on a model")
    p.add_argument("--model", required=True)
    p.add_argument("--f", required=True, help="stator scale carrying x")
    p.add_argument("--g", required=True, help="slide scale carrying y")
    p.add_argument("--h", dest="h", required=True, help="stator scale read for z")
    p.add_argument("-x", type=float, required=True)
    p.add_argument("-y", type=float, required=True)
    p.set_defaults(fn=_cmd_compute)

    p = sub.add_parser("render", help="render a document to SVG")
    p.add_argument("document", help="scale or model document path, or - for stdin")
    p.add_argument("-o", "--out", default="-")
    p.add_argument("--rule-height", type=float, default=14.0)
    p.add_argument("--margin", type=float, default=8.0)
    p.add_argument("--font", type=float, default=3.0)
    p.set_defaults(fn=_cmd_render)

    p = sub.add_parser("export", help="bundle scales into a model document for the UI")
    p.add_argument("--stator", action="append", help="catalog code or scale document path")
    p.add_argument("--slide", action="append", help="catalog code or scale document path")
    p.add_argument("--unit", type=float, default=250.0)
    p.add_argument("--offset", type=float, default=0.0)
    p.add_argument("--hairline", type=float, default=0.0)
    p.add_argument("--samples", type=int, default=documents.DEFAULT_SAMPLES)
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(fn=_cmd_export)

    p = sub.add_parser(
        "report", help="figure + density profile CSV + analysis JSON into a directory"
    )
    p.add_argument("expression")
    _add_domain_args(p)
    p.add_argument("--unit", type=float, default=250.0)
    p.add_argument("--name", default=None)
    p.add_argument("--sig-digits", type=int, default=6)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(fn=_cmd_report)

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except SlideRuleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
