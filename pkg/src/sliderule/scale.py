"""Scale construction: ticks, origin marker, windowing, and the transforms.

A scale prints the value x at signed physical position unit_mm * f(x) from
the origin point S1 (always at position 0).  The builder accepts any
distance function exposing eval/value; expressions come from the expr
module, and the transforms below wrap them (numeric inverse, affine
combinations) when no closed form exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Union

from . import analysis, expr
from .analysis import (
    DECREASING,
    INCREASING,
    LIMIT_ENDPOINT,
    ROOT,
    SIDE_INTERIOR,
    SIDE_LEFT,
    SIDE_RIGHT,
    STANDALONE,
    OriginReport,
    effective_bounds,
    invert_value,
    locate_origin,
)
from .errors import DomainError, NonMonotoneError, OutOfRangeError, SchemaError, UnboundedImageError
from .expr import EvalResult, Expression
from .interval import Interval, fmt_endpoint

__all__ = [
    "LabelFormat",
    "ScaleSpec",
    "Tick",
    "OriginInfo",
    "RenderedScale",
    "InverseDistance",
    "AffineDistance",
    "DistanceFunction",
    "build_scale",
    "negate_scale",
    "reflect_argument_scale",
    "translate_scale",
    "zoom_scale",
    "inverse_scale",
    "format_value",
    "function_descriptor",
    "distance_from_descriptor",
]

# Physical graduation policy: target/minimum tick spacing as a fraction of
# the rendered window width, subdivision pattern 1 -> 0.5 -> 0.2 -> 0.1 per
# decade of the value axis.
S_TARGET_FRACTION = 0.02
S_MIN_FRACTION = 0.004
_MAX_TICKS = 4000
_MAX_CANDIDATES_PER_GAP = 512

# Open or infinite domain ends where |f| diverges are cut where the scale
# would exceed this physical length; explicitly closed endpoints are never
# cut (the caller asked for them), they either render or error.
DEFAULT_MAX_LENGTH_MM = 10_000.0


# ---------------------------------------------------------------------------
# Distance-function wrappers


class InverseDistance:
    """f^{-1} as a distance function, evaluated by bracketed inversion."""

    def __init__(self, base, base_domain: Interval, bracket=None):
        self.base = base
        self.base_domain = base_domain
        if bracket is None:
            a, b, _ = effective_bounds(base, base_domain)
            bracket = (a, b)
        self.bracket = bracket

    def value(self, x: float) -> float:
        try:
            return invert_value(self.base, self.base_domain, x, bounds=self.bracket)
        except (OutOfRangeError, DomainError):
            return math.nan

    def eval(self, x: float) -> EvalResult:
        v = self.value(x)
        if not math.isfinite(v):
            return EvalResult(math.nan, math.nan, "outside the image of the base function")
        r = self.base.eval(v)
        if r.derivative == 0.0 or math.isnan(r.derivative):
            return EvalResult(v, math.inf, "non-finite derivative")
        d = 1.0 / r.derivative if math.isfinite(r.derivative) else 0.0
        return EvalResult(v, d, None)


class AffineDistance:
    """mul * base(arg_mul * x) + add; composition collapses to one layer."""

    def __init__(self, base, mul: float = 1.0, add: float = 0.0, arg_mul: float = 1.0):
        if isinstance(base, AffineDistance):
            # mul*(m*b(am*(a*x)) + ad) + add
            self.base = base.base
            self.mul = mul * base.mul
            self.add = mul * base.add + add
            self.arg_mul = base.arg_mul * arg_mul
        else:
            self.base = base
            self.mul = mul
            self.add = add
            self.arg_mul = arg_mul

    @property
    def is_identity(self) -> bool:
        return self.mul == 1.0 and self.add == 0.0 and self.arg_mul == 1.0

    def value(self, x: float) -> float:
        return self.mul * self.base.value(self.arg_mul * x) + self.add

    def eval(self, x: float) -> EvalResult:
        r = self.base.eval(self.arg_mul * x)
        return EvalResult(
            self.mul * r.value + self.add, self.mul * self.arg_mul * r.derivative, r.error
        )


DistanceFunction = Union[Expression, InverseDistance, AffineDistance]


def _dist_negate(fn) -> DistanceFunction:
    if isinstance(fn, Expression):
        return expr.negated(fn)
    out = AffineDistance(fn, mul=-1.0)
    return out.base if out.is_identity else out


def _dist_reflect(fn) -> DistanceFunction:
    # the geometric reflection realizes -f(-x)
    if isinstance(fn, Expression):
        return expr.negated(expr.reflected_arg(fn))
    out = AffineDistance(fn, mul=-1.0, arg_mul=-1.0)
    return out.base if out.is_identity else out


def _dist_shift(fn, v: float) -> DistanceFunction:
    if isinstance(fn, Expression):
        return expr.shifted(fn, v)
    out = AffineDistance(fn, add=v)
    return out.base if out.is_identity else out


def function_descriptor(fn) -> dict:
    """JSON-ready description of a distance function (for documents)."""
    if isinstance(fn, Expression):
        return {"kind": "expr", "source": expr.print_expr(fn)}
    if isinstance(fn, InverseDistance):
        return {
            "kind": "inverse",
            "base": function_descriptor(fn.base),
            "base_domain": _domain_to_json(fn.base_domain),
        }
    if isinstance(fn, AffineDistance):
        return {
            "kind": "affine",
            "base": function_descriptor(fn.base),
            "mul": fn.mul,
            "add": fn.add,
            "arg_mul": fn.arg_mul,
        }
    raise TypeError(f"not a distance function: {fn!r}")


def distance_from_descriptor(desc: dict, path: str = "function") -> DistanceFunction:
    kind = desc.get("kind")
    if kind == "expr":
        return expr.parse(desc["source"])
    if kind == "inverse":
        dom = _domain_from_json(desc["base_domain"], f"{path}.base_domain")
        return InverseDistance(distance_from_descriptor(desc["base"], f"{path}.base"), dom)
    if kind == "affine":
        return AffineDistance(
            distance_from_descriptor(desc["base"], f"{path}.base"),
            mul=float(desc["mul"]),
            add=float(desc["add"]),
            arg_mul=float(desc["arg_mul"]),
        )
    raise SchemaError(f"unknown function kind {kind!r}", path)


def _domain_to_json(dom: Interval) -> dict:
    return {
        "lo": fmt_endpoint(dom.lo) if math.isinf(dom.lo) else dom.lo,
        "hi": fmt_endpoint(dom.hi) if math.isinf(dom.hi) else dom.hi,
        "lo_open": dom.lo_open,
        "hi_open": dom.hi_open,
    }


def _domain_from_json(d: dict, path: str) -> Interval:
    def num(v):
        if v == "+inf":
            return math.inf
        if v == "-inf":
            return -math.inf
        return float(v)

    try:
        return Interval(num(d["lo"]), num(d["hi"]), bool(d.get("lo_open", False)), bool(d.get("hi_open", False)))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(str(exc), path)


# ---------------------------------------------------------------------------
# Core data types


@dataclass(frozen=True)
class LabelFormat:
    sig_digits: int = 6


@dataclass(frozen=True)
class ScaleSpec:
    name: str
    f: DistanceFunction
    domain: Interval
    unit_mm: float
    label_format: LabelFormat = LabelFormat()

    def __post_init__(self):
        if not (math.isfinite(self.unit_mm) and self.unit_mm > 0):
            raise ValueError("unit_mm must be finite and positive")


@dataclass(frozen=True)
class Tick:
    value: float
    position_mm: float
    level: int  # 0 major (labeled), 1, 2 minor
    label: Optional[str] = None


@dataclass(frozen=True)
class OriginInfo:
    report: OriginReport
    label: str  # formatted x0, "+inf"/"-inf", or "" for standalone


@dataclass(frozen=True)
class RenderedScale:
    spec: ScaleSpec
    origin: OriginInfo
    ticks: tuple
    window_mm: tuple  # (lo, hi), always containing 0
    direction: str  # "lr": labels increase left-to-right; "rl": right-to-left
    accumulation: bool  # values pile up against S1 (limit-endpoint origin)
    effective_domain: tuple  # finite value range actually rendered

    @property
    def unit_mm(self) -> float:
        return self.spec.unit_mm

    @property
    def name(self) -> str:
        return self.spec.name


def format_value(v: float, sig_digits: int = 6) -> str:
    """Shortest decimal text that round-trips at the configured precision."""
    if v == 0:
        return "0"
    return format(v, f".{sig_digits}g")


def _origin_label(report: OriginReport, fmt: LabelFormat) -> str:
    if report.kind == STANDALONE or report.x0 is None:
        return ""
    if math.isinf(report.x0):
        return fmt_endpoint(report.x0)
    return format_value(report.x0, fmt.sig_digits)


# ---------------------------------------------------------------------------
# Building


def _step_ladder(span: float):
    """Decimal steps 10^k, 5*10^(k-1), 2*10^(k-1), 10^(k-1), ... from above span."""
    k = math.ceil(math.log10(span)) + 1
    while True:
        base = 10.0**k
        yield base
        yield base / 2.0
        yield base / 5.0
        k -= 1


def _base_step(a: float, b: float):
    """Largest sensible major step: multiple count closest to 10 within [2, 40]."""
    span = b - a
    snap = 1e-9 * span
    best = None
    ladder = _step_ladder(span)
    for _ in range(40):
        step = next(ladder)
        k_lo = math.ceil((a - snap) / step)
        k_hi = math.floor((b + snap) / step)
        count = k_hi - k_lo + 1
        if count > 40:
            break
        if count >= 2:
            score = abs(count - 10)
            if best is None or score < best[0]:
                best = (score, step)
    if best is None:
        # fall back: first step that yields at least two multiples
        ladder = _step_ladder(span)
        step = next(ladder)
        while math.floor((b + snap) / step) - math.ceil((a - snap) / step) + 1 < 2:
            step = next(ladder)
        return step
    return best[1]


def _steps_below(base: float, count: int):
    out = []
    ladder = _step_ladder(base * 2)
    step = next(ladder)
    while step >= base * 0.99:
        step = next(ladder)
    for _ in range(count):
        out.append(step)
        step = next(ladder)
    return out


class _TickAccumulator:
    """Value-keyed tick store enforcing the minimum physical spacing."""

    def __init__(self, pos_of, s_min: float):
        self.pos_of = pos_of
        self.s_min = s_min
        self.by_value = {}  # value -> (position, level)
        self.sorted_values = []
        self.dropped_near = []  # positions of candidates rejected by s_min

    def _neighbors(self, value):
        import bisect

        i = bisect.bisect_left(self.sorted_values, value)
        prev_v = self.sorted_values[i - 1] if i > 0 else None
        next_v = self.sorted_values[i] if i < len(self.sorted_values) else None
        return prev_v, next_v

    def try_add(self, value: float, level: int, force: bool = False) -> bool:
        import bisect

        if value in self.by_value:
            return False
        p = self.pos_of(value)
        if p is None:
            return False
        prev_v, next_v = self._neighbors(value)
        if not force:
            if prev_v is not None and abs(p - self.by_value[prev_v][0]) < self.s_min:
                self.dropped_near.append(p)
                return False
            if next_v is not None and abs(self.by_value[next_v][0] - p) < self.s_min:
                self.dropped_near.append(p)
                return False
        self.by_value[value] = (p, level)
        bisect.insort(self.sorted_values, value)
        return True

    def gaps(self):
        vals = self.sorted_values
        for v1, v2 in zip(vals, vals[1:]):
            yield v1, v2, abs(self.by_value[v2][0] - self.by_value[v1][0])

    def __len__(self):
        return len(self.sorted_values)


def _generate_ticks(fn, a: float, b: float, unit: float, width: float, fmt: LabelFormat):
    s_target = S_TARGET_FRACTION * width
    s_min = S_MIN_FRACTION * width
    span = b - a
    snap = 1e-9 * span

    cache = {}

    def pos_of(v):
        if v in cache:
            return cache[v]
        y = fn.value(v)
        p = unit * y if math.isfinite(y) else None
        cache[v] = p
        return p

    acc = _TickAccumulator(pos_of, s_min)
    # domain ends are always marked (they bound the graduation)
    acc.try_add(a, 0, force=True)
    acc.try_add(b, 0, force=True)
    base = _base_step(a, b)
    k_lo = math.ceil((a - snap) / base)
    k_hi = math.floor((b + snap) / base)
    for k in range(k_lo, k_hi + 1):
        v = k * base
        acc.try_add(min(max(v, a), b) if abs(v - a) < snap or abs(v - b) < snap else v, 0)

    for depth, step in enumerate(_steps_below(base, 14), start=1):
        level = 1 if depth <= 2 else 2
        added = 0
        for v1, v2, gap in list(acc.gaps()):
            if gap <= s_target or len(acc) >= _MAX_TICKS:
                continue
            k1 = math.floor((v1 + snap) / step) + 1
            k2 = math.ceil((v2 - snap) / step) - 1
            if k2 < k1:
                continue
            ks = range(k1, k2 + 1)
            if len(ks) > _MAX_CANDIDATES_PER_GAP:
                half = _MAX_CANDIDATES_PER_GAP // 2
                ks = list(range(k1, k1 + half)) + list(range(k2 - half + 1, k2 + 1))
            for k in ks:
                if acc.try_add(k * step, level):
                    added += 1
        if added == 0 and all(gap <= s_target for _, _, gap in acc.gaps()):
            break

    ticks = []
    for v in acc.sorted_values:
        p, level = acc.by_value[v]
        label = format_value(v, fmt.sig_digits) if level == 0 else None
        ticks.append(Tick(v, p, level, label))
    ticks.sort(key=lambda t: t.position_mm)
    return ticks, bool(acc.dropped_near)


def _position_or_error(fn, x: float, unit: float):
    v = fn.value(x)
    if not math.isfinite(v):
        raise UnboundedImageError(
            f"function not evaluable at the requested endpoint x={x:g}"
        )
    return unit * v


def _truncate_diverging_end(fn, end_x, ref_x, cap_units):
    """Pull a diverging open/infinite end back to where |f| = cap_units."""
    f_end = fn.value(end_x)
    if math.isfinite(f_end) and abs(f_end) <= cap_units:
        return end_x
    f_ref = fn.value(ref_x)
    if not math.isfinite(f_ref) or abs(f_ref) > cap_units:
        raise UnboundedImageError(
            "image exceeds the length budget over the whole requested domain"
        )
    target = math.copysign(cap_units, f_end if math.isfinite(f_end) else (f_ref or 1.0))

    def g(t):
        v = fn.value(t)
        return (v if math.isfinite(v) else math.copysign(math.inf, target)) - target

    ga, gb = g(ref_x), g(end_x)
    if not math.isfinite(gb):
        # walk inward until evaluable
        lo, hi = (ref_x, end_x) if ref_x < end_x else (end_x, ref_x)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if math.isfinite(g(mid)):
                if end_x > ref_x:
                    end_x, gb = mid, g(mid)
                else:
                    end_x, gb = mid, g(mid)
                break
            if end_x > ref_x:
                hi = mid
            else:
                lo = mid
        else:
            return ref_x
        gb = g(end_x)
    if ga * gb > 0:
        return end_x
    return analysis.brent_root(g, ref_x, end_x, ga, gb, tol=1e-12 * (1 + abs(end_x)))


def build_scale(
    spec: ScaleSpec,
    max_length_mm: float = DEFAULT_MAX_LENGTH_MM,
    n_check: int = 257,
) -> RenderedScale:
    """Generate the tick set, origin marker and window for a scale spec."""
    fn, dom, unit = spec.f, spec.domain, spec.unit_mm
    mono = analysis.classify_monotonicity(fn, dom, n_check)
    if not mono.monotone:
        raise NonMonotoneError(
            f"{spec.name or str(fn)}: not strictly monotone on {dom}", witness=mono.witness
        )
    origin = locate_origin(fn, dom, n_check)

    a, b, _ = effective_bounds(fn, dom)
    mid = 0.5 * (a + b)
    cap_units = max_length_mm / unit
    # explicitly closed finite endpoints are honored verbatim, but a pole
    # there means the true image is unbounded (the float value is noise)
    if math.isfinite(dom.lo) and not dom.lo_open:
        if analysis._vertical_pole(fn, dom.lo, mid):
            raise UnboundedImageError(
                f"image unbounded approaching x={dom.lo:g}; choose an open or smaller domain"
            )
    else:
        a = _truncate_diverging_end(fn, a, mid, cap_units)
    if math.isfinite(dom.hi) and not dom.hi_open:
        if analysis._vertical_pole(fn, dom.hi, mid):
            raise UnboundedImageError(
                f"image unbounded approaching x={dom.hi:g}; choose an open or smaller domain"
            )
    else:
        b = _truncate_diverging_end(fn, b, mid, cap_units)

    pa = _position_or_error(fn, a, unit)
    pb = _position_or_error(fn, b, unit)
    win_lo = min(0.0, pa, pb)
    win_hi = max(0.0, pa, pb)
    width = win_hi - win_lo
    if width <= 0 or not math.isfinite(width):
        raise UnboundedImageError(f"degenerate or unbounded window [{win_lo}, {win_hi}]")

    ticks, dropped = _generate_ticks(fn, a, b, unit, width, spec.label_format)
    accumulation = origin.kind == LIMIT_ENDPOINT and dropped
    direction = "lr" if mono.kind == INCREASING else "rl"
    return RenderedScale(
        spec=spec,
        origin=OriginInfo(origin, _origin_label(origin, spec.label_format)),
        ticks=tuple(ticks),
        window_mm=(win_lo, win_hi),
        direction=direction,
        accumulation=accumulation,
        effective_domain=(a, b),
    )


# ---------------------------------------------------------------------------
# Transforms


def _flip_side(side: str) -> str:
    if side == SIDE_LEFT:
        return SIDE_RIGHT
    if side == SIDE_RIGHT:
        return SIDE_LEFT
    return SIDE_INTERIOR


def negate_scale(s: RenderedScale) -> RenderedScale:
    """Mirror every position through S1; printed values stay."""
    spec = replace(s.spec, f=_dist_negate(s.spec.f))
    ticks = tuple(
        Tick(t.value, -t.position_mm, t.level, t.label) for t in reversed(s.ticks)
    )
    report = s.origin.report
    origin = OriginInfo(replace(report, side=_flip_side(report.side)), s.origin.label)
    return RenderedScale(
        spec=spec,
        origin=origin,
        ticks=ticks,
        window_mm=(-s.window_mm[1], -s.window_mm[0]),
        direction="rl" if s.direction == "lr" else "lr",
        accumulation=s.accumulation,
        effective_domain=s.effective_domain,
    )


def reflect_argument_scale(s: RenderedScale) -> RenderedScale:
    """Mirror positions through S1 and negate every printed value."""
    spec = replace(
        s.spec,
        f=_dist_reflect(s.spec.f),
        domain=_reflected_domain(s.spec.domain),
    )
    fmt = s.spec.label_format
    ticks = tuple(
        Tick(
            -t.value,
            -t.position_mm,
            t.level,
            format_value(-t.value, fmt.sig_digits) if t.label is not None else None,
        )
        for t in reversed(s.ticks)
    )
    report = s.origin.report
    new_x0 = None if report.x0 is None else -report.x0
    new_report = replace(report, x0=new_x0, side=_flip_side(report.side))
    origin = OriginInfo(new_report, _origin_label(new_report, fmt))
    return RenderedScale(
        spec=spec,
        origin=origin,
        ticks=ticks,
        window_mm=(-s.window_mm[1], -s.window_mm[0]),
        direction=s.direction,
        accumulation=s.accumulation,
        effective_domain=(-s.effective_domain[1], -s.effective_domain[0]),
    )


def _reflected_domain(dom: Interval) -> Interval:
    return Interval(-dom.hi, -dom.lo, dom.hi_open, dom.lo_open)


def translate_scale(s: RenderedScale, v: float) -> RenderedScale:
    """Shift the whole scale by v units: the distance function becomes f+v."""
    fn = _dist_shift(s.spec.f, v)
    spec = replace(s.spec, f=fn)
    du = s.unit_mm * v
    ticks = tuple(Tick(t.value, t.position_mm + du, t.level, t.label) for t in s.ticks)
    report = locate_origin(fn, s.spec.domain)
    origin = OriginInfo(report, _origin_label(report, s.spec.label_format))
    positions = [t.position_mm for t in ticks]
    win_lo = min(0.0, *positions) if positions else 0.0
    win_hi = max(0.0, *positions) if positions else 0.0
    return RenderedScale(
        spec=spec,
        origin=origin,
        ticks=ticks,
        window_mm=(win_lo, win_hi),
        direction=s.direction,
        accumulation=report.kind == LIMIT_ENDPOINT and s.accumulation,
        effective_domain=s.effective_domain,
    )


def zoom_scale(s: RenderedScale, new_unit_mm: float) -> RenderedScale:
    """Change the physical unit; the graduation is regenerated."""
    if not (math.isfinite(new_unit_mm) and new_unit_mm > 0):
        raise ValueError("new_unit_mm must be finite and positive")
    rebuilt = build_scale(replace(s.spec, unit_mm=new_unit_mm))
    # the origin classification is unit-invariant, and for inverse scales it
    # carries limit knowledge from beyond the domain window: keep it
    return replace(rebuilt, origin=s.origin, accumulation=s.accumulation)


def _limit_of_f_at_zero(fn, dom: Interval):
    """lim f(x) as x -> 0, probed from the side(s) the domain lives on;
    None when 0 is unreachable for f."""
    v0 = fn.value(0.0)
    if math.isfinite(v0):
        return v0
    if dom.lo >= 0:
        sides = (1.0,)
    elif dom.hi <= 0:
        sides = (-1.0,)
    else:
        sides = (1.0, -1.0)
    for side in sides:
        vals = []
        for j in range(1, 300):
            v = fn.value(side * 10.0**-j)
            if math.isfinite(v):
                vals.append(v)
        if len(vals) < 12:
            continue
        tail = vals[-8:]
        span = max(tail) - min(tail)
        if span < 1e-9 * (1.0 + abs(tail[-1])):
            return tail[-1]
        growing = all(abs(t2) >= abs(t1) for t1, t2 in zip(tail, tail[1:]))
        if growing and abs(tail[-1]) > abs(vals[0]) + 10.0:
            return math.copysign(math.inf, tail[-1])
    return None


def inverse_scale(s: RenderedScale) -> RenderedScale:
    """The scale of f^{-1}: domain becomes the image, geometry re-derived."""
    fn = s.spec.f
    dom = s.spec.domain
    a, b = s.effective_domain
    if isinstance(fn, InverseDistance):
        new_fn = fn.base
        new_dom = fn.base_domain
    else:
        new_fn = InverseDistance(fn, dom, bracket=(a, b))
        fa, fb = fn.value(a), fn.value(b)
        lo, hi = (fa, fb) if fa < fb else (fb, fa)
        increasing = fa < fb
        lo_open = dom.lo_open if increasing else dom.hi_open
        hi_open = dom.hi_open if increasing else dom.lo_open
        new_dom = Interval(lo, hi, lo_open, hi_open)
    spec = replace(s.spec, f=new_fn, domain=new_dom)
    scale = build_scale(spec)
    if not isinstance(new_fn, InverseDistance):
        return scale
    # origin of the inverse per the limit rule: x0' = lim_{x->0} f(x),
    # probed on the base function wherever it evaluates
    limit = _limit_of_f_at_zero(fn, dom)
    if limit is None:
        report = replace(scale.origin.report, kind=STANDALONE, x0=None)
    elif math.isinf(limit):
        report = replace(scale.origin.report, kind=LIMIT_ENDPOINT, x0=limit)
    else:
        report = replace(scale.origin.report, kind=ROOT, x0=limit)
    origin = OriginInfo(report, _origin_label(report, s.spec.label_format))
    accumulation = report.kind == LIMIT_ENDPOINT and scale.accumulation
    return replace(scale, origin=origin, accumulation=accumulation)
