"""The virtual slide rule: stator/slide assembly executing z = h^-1(f(x)+g(y)).

Sliding the laths adds physical lengths; the engine keeps one signed offset
for the slide and reads values back through monotone inversion.  By
convention g lives on the slide and f, h on the stator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .analysis import effective_bounds, invert_value
from .errors import OffScaleError, OutOfRangeError, SlideRuleError
from .scale import RenderedScale

__all__ = ["SlideRuleModel", "Readout", "new_model", "align", "read", "compute", "compute_geometric"]

STATOR = "stator"
SLIDE = "slide"


@dataclass
class SlideRuleModel:
    stator: list
    slide: list
    shared_unit_mm: float
    offset_mm: float = 0.0
    hairline_mm: float = 0.0
    _brackets: dict = field(default_factory=dict, repr=False)

    def lath_of(self, name: str) -> str:
        for s in self.stator:
            if s.name == name:
                return STATOR
        for s in self.slide:
            if s.name == name:
                return SLIDE
        raise SlideRuleError(f"no scale named {name!r} on this rule")

    def scale(self, name: str) -> RenderedScale:
        for s in self.stator + self.slide:
            if s.name == name:
                return s
        raise SlideRuleError(f"no scale named {name!r} on this rule")

    def bracket(self, name: str):
        if name not in self._brackets:
            self._brackets[name] = self.scale(name).effective_domain
        return self._brackets[name]


@dataclass(frozen=True)
class Readout:
    scale_name: str
    value: float
    position_mm: float  # lath-local position u*f(value)
    on_scale: bool


def new_model(stator, slide, offset_mm: float = 0.0, hairline_mm: float = 0.0) -> SlideRuleModel:
    scales = list(stator) + list(slide)
    if not scales:
        raise SlideRuleError("a slide rule needs at least one scale")
    unit = scales[0].unit_mm
    for s in scales:
        if s.unit_mm != unit:
            raise SlideRuleError(
                f"scale {s.name!r} has unit {s.unit_mm} mm but the rule uses {unit} mm; "
                "zoom all scales by the same factor"
            )
    names = [s.name for s in scales]
    if len(set(names)) != len(names):
        raise SlideRuleError(f"duplicate scale names: {names}")
    return SlideRuleModel(list(stator), list(slide), unit, offset_mm, hairline_mm)


def _mark_position(model: SlideRuleModel, scale: RenderedScale, x: float) -> float:
    a, b = scale.effective_domain
    tol = 1e-9 * (1.0 + b - a)
    if not (a - tol <= x <= b + tol):
        raise OutOfRangeError(
            f"value {x:g} outside the domain [{a:g}, {b:g}] of scale {scale.name!r}",
            x,
            a,
            b,
        )
    v = scale.spec.f.value(x)
    if not math.isfinite(v):
        raise OutOfRangeError(
            f"scale {scale.name!r} undefined at {x:g}", x, a, b
        )
    return model.shared_unit_mm * v


def align(model: SlideRuleModel, slide_scale: str, x: float, stator_scale: str, y: float) -> SlideRuleModel:
    """Slide the rule so the slide scale's mark x covers the stator's mark y."""
    if model.lath_of(slide_scale) != SLIDE:
        raise SlideRuleError(f"scale {slide_scale!r} is not on the slide")
    if model.lath_of(stator_scale) != STATOR:
        raise SlideRuleError(f"scale {stator_scale!r} is not on the stator")
    ps = _mark_position(model, model.scale(slide_scale), x)
    pt = _mark_position(model, model.scale(stator_scale), y)
    model.offset_mm = pt - ps
    return model


def read(model: SlideRuleModel, scale: str, at_mm: float) -> Readout:
    """Convert an absolute rule position into a value on the named scale."""
    s = model.scale(scale)
    local = at_mm - model.offset_mm if model.lath_of(scale) == SLIDE else at_mm
    d = local / model.shared_unit_mm
    try:
        value = invert_value(s.spec.f, s.spec.domain, d, bounds=model.bracket(scale))
    except OutOfRangeError:
        return Readout(scale, math.nan, local, False)
    return Readout(scale, value, local, True)


def _off_scale(name: str, d: float, exc: OutOfRangeError, unit: float) -> OffScaleError:
    span = exc.hi - exc.lo
    fold = span if d > exc.hi else -span
    return OffScaleError(
        f"result distance {d:g} runs off scale {name!r} (image [{exc.lo:g}, {exc.hi:g}]); "
        f"re-align with the slide's other index to fold by {-fold:g} units "
        f"({-fold * unit:g} mm)",
        d,
        exc.lo,
        exc.hi,
        fold,
    )


def compute(
    model: SlideRuleModel,
    f_scale: str,
    g_scale: str,
    h_scale: str,
    x: float,
    y: float,
) -> Readout:
    """z = h^-1(f(x) + g(y)), computed analytically."""
    for name, lath in ((f_scale, STATOR), (h_scale, STATOR), (g_scale, SLIDE)):
        if model.lath_of(name) != lath:
            raise SlideRuleError(f"scale {name!r} must be on the {lath}")
    sf, sg, sh = model.scale(f_scale), model.scale(g_scale), model.scale(h_scale)
    dx = _mark_position(model, sf, x) / model.shared_unit_mm
    dy = _mark_position(model, sg, y) / model.shared_unit_mm
    d = dx + dy
    try:
        z = invert_value(sh.spec.f, sh.spec.domain, d, bounds=model.bracket(h_scale))
    except OutOfRangeError as exc:
        raise _off_scale(h_scale, d, exc, model.shared_unit_mm) from None
    return Readout(h_scale, z, model.shared_unit_mm * d, True)


def compute_geometric(
    model: SlideRuleModel,
    f_scale: str,
    g_scale: str,
    h_scale: str,
    x: float,
    y: float,
) -> Readout:
    """Same computation through the physical motions: offset, hairline, read."""
    sf = model.scale(f_scale)
    sg = model.scale(g_scale)
    if model.lath_of(f_scale) != STATOR or model.lath_of(g_scale) != SLIDE:
        raise SlideRuleError("compute needs f on the stator and g on the slide")
    # put the slide's origin over the stator mark x, hairline over g's mark y
    model.offset_mm = _mark_position(model, sf, x)
    model.hairline_mm = model.offset_mm + _mark_position(model, sg, y)
    out = read(model, h_scale, model.hairline_mm)
    if not out.on_scale:
        d = out.position_mm / model.shared_unit_mm
        sh = model.scale(h_scale)
        a, b = model.bracket(h_scale)
        fa, fb = sh.spec.f.value(a), sh.spec.f.value(b)
        lo, hi = (fa, fb) if fa <= fb else (fb, fa)
        raise _off_scale(
            h_scale, d, OutOfRangeError("off scale", d, lo, hi), model.shared_unit_mm
        )
    return out
