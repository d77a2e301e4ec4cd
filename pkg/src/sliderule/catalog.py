"""The traditional scale catalog: A, C, D, CI, K, L, ... with their true
distance functions.

A traditional scale is marked with a function t(x) of the base scale D:
the value printed where D shows x is t(x).  Its actual distance function is
tau(y) = lg(t^-1(y)), which is what gets built here.  Domains are the
customary single-cycle ranges (the distance spans about one unit), chosen so
every scale lines up with one decade of D; they are conventions, not
physics, and are listed per code below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnknownCodeError
from .expr import Expression, parse
from .interval import Interval
from .scale import LabelFormat, ScaleSpec

__all__ = ["CatalogEntry", "CATALOG", "catalog_scale", "catalog_codes"]


@dataclass(frozen=True)
class CatalogEntry:
    code: str
    marking: str  # the t(x) printed on the lath
    distance_source: str  # tau(y), the real distance function
    domain: Interval
    law_range: tuple  # x-range on which tau(t(x)) = lg(x) is exercised


def _e(lo, hi, lo_open=False, hi_open=False):
    return Interval(lo, hi, lo_open, hi_open)


_SQ2 = math.sqrt(2.0)

CATALOG = {
    e.code: e
    for e in [
        CatalogEntry("A", "x^2", "lg(x)/2", _e(1.0, 100.0), (1.1, 9.9)),
        CatalogEntry("C", "x", "lg(x)", _e(1.0, 10.0), (1.1, 9.9)),
        CatalogEntry("D", "x", "lg(x)", _e(1.0, 10.0), (1.1, 9.9)),
        CatalogEntry("CI", "1/x", "-lg(x)", _e(1.0, 10.0), (1.1, 9.9)),
        CatalogEntry("K", "x^3", "lg(x)/3", _e(1.0, 1000.0), (1.1, 9.9)),
        CatalogEntry("L", "lg(x)", "x", _e(0.0, 1.0), (1.1, 9.9)),
        CatalogEntry("Ln", "ln(x)", "x*lg(e)", _e(0.0, math.log(10.0)), (1.1, 9.9)),
        CatalogEntry("LL3", "exp(x)", "lg(ln(x))", _e(math.e, math.exp(10.0)), (1.1, 9.9)),
        CatalogEntry("LL10", "exp(x*ln(10))", "lg(lg(x))", _e(10.0, 1e10), (1.1, 9.9)),
        CatalogEntry(
            "LL03", "exp(-x)", "lg(-ln(x))", _e(math.exp(-10.0), math.exp(-1.0)), (1.1, 9.9)
        ),
        CatalogEntry("R1", "sqrt(x)", "2*lg(x)", _e(1.0, math.sqrt(10.0)), (1.1, 9.9)),
        CatalogEntry(
            "H1",
            "sqrt(1+(0.1*x)^2)",
            "lg(10*sqrt(x^2-1))",
            _e(math.sqrt(1.01), _SQ2),
            (0.5, 9.5),
        ),
        CatalogEntry(
            "H2", "sqrt(1+x^2)", "lg(sqrt(x^2-1))", _e(_SQ2, math.sqrt(101.0)), (0.5, 9.5)
        ),
        CatalogEntry(
            "P1",
            "sqrt(1-(0.1*x)^2)",
            "lg(10*sqrt(1-x^2))",
            _e(0.0, math.sqrt(0.99)),
            (0.5, 9.5),
        ),
        CatalogEntry(
            "P2", "sqrt(1-x^2)", "lg(sqrt(1-x^2))", _e(0.0, math.sqrt(0.99)), (0.05, 0.95)
        ),
        CatalogEntry("S0", "sin(x)", "lg(asin(x))", _e(math.sin(0.1), 1.0), (0.05, 1.5)),
        CatalogEntry("S", "asin(x)", "lg(sin(x))", _e(math.asin(0.1), math.pi / 2), (0.05, 0.995)),
        CatalogEntry("T0", "tan(x)", "lg(atan(x))", _e(math.tan(0.1), math.tan(1.0)), (0.05, 1.5)),
        CatalogEntry("T", "atan(x)", "lg(tan(x))", _e(math.atan(0.1), math.pi / 4), (0.05, 9.5)),
        CatalogEntry("Sh", "asinh(x)", "lg(sinh(x))", _e(math.asinh(0.1), math.asinh(10.0)), (0.1, 9.9)),
        CatalogEntry("Ch", "acosh(x)", "lg(cosh(x))", _e(0.0, math.acosh(10.0)), (1.05, 9.9)),
        CatalogEntry("Th", "atanh(x)", "lg(tanh(x))", _e(math.atanh(0.1), 3.0), (0.05, 0.95)),
        CatalogEntry("Sh0", "sinh(x)", "lg(asinh(x))", _e(math.sinh(0.1), math.sinh(10.0)), (0.1, 9.9)),
        CatalogEntry("Ch0", "cosh(x)", "lg(acosh(x))", _e(math.cosh(0.1), math.cosh(10.0)), (0.1, 9.9)),
        CatalogEntry("Th0", "tanh(x)", "lg(atanh(x))", _e(math.tanh(0.1), math.tanh(3.0)), (0.1, 2.9)),
    ]
}


def catalog_codes():
    return sorted(CATALOG)


def catalog_scale(code: str, unit_mm: float, label_format: LabelFormat = LabelFormat()) -> ScaleSpec:
    """The ScaleSpec for a traditional scale code, at the given unit."""
    entry = CATALOG.get(code)
    if entry is None:
        raise UnknownCodeError(code, catalog_codes())
    return ScaleSpec(
        name=code,
        f=parse(entry.distance_source),
        domain=entry.domain,
        unit_mm=unit_mm,
        label_format=label_format,
    )


def marking_expression(code: str) -> Expression:
    entry = CATALOG.get(code)
    if entry is None:
        raise UnknownCodeError(code, catalog_codes())
    return parse(entry.marking)
