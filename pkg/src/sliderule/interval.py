"""Domain intervals with open/closed flags and infinite endpoints."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Interval:
    """An interval [lo, hi] of the real line; endpoints may be +-inf.

    Open flags record whether the endpoint itself belongs to the domain;
    infinite endpoints are always open.
    """

    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval [{self.lo}, {self.hi}]")
        if math.isinf(self.lo) and not self.lo_open:
            object.__setattr__(self, "lo_open", True)
        if math.isinf(self.hi) and not self.hi_open:
            object.__setattr__(self, "hi_open", True)

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, tol: float = 0.0) -> bool:
        if self.lo_open:
            if not x > self.lo - tol:
                return False
        elif not x >= self.lo - tol:
            return False
        if self.hi_open:
            return x < self.hi + tol
        return x <= self.hi + tol

    def clamp(self, x: float) -> float:
        return min(max(x, self.lo), self.hi)

    def __str__(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{fmt_endpoint(self.lo)}, {fmt_endpoint(self.hi)}{right}"


def fmt_endpoint(x: float) -> str:
    if x == math.inf:
        return "+inf"
    if x == -math.inf:
        return "-inf"
    return format(x, "g")


def parse_endpoint(text: str) -> float:
    t = text.strip().lower()
    if t in ("+inf", "inf"):
        return math.inf
    if t == "-inf":
        return -math.inf
    return float(text)
