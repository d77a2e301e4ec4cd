"""Numerical characterization of distance functions.

Everything here works on any "distance function" object exposing
``eval(x) -> EvalResult`` and ``value(x) -> float`` (Expression does, and so
do the numeric wrappers in the scale module).  All checks are sampled,
not proven: monotonicity, limits and the structural properties are decided
from probe grids, which covers every function the tick builder can render.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, NonMonotoneError, OutOfRangeError
from .interval import Interval

__all__ = [
    "TOL_ROOT",
    "TOL_INV",
    "TOL_PROP",
    "INCREASING",
    "DECREASING",
    "NON_MONOTONE",
    "ROOT",
    "LIMIT_ENDPOINT",
    "STANDALONE",
    "MonotonicityReport",
    "OriginReport",
    "AsymptoteReport",
    "PropertyReport",
    "DensityPoint",
    "classify_monotonicity",
    "locate_origin",
    "invert_value",
    "detect_asymptotes",
    "check_point_symmetry",
    "check_homogeneity",
    "check_log_shift",
    "check_exp_shift",
    "check_self_inverse",
    "density_profile",
    "suggest_point_symmetry",
    "effective_bounds",
    "brent_root",
]

# Root: |f(x0)| measured against TOL_ROOT * (1 + |x0|).
# Inversion: |f(x) - d| measured against TOL_INV * max(1, |d|).
# Properties: absolute residual ceiling.
TOL_ROOT = 1e-10
TOL_INV = 1e-12
TOL_PROP = 1e-8

# Probe ladder for infinite endpoints: x = anchor +- 10^j, j = 0..30;
# a limit is declared once successive probes move less than _LADDER_EPS.
_LADDER_MAX_J = 30
_LADDER_EPS = 1e-12

INCREASING = "increasing"
DECREASING = "decreasing"
NON_MONOTONE = "non_monotone"

ROOT = "root"
LIMIT_ENDPOINT = "limit"
STANDALONE = "standalone"

SIDE_LEFT = "left"
SIDE_RIGHT = "right"
SIDE_INTERIOR = "interior"


@dataclass(frozen=True)
class MonotonicityReport:
    kind: str
    witness: Optional[tuple] = None  # (x1, x2) with f'(x1) * f'(x2) < 0

    @property
    def monotone(self) -> bool:
        return self.kind != NON_MONOTONE


@dataclass(frozen=True)
class OriginReport:
    kind: str
    x0: Optional[float]  # +-inf allowed; None for standalone origins
    side: str


@dataclass(frozen=True)
class AsymptoteReport:
    slant: Optional[tuple] = None  # (c, b): f(x) ~ c*x + b
    horizontal: Optional[tuple] = None  # (d, "+inf" | "-inf")
    vertical: Optional[float] = None  # finite pole position


@dataclass(frozen=True)
class PropertyReport:
    property: str
    holds: bool
    max_residual: float
    samples_used: int
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class DensityPoint:
    x: float
    slope_abs: float
    curvature: int  # sign of f'' from first-derivative differences


# ---------------------------------------------------------------------------
# Brackets, frontiers and probe ladders


def brent_root(fn, a, b, fa=None, fb=None, tol=1e-14, maxiter=128) -> float:
    """Root of fn in [a, b] by Brent's method; fn(a), fn(b) must not share sign."""
    fa = fn(a) if fa is None else fa
    fb = fn(b) if fb is None else fb
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError("root not bracketed")
    c, fc = a, fa
    e = d = b - a
    eps = 2.220446049250313e-16
    for _ in range(maxiter):
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        t = 2.0 * eps * abs(b) + tol
        m = 0.5 * (c - b)
        if abs(m) <= t or fb == 0.0:
            return b
        if abs(e) < t or abs(fa) <= abs(fb):
            e = d = m
        else:
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            else:
                p = -p
            s, e = e, d
            if 2.0 * p < 3.0 * m * q - abs(t * q) and p < abs(0.5 * s * q):
                d = p / q
            else:
                e = d = m
        a, fa = b, fb
        b += d if abs(d) > t else math.copysign(t, m)
        fb = fn(b)
        if fb == 0.0:
            return b
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            e = d = b - a
    return b


def _find_good_seed(f, bad: float, good_side: float) -> Optional[float]:
    # walk from the far end toward the bad endpoint looking for an evaluable point
    for k in range(1, 60):
        x = bad + (good_side - bad) * 0.5 ** (60 - k)
        if math.isfinite(f.value(x)):
            return x
    return None


def _evaluable_frontier(f, endpoint: float, inside: float) -> Optional[float]:
    """Point closest to `endpoint` (from the `inside` direction) where f evaluates."""
    if math.isfinite(f.value(endpoint)):
        return endpoint
    good = _find_good_seed(f, endpoint, inside)
    if good is None:
        return None
    bad = endpoint
    for _ in range(200):
        mid = 0.5 * (bad + good)
        if mid == bad or mid == good:
            break
        if math.isfinite(f.value(mid)):
            good = mid
        else:
            bad = mid
    return good


def _truncate_infinite(f, anchor: float, sign: float):
    """Walk x = anchor + sign*10^j until |f| stops changing; (bound, converged)."""
    last_ok = None
    prev_val = None
    prev_x = None
    for j in range(_LADDER_MAX_J + 1):
        x = anchor + sign * 10.0**j
        v = f.value(x)
        if not math.isfinite(v):
            break
        if prev_val is not None and abs(v - prev_val) < _LADDER_EPS:
            return prev_x, True
        prev_val, prev_x = v, x
        last_ok = x
    if last_ok is None:
        return None, False
    return last_ok, False


def effective_bounds(f, dom: Interval):
    """Finite evaluable [a, b] carrying the visible structure of f on dom.

    Returns (a, b, converged) where converged is False when an infinite
    endpoint never settled (the image keeps growing along the ladder).
    """
    converged = True
    if math.isinf(dom.lo):
        anchor = dom.hi if math.isfinite(dom.hi) else 0.0
        lo, ok = _truncate_infinite(f, anchor, -1.0)
        if lo is None:
            raise DomainError(f"function not evaluable toward -inf on {dom}")
        converged = converged and ok
    else:
        lo = dom.lo
    if math.isinf(dom.hi):
        anchor = dom.lo if math.isfinite(dom.lo) else 0.0
        hi, ok = _truncate_infinite(f, anchor, 1.0)
        if hi is None:
            raise DomainError(f"function not evaluable toward +inf on {dom}")
        converged = converged and ok
    else:
        hi = dom.hi
    if not lo < hi:
        raise DomainError(f"no usable probe range inside {dom}")
    flo = _evaluable_frontier(f, lo, 0.5 * (lo + hi))
    if flo is None:
        raise DomainError(f"function not evaluable anywhere in {dom}")
    fhi = _evaluable_frontier(f, hi, 0.5 * (flo + hi))
    if fhi is None or not flo < fhi:
        raise DomainError(f"function not evaluable anywhere in {dom}")
    if dom.bounded:
        frac = (fhi - flo) / (dom.hi - dom.lo)
        if frac < 0.75:
            raise DomainError(
                f"function undefined over {100 * (1 - frac):.0f}% of {dom}"
            )
    return flo, fhi, converged


def _chebyshev_nodes(a: float, b: float, n: int):
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return [mid + half * math.cos(math.pi * (2 * k + 1) / (2 * n)) for k in range(n)]


# ---------------------------------------------------------------------------
# Monotonicity and origin


def classify_monotonicity(f, dom: Interval, n_samples: int = 257) -> MonotonicityReport:
    """Sample the sign of f' on a Chebyshev grid over dom."""
    if n_samples < 32:
        raise ValueError("n_samples must be at least 32")
    a, b, _ = effective_bounds(f, dom)
    nodes = sorted(_chebyshev_nodes(a, b, n_samples))
    signs = []  # (x, sign) for nodes with a usable derivative
    errors = 0
    for x in nodes:
        r = f.eval(x)
        if r.error is not None and not (r.has_value and not math.isnan(r.derivative)):
            errors += 1
            continue
        d = r.derivative
        if math.isnan(d):
            errors += 1
            continue
        if d != 0.0:
            signs.append((x, 1.0 if d > 0.0 else -1.0))
    if errors > max(2, n_samples // 20):
        raise DomainError(f"function undefined at {errors} of {n_samples} probe points in {dom}")
    if not signs:
        return MonotonicityReport(NON_MONOTONE, None)  # constant within sampling
    has_pos = any(s > 0 for _, s in signs)
    has_neg = any(s < 0 for _, s in signs)
    if has_pos and has_neg:
        witness = _bisect_witness(f, signs)
        return MonotonicityReport(NON_MONOTONE, witness)
    return MonotonicityReport(INCREASING if has_pos else DECREASING)


def _bisect_witness(f, signs):
    # narrow an adjacent opposite-sign pair, keeping the sign change bracketed
    x1 = s1 = x2 = s2 = None
    for (xa, sa), (xb, sb) in zip(signs, signs[1:]):
        if sa * sb < 0:
            x1, s1, x2, s2 = xa, sa, xb, sb
            break
    if x1 is None:
        return None
    for _ in range(40):
        mid = 0.5 * (x1 + x2)
        if mid == x1 or mid == x2:
            break
        r = f.eval(mid)
        if not r.ok or r.derivative == 0.0:
            break
        if (r.derivative > 0) == (s1 > 0):
            x1 = mid
        else:
            x2 = mid
    return (x1, x2)


def _limit_to_zero(f, endpoint: float, inside: float) -> bool:
    """Does |f| decrease monotonically toward 0 approaching `endpoint`?"""
    if math.isinf(endpoint):
        sign = 1.0 if endpoint > 0 else -1.0
        anchor = inside if math.isfinite(inside) else 0.0
        probes = [anchor + sign * 10.0**j for j in range(_LADDER_MAX_J + 1)]
    else:
        w = math.copysign(min(abs(inside - endpoint), 1.0), inside - endpoint)
        probes = [endpoint + w * 0.5**j for j in range(52)]
    vals = []
    for x in probes:
        v = f.value(x)
        if math.isfinite(v):
            vals.append(abs(v))
    if len(vals) < 6:
        return False
    tail = vals[-6:]
    decreasing = all(t2 <= t1 * (1 + 1e-9) for t1, t2 in zip(tail, tail[1:]))
    scale = 1.0 + max(vals[0], 1.0)
    return decreasing and tail[-1] < 1e-8 * scale


def locate_origin(f, dom: Interval, n_samples: int = 257) -> OriginReport:
    """Classify S1/x0: a root of f, a limit endpoint with f -> 0, or standalone."""
    mono = classify_monotonicity(f, dom, n_samples)
    if not mono.monotone:
        raise NonMonotoneError(
            f"function is not strictly monotone on {dom}", witness=mono.witness
        )
    a, b, _ = effective_bounds(f, dom)
    fa, fb = f.value(a), f.value(b)
    has_pos = fa > 0 or fb > 0
    has_neg = fa < 0 or fb < 0
    if has_pos and has_neg:
        side = SIDE_INTERIOR
    elif has_neg:
        side = SIDE_RIGHT
    else:
        side = SIDE_LEFT
    if fa == 0.0:
        return OriginReport(ROOT, a, side)
    if fb == 0.0:
        return OriginReport(ROOT, b, side)
    if fa * fb < 0.0:
        x0 = brent_root(f.value, a, b, fa, fb, tol=1e-15 * (1.0 + max(abs(a), abs(b))))
        return OriginReport(ROOT, x0, side)
    # no sign change: try the endpoint where |f| is smaller
    ends = [(dom.lo, a, b), (dom.hi, b, a)]
    if abs(fb) < abs(fa):
        ends.reverse()
    for endpoint, near, far in ends:
        if _limit_to_zero(f, endpoint, far):
            return OriginReport(LIMIT_ENDPOINT, endpoint, side)
    return OriginReport(STANDALONE, None, side)


# ---------------------------------------------------------------------------
# Inversion


def invert_value(f, dom: Interval, d: float, bounds=None) -> float:
    """Solve f(x) = d on dom by bracketed Brent iteration."""
    if bounds is None:
        a, b, _ = effective_bounds(f, dom)
    else:
        a, b = bounds
    fa, fb = f.value(a), f.value(b)
    if not (math.isfinite(fa) and math.isfinite(fb)):
        raise DomainError(f"function not evaluable at the ends of {dom}")
    lo_im, hi_im = (fa, fb) if fa <= fb else (fb, fa)
    margin = 1e-11 * (1.0 + hi_im - lo_im)
    if d < lo_im - margin or d > hi_im + margin:
        raise OutOfRangeError(
            f"target distance {d:g} outside the image [{lo_im:g}, {hi_im:g}]",
            d,
            lo_im,
            hi_im,
        )
    d = min(max(d, lo_im), hi_im)
    if d == fa:
        return a
    if d == fb:
        return b
    x = brent_root(
        lambda t: f.value(t) - d,
        a,
        b,
        fa - d,
        fb - d,
        tol=1e-15 * (1.0 + max(abs(a), abs(b))),
    )
    return x


# ---------------------------------------------------------------------------
# Asymptotes


def _median(values):
    s = sorted(values)
    n = len(s)
    if n == 0:
        return math.nan
    mid = n // 2
    return s[mid] if n % 2 else 0.5 * (s[mid - 1] + s[mid])


def _probe_direction(f, sign: float):
    rungs = []
    for j in range(1, _LADDER_MAX_J + 1):
        x = sign * 10.0**j
        v = f.value(x)
        if math.isfinite(v):
            rungs.append((x, v))
    return rungs


def _slant_or_horizontal(f, sign: float):
    rungs = _probe_direction(f, sign)
    if len(rungs) < 8:
        return None, None
    ratios = [v / x for x, v in rungs]
    c = _median(ratios)
    # the slope only exists if f(X)/X actually settles along the ladder
    ratio_tol = 1e-6 * (1.0 + abs(c))
    if any(abs(r2 - r1) > ratio_tol for r1, r2 in zip(ratios[-4:], ratios[-3:])):
        c_settled = False
    else:
        c_settled = True
    if abs(c) > 1e-6 and c_settled:
        # b is best-conditioned on mid-ladder rungs: shallow ones still carry
        # the decaying tail, deep ones amplify the rounding of c by |X|
        window = [v - c * x for x, v in rungs if 1e3 <= abs(x) <= 1e10]
        if len(window) < 4:
            window = [v - c * x for x, v in rungs[:8]]
        b = _median(window)
        window_diffs = [abs(b2 - b1) for b1, b2 in zip(window, window[1:])]
        if window_diffs and window_diffs[-1] > 1e-3 * (1.0 + abs(b)):
            return None, None  # intercept never converges (e.g. x + ln x)
        res = [abs(v - (c * x + b)) / max(1.0, abs(x)) for x, v in rungs]
        head = max(res[:3])
        tail = max(res[-3:])
        if tail <= head * (1.0 + 1e-9) + 1e-12 and tail <= 1e-6 * (1.0 + abs(c)):
            return (c, b), None
        return None, None
    diffs = [abs(v2 - v1) for (_, v1), (_, v2) in zip(rungs, rungs[1:])]
    settled = any(dd < _LADDER_EPS for dd in diffs)
    tail_monotone = all(d2 <= d1 * (1 + 1e-6) or d2 < _LADDER_EPS for d1, d2 in zip(diffs[-6:], diffs[-5:]))
    if settled and tail_monotone:
        d_limit = rungs[-1][1]
        return None, (d_limit, "+inf" if sign > 0 else "-inf")
    return None, None


def _vertical_pole(f, endpoint: float, inside: float) -> bool:
    """Power-law blow-up approaching `endpoint` from the `inside` direction.

    Big-but-finite endpoint values (e.g. an exponential) converge along the
    probes; a pole keeps growing geometrically.  Logarithmic divergence is
    deliberately not flagged: such scales stay buildable.
    """
    w = min(1.0, abs(inside - endpoint) / 4.0)
    if w == 0.0:
        return False
    sign = 1.0 if inside > endpoint else -1.0
    vals = []
    for j in range(3, 15):
        x = endpoint + sign * w * 10.0 ** (-j)
        v = f.value(x)
        if math.isfinite(v):
            vals.append(abs(v))
    if len(vals) < 6:
        return False
    growing = sum(1 for a, b in zip(vals, vals[1:]) if b > a)
    still_exploding = vals[-1] > 4.0 * vals[-4]
    return vals[-1] > 1e8 and growing >= 5 and still_exploding


def detect_asymptotes(f, dom: Interval) -> AsymptoteReport:
    """Probe for slant/horizontal behavior at infinity and poles at the ends.

    Probing is function-level: the ladder runs beyond the scale's domain
    wherever the function itself evaluates.
    """
    directions = []
    if math.isinf(dom.hi):
        directions = [1.0, -1.0]
    elif math.isinf(dom.lo):
        directions = [-1.0, 1.0]
    else:
        directions = [1.0, -1.0]
    slant = horizontal = None
    for sign in directions:
        slant, horizontal = _slant_or_horizontal(f, sign)
        if slant or horizontal:
            break
    vertical = None
    mid = None
    try:
        a, b, _ = effective_bounds(f, dom)
        mid = 0.5 * (a + b)
    except DomainError:
        pass
    if mid is not None:
        for endpoint in (dom.hi, dom.lo):
            if math.isfinite(endpoint) and _vertical_pole(f, endpoint, mid):
                vertical = endpoint
                break
    return AsymptoteReport(slant=slant, horizontal=horizontal, vertical=vertical)


# ---------------------------------------------------------------------------
# Structural property checks (symmetry, shift laws, homogeneity,
# self-inversion).  All residuals are absolute, capped by TOL_PROP.


def check_point_symmetry(f, q: float, r: float, n_samples: int = 64) -> PropertyReport:
    """Residuals of (f(q-z) + f(q+z))/2 = r over a spread of offsets z."""
    big = 10.0 * max(1.0, abs(q))
    zs = []
    half = max(4, n_samples // 2)
    for k in range(half):
        zs.append(big * 10.0 ** (-4.0 * (1.0 - k / max(1, half - 1))))
    for k in range(1, n_samples - half + 1):
        zs.append(big * k / (n_samples - half + 1))
    worst = 0.0
    used = 0
    for z in zs:
        v1 = f.value(q - z)
        v2 = f.value(q + z)
        if not (math.isfinite(v1) and math.isfinite(v2)):
            continue
        used += 1
        worst = max(worst, abs(0.5 * (v1 + v2) - r))
    holds = used >= 4 and worst <= TOL_PROP
    return PropertyReport("point_symmetry", holds, worst, used, {"q": q, "r": r})


def check_homogeneity(f, dom: Interval) -> PropertyReport:
    """Estimate k from f(lambda*x) = lambda^k f(x) and test agreement."""
    if dom.lo < 0:
        raise ValueError("homogeneity check needs a domain of positive reals")
    a = max(dom.lo, 1e-3)
    b = min(dom.hi, 1e3)
    if not a < b:
        a, b = dom.lo, dom.hi
    xs = [a + (b - a) * k / 9.0 for k in range(1, 9)]
    estimates = []
    for lam in (2.0, 3.0, 10.0):
        for x in xs:
            v1 = f.value(x)
            v2 = f.value(lam * x)
            if not (math.isfinite(v1) and math.isfinite(v2)) or v1 == 0.0:
                continue
            ratio = v2 / v1
            if ratio <= 0.0:
                return PropertyReport("homogeneous", False, math.inf, len(estimates))
            estimates.append(math.log(ratio) / math.log(lam))
    if len(estimates) < 4:
        return PropertyReport("homogeneous", False, math.inf, len(estimates))
    k = _median(estimates)
    worst = max(abs(e - k) for e in estimates)
    holds = worst <= TOL_PROP
    return PropertyReport("homogeneous", holds, worst, len(estimates), {"k": k})


def check_log_shift(f, a: float) -> PropertyReport:
    """Residuals of f(a^h * x) = h + f(x) for h in {1, 2, 3}."""
    if not (a > 0.0 and a != 1.0):
        raise ValueError("base must be positive and different from 1")
    xs = [0.1, 0.3, 0.7, 1.0, 1.9, 3.7, 8.5]
    worst = 0.0
    used = 0
    for h in (1.0, 2.0, 3.0):
        factor = a**h
        for x in xs:
            v1 = f.value(x)
            v2 = f.value(factor * x)
            if not (math.isfinite(v1) and math.isfinite(v2)):
                continue
            used += 1
            worst = max(worst, abs(v2 - h - v1))
    holds = used >= 6 and worst <= TOL_PROP
    return PropertyReport("log_shift", holds, worst, used, {"a": a})


def check_exp_shift(f) -> PropertyReport:
    """Test the additive shift law f(lambda + x) = h_lambda * f(x).

    The factor h_lambda may depend on the shift lambda but not on x; the
    report carries the measured h at lambda = 1.
    """
    xs = [-3.0, -2.1, -1.3, -0.4, 0.6, 1.2, 2.3, 3.1]
    worst = 0.0
    used = 0
    h1 = math.nan
    for lam in (0.5, 1.0, 2.0):
        ratios = []
        for x in xs:
            v1 = f.value(x)
            v2 = f.value(lam + x)
            if not (math.isfinite(v1) and math.isfinite(v2)) or abs(v1) < 1e-12:
                continue
            ratios.append(v2 / v1)
        if len(ratios) < 4:
            return PropertyReport("exp_shift", False, math.inf, used, {"h1": h1})
        h = _median(ratios)
        if lam == 1.0:
            h1 = h
        used += len(ratios)
        worst = max(worst, max(abs(rr - h) for rr in ratios))
    holds = worst <= TOL_PROP
    return PropertyReport("exp_shift", holds, worst, used, {"h1": h1})


def check_self_inverse(f, dom: Interval) -> PropertyReport:
    """Residuals of f(f(x)) = x over moderate sample points of dom."""
    a, b, _ = effective_bounds(f, dom)
    a = max(a, -1e3)
    b = min(b, 1e3)
    if not a < b:
        a, b, _ = effective_bounds(f, dom)
    n = 17
    worst = 0.0
    used = 0
    for k in range(1, n + 1):
        x = a + (b - a) * k / (n + 1)
        v1 = f.value(x)
        if not math.isfinite(v1):
            continue
        v2 = f.value(v1)
        if not math.isfinite(v2):
            continue
        used += 1
        worst = max(worst, abs(v2 - x))
    if used == 0:
        raise DomainError(f"f(x) leaves the domain for every sample in {dom}")
    holds = worst <= TOL_PROP
    return PropertyReport("self_inverse", holds, worst, used)


def density_profile(f, dom: Interval, n: int = 64):
    """Grid of, per point, |f'| and the local curvature sign (from f' diffs)."""
    if n < 2:
        raise ValueError("need at least two profile points")
    a, b, _ = effective_bounds(f, dom)
    pts = []
    for k in range(n):
        x = a + (b - a) * k / (n - 1)
        r = f.eval(x)
        if not r.has_value or math.isnan(r.derivative):
            continue
        pts.append((x, r.derivative))
    out = []
    for i, (x, d) in enumerate(pts):
        if i + 1 < len(pts):
            dd = pts[i + 1][1] - d
        elif i > 0:
            dd = d - pts[i - 1][1]
        else:
            dd = 0.0
        curv = 0 if dd == 0.0 else (1 if dd > 0.0 else -1)
        out.append(DensityPoint(x, abs(d), curv))
    return out


def suggest_point_symmetry(f, dom: Interval, n_candidates: int = 3):
    """Advisory scan for plausible symmetry centers Q(q, r); verify with
    check_point_symmetry before trusting any of them."""
    a, b, _ = effective_bounds(f, dom)
    results = []
    for k in range(1, 24):
        q = a + (b - a) * k / 24.0
        fq = f.value(q)
        if not math.isfinite(fq):
            continue
        z_max = min(q - a, b - q)
        if z_max <= 0:
            continue
        worst = 0.0
        ok = 0
        for j in range(1, 6):
            z = z_max * j / 6.0
            v1, v2 = f.value(q - z), f.value(q + z)
            if not (math.isfinite(v1) and math.isfinite(v2)):
                continue
            ok += 1
            worst = max(worst, abs(0.5 * (v1 + v2) - fq))
        if ok >= 3:
            results.append((worst, q, fq))
    results.sort()
    return [(q, r) for _, q, r in results[:n_candidates]]
