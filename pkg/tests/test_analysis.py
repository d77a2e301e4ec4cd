import math
import random

import pytest

from sliderule import analysis
from sliderule.analysis import (
    DECREASING,
    INCREASING,
    LIMIT_ENDPOINT,
    NON_MONOTONE,
    ROOT,
    STANDALONE,
    check_exp_shift,
    check_homogeneity,
    check_log_shift,
    check_point_symmetry,
    check_self_inverse,
    classify_monotonicity,
    density_profile,
    detect_asymptotes,
    invert_value,
    locate_origin,
    suggest_point_symmetry,
)
from sliderule.errors import DomainError, NonMonotoneError, OutOfRangeError
from sliderule.expr import parse
from sliderule.interval import Interval


class TestMonotonicity:
    def test_lg_increasing(self):
        assert classify_monotonicity(parse("lg(x)"), Interval(1, 10)).kind == INCREASING

    def test_reciprocal_decreasing(self):
        assert classify_monotonicity(parse("1/x"), Interval(0.5, 5)).kind == DECREASING

    def test_xlnx_witness_straddles_inv_e(self):
        rep = classify_monotonicity(parse("x*ln(x)"), Interval(0.1, 2))
        assert rep.kind == NON_MONOTONE
        x1, x2 = rep.witness
        assert x1 < 1 / math.e < x2

    def test_witness_has_opposite_slopes(self):
        f = parse("x*ln(x)")
        rep = classify_monotonicity(f, Interval(0.1, 2))
        x1, x2 = rep.witness
        assert f.eval(x1).derivative * f.eval(x2).derivative < 0

    def test_cubic_with_flat_point_still_increasing(self):
        assert classify_monotonicity(parse("x^3"), Interval(-1, 1)).kind == INCREASING

    def test_undefined_domain_raises(self):
        with pytest.raises(DomainError):
            classify_monotonicity(parse("lg(x)"), Interval(-5, 5))

    def test_minimum_samples_enforced(self):
        with pytest.raises(ValueError):
            classify_monotonicity(parse("x"), Interval(0, 1), n_samples=8)


class TestOrigin:
    def test_lg_interior_root(self):
        rep = locate_origin(parse("lg(x)"), Interval(0.1, 10))
        assert rep.kind == ROOT and rep.x0 == pytest.approx(1.0, abs=1e-10)
        assert rep.side == "interior"

    def test_lg_left_root_at_domain_edge(self):
        rep = locate_origin(parse("lg(x)"), Interval(1, 10))
        assert rep.kind == ROOT and rep.x0 == 1.0 and rep.side == "left"

    def test_fig4_root(self):
        rep = locate_origin(parse("(x-2)^3/100+1"), Interval(-5, 9))
        assert rep.kind == ROOT
        assert rep.x0 == pytest.approx(2 - 100 ** (1 / 3), abs=1e-9)

    def test_exp10_limit_minus_inf(self):
        rep = locate_origin(parse("exp(x*ln(10))"), Interval(-math.inf, 10))
        assert rep.kind == LIMIT_ENDPOINT and rep.x0 == -math.inf and rep.side == "left"

    def test_standalone(self):
        rep = locate_origin(parse("x+1/x"), Interval(0, math.inf, lo_open=True))
        assert rep.kind == STANDALONE and rep.x0 is None

    def test_f923_root(self):
        rep = locate_origin(
            parse("1-x^2/2+x^4/24"), Interval(0, math.sqrt(6), lo_open=True, hi_open=True)
        )
        assert rep.x0 == pytest.approx(math.sqrt(6 - 2 * math.sqrt(3)), abs=1e-9)

    def test_f953_root(self):
        rep = locate_origin(parse("x+sqrt(1-x^2)"), Interval(-1, math.sqrt(2) / 2))
        assert rep.x0 == pytest.approx(-math.sqrt(2) / 2, abs=1e-9)

    def test_reciprocal_limit_at_plus_inf(self):
        rep = locate_origin(parse("1/x"), Interval(0, math.inf, lo_open=True))
        assert rep.kind == LIMIT_ENDPOINT and rep.x0 == math.inf

    def test_xlgx_limit_at_zero(self):
        rep = locate_origin(parse("x*lg(x)"), Interval(0, 1 / math.e, True, True))
        assert rep.kind == LIMIT_ENDPOINT and rep.x0 == 0.0

    def test_non_monotone_propagates(self):
        with pytest.raises(NonMonotoneError):
            locate_origin(parse("x*ln(x)"), Interval(0.1, 2))

    def test_stability_under_doubled_sampling(self, corpus):
        for f, dom, src in corpus:
            a = locate_origin(f, dom, 257)
            b = locate_origin(f, dom, 514)
            assert (a.kind, a.side) == (b.kind, b.side), src
            if a.x0 is not None and math.isfinite(a.x0):
                assert a.x0 == pytest.approx(b.x0, rel=1e-9, abs=1e-12)


class TestInvert:
    def test_lg_oracle(self):
        # oracle: inverting d recovers 10^d
        d = math.log10(6.0)
        x = invert_value(parse("lg(x)"), Interval(1, 10), d)
        assert x == pytest.approx(10.0**d, rel=1e-12)

    def test_identity(self):
        assert invert_value(parse("x"), Interval(0, 1), 0.5) == pytest.approx(0.5)

    def test_fig3_zero(self):
        x = invert_value(parse("cbrt(1-x^3)"), Interval(-2, 2), 0.0)
        assert x == pytest.approx(1.0, abs=1e-9)

    def test_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            invert_value(parse("lg(x)"), Interval(1, 10), 1.5)

    def test_roundtrip_random(self, corpus):
        rng = random.Random(99)
        for f, dom, src in corpus:
            lo = dom.lo + 1e-9 * (1 + abs(dom.lo))
            hi = dom.hi - 1e-9 * (1 + abs(dom.hi))
            for _ in range(100):
                x = rng.uniform(lo, hi)
                d = f.value(x)
                got = invert_value(f, dom, d)
                assert abs(got - x) <= 1e-9 * max(1.0, abs(x)), (src, x)

    def test_monotone_in_target(self):
        f = parse("1/x")
        dom = Interval(0.5, 5)
        ds = [0.3, 0.5, 0.9, 1.4, 1.9]
        xs = [invert_value(f, dom, d) for d in ds]
        assert xs == sorted(xs, reverse=True)


class TestAsymptotes:
    def test_f942_slant(self):
        rep = detect_asymptotes(parse("x^3/(x^2-x-2)"), Interval(1 + math.sqrt(7), math.inf, True, True))
        c, b = rep.slant
        assert c == pytest.approx(1.0, abs=1e-6)
        assert b == pytest.approx(1.0, abs=1e-2)

    def test_fig3_slant(self):
        rep = detect_asymptotes(parse("cbrt(1-x^3)"), Interval(-2, 2))
        c, b = rep.slant
        assert c == pytest.approx(-1.0, abs=1e-3)
        assert b == pytest.approx(0.0, abs=1e-3)

    def test_atan_horizontal(self):
        rep = detect_asymptotes(parse("atan(x)"), Interval(-math.inf, math.inf))
        d, at = rep.horizontal
        assert d == pytest.approx(math.pi / 2, abs=1e-9) and at == "+inf"

    def test_tan_vertical(self):
        rep = detect_asymptotes(
            parse("tan(x)"), Interval(-math.pi / 2, math.pi / 2, True, True)
        )
        assert rep.vertical == pytest.approx(math.pi / 2)

    def test_reciprocal_horizontal_zero(self):
        rep = detect_asymptotes(parse("1/x"), Interval(0.5, 5))
        d, _ = rep.horizontal
        assert d == pytest.approx(0.0, abs=1e-12)

    def test_lg_has_none(self):
        rep = detect_asymptotes(parse("lg(x)"), Interval(1, 10))
        assert rep.slant is None and rep.horizontal is None and rep.vertical is None


class TestProperties:
    def test_phi_point_symmetric(self):
        assert check_point_symmetry(parse("Phi(x)"), 0.0, 0.5).holds

    def test_fig4_point_symmetric(self):
        assert check_point_symmetry(parse("(x-2)^3/100+1"), 2.0, 1.0).holds

    def test_odd_cube(self):
        assert check_point_symmetry(parse("x^3"), 0.0, 0.0).holds

    def test_lg_not_symmetric(self):
        assert not check_point_symmetry(parse("lg(x)"), 2.0, math.log10(2.0)).holds

    def test_symmetry_implies_scale_symmetry(self):
        # positions mirror about the mark q when the center property holds
        f = parse("(x-2)^3/100+1")
        rep = check_point_symmetry(f, 2.0, 1.0)
        assert rep.holds
        fq = f.value(2.0)
        for z in (0.3, 1.1, 2.7, 4.9):
            left = f.value(2.0) - f.value(2.0 + z)
            right = f.value(2.0 - z) - f.value(2.0)
            assert abs(left - right) <= 2 * analysis.TOL_PROP
        assert fq == pytest.approx(1.0)

    @pytest.mark.parametrize(
        "src,k",
        [("x^2", 2.0), ("1/x", -1.0), ("x^0.5", 0.5), ("x^3", 3.0), ("x", 1.0)],
    )
    def test_homogeneous(self, src, k):
        rep = check_homogeneity(parse(src), Interval(0.01, 100.0, lo_open=True))
        assert rep.holds and rep.params["k"] == pytest.approx(k, abs=1e-6)

    def test_lg_not_homogeneous(self):
        assert not check_homogeneity(parse("lg(x)"), Interval(0.01, 100.0, lo_open=True)).holds

    def test_homogeneity_zoom_identity(self):
        # f(mu^(1/k) x) = mu f(x) for detected order k
        for src in ("x^2", "1/x", "x^0.5"):
            f = parse(src)
            k = check_homogeneity(f, Interval(0.01, 100.0, lo_open=True)).params["k"]
            for mu in (2.0, 10.0):
                lam = mu ** (1.0 / k)
                for x in (0.3, 1.7, 42.0):
                    assert f.value(lam * x) == pytest.approx(mu * f.value(x), rel=1e-9), src

    def test_log_shift(self):
        assert check_log_shift(parse("lg(x)"), 10.0).holds
        assert check_log_shift(parse("ln(x)/ln(2)"), 2.0).holds
        assert not check_log_shift(parse("x^2"), 10.0).holds

    def test_exp_shift(self):
        rep = check_exp_shift(parse("exp(x*ln(10))"))
        assert rep.holds and rep.params["h1"] == pytest.approx(10.0, abs=1e-9)
        rep_e = check_exp_shift(parse("exp(x)"))
        assert rep_e.holds and rep_e.params["h1"] == pytest.approx(math.e, rel=1e-12)
        assert not check_exp_shift(parse("x^3")).holds

    def test_self_inverse(self):
        assert check_self_inverse(parse("1/x"), Interval(0, math.inf, lo_open=True)).holds
        assert check_self_inverse(parse("cbrt(1-x^3)"), Interval(-2, 2)).holds
        assert check_self_inverse(parse("x"), Interval(-3, 3)).holds
        assert not check_self_inverse(parse("lg(x)"), Interval(1, 10)).holds

    def test_suggest_point_symmetry_finds_fig4_center(self):
        cands = suggest_point_symmetry(parse("(x-2)^3/100+1"), Interval(-5, 9))
        assert any(abs(q - 2.0) < 0.4 for q, _ in cands)


class TestDensityProfile:
    def test_f921_decreasing_with_both_curvatures(self):
        f = parse("x^5-3*x^3")
        lim = 3 / math.sqrt(5)
        dom = Interval(-lim, lim, True, True)
        assert classify_monotonicity(f, dom).kind == DECREASING
        prof = density_profile(f, dom, 64)
        curvatures = {p.curvature for p in prof}
        assert 1 in curvatures and -1 in curvatures

    def test_fig4_density_peaks_at_two(self):
        prof = density_profile(parse("(x-2)^3/100+1"), Interval(-5, 9), 141)
        densest = min(prof, key=lambda p: p.slope_abs)
        assert densest.x == pytest.approx(2.0, abs=0.15)

    def test_linear_constant_density(self):
        prof = density_profile(parse("x"), Interval(0, 1), 16)
        assert all(p.slope_abs == 1.0 for p in prof)
        assert all(p.curvature == 0 for p in prof)

    def test_minimum_points(self):
        with pytest.raises(ValueError):
            density_profile(parse("x"), Interval(0, 1), 1)
