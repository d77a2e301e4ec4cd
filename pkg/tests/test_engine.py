import math
import random

import pytest

from sliderule import engine
from sliderule.catalog import catalog_scale
from sliderule.errors import OffScaleError, OutOfRangeError, SlideRuleError
from sliderule.expr import parse
from sliderule.interval import Interval
from sliderule.scale import ScaleSpec, build_scale, negate_scale

U = 250.0


@pytest.fixture(scope="module")
def model():
    d = build_scale(catalog_scale("D", U))
    a = build_scale(catalog_scale("A", U))
    ls = build_scale(catalog_scale("L", U))
    c = build_scale(catalog_scale("C", U))
    lslide = build_scale(catalog_scale("L", U))
    lslide = type(lslide)(**{**lslide.__dict__, "spec": lslide.spec})  # distinct list entry
    from dataclasses import replace

    lslide = replace(lslide, spec=replace(lslide.spec, name="Ls"))
    return engine.new_model([d, a, ls], [c, lslide])


class TestModel:
    def test_unit_mismatch_rejected(self):
        d = build_scale(catalog_scale("D", U))
        c = build_scale(catalog_scale("C", 125.0))
        with pytest.raises(SlideRuleError, match="zoom all scales"):
            engine.new_model([d], [c])

    def test_duplicate_names_rejected(self):
        d = build_scale(catalog_scale("D", U))
        d2 = build_scale(catalog_scale("D", U))
        with pytest.raises(SlideRuleError, match="duplicate"):
            engine.new_model([d], [d2])

    def test_unknown_scale(self, model):
        with pytest.raises(SlideRuleError, match="no scale named"):
            model.scale("Z")


class TestAlign:
    def test_c1_over_d3(self, model):
        engine.align(model, "C", 1.0, "D", 3.0)
        assert model.offset_mm == pytest.approx(U * math.log10(3.0), rel=1e-12)

    def test_identity_alignment(self, model):
        engine.align(model, "C", 1.0, "D", 1.0)
        assert model.offset_mm == 0.0

    def test_wraparound_alignment(self, model):
        engine.align(model, "C", 10.0, "D", 3.0)
        assert model.offset_mm == pytest.approx(U * (math.log10(3.0) - 1.0), rel=1e-12)

    def test_align_then_read_fixed_point(self, model):
        engine.align(model, "C", 2.0, "D", 3.0)
        at = model.offset_mm + U * math.log10(2.0)
        assert engine.read(model, "D", at).value == pytest.approx(3.0, rel=1e-9)
        assert engine.read(model, "C", at).value == pytest.approx(2.0, rel=1e-9)

    def test_outside_domain(self, model):
        with pytest.raises(OutOfRangeError):
            engine.align(model, "C", 11.0, "D", 3.0)

    def test_laths_enforced(self, model):
        with pytest.raises(SlideRuleError, match="not on the slide"):
            engine.align(model, "D", 1.0, "C", 3.0)


class TestRead:
    def test_d_at_lg6(self, model):
        model.offset_mm = 0.0
        out = engine.read(model, "D", U * math.log10(6.0))
        assert out.on_scale and out.value == pytest.approx(6.0, rel=1e-12)

    def test_origin_reads_x0(self, model):
        model.offset_mm = 0.0
        out = engine.read(model, "D", 0.0)
        assert out.value == pytest.approx(1.0, abs=1e-12)

    def test_off_scale_encoded(self, model):
        model.offset_mm = 0.0
        out = engine.read(model, "D", 1.5 * U)
        assert not out.on_scale and math.isnan(out.value)

    def test_readout_position_is_scale_local(self, model):
        engine.align(model, "C", 1.0, "D", 3.0)
        at = model.offset_mm + U * math.log10(2.0)
        out = engine.read(model, "C", at)
        assert out.position_mm == pytest.approx(U * math.log10(2.0), rel=1e-12)


class TestCompute:
    def test_multiplication(self, model):
        out = engine.compute(model, "D", "C", "D", 3.0, 2.0)
        assert out.value == pytest.approx(6.0, rel=1e-12)

    def test_linear_addition(self, model):
        out = engine.compute(model, "L", "Ls", "L", 0.2, 0.3)
        assert out.value == pytest.approx(0.5, rel=1e-12)

    def test_squared_product(self, model):
        out = engine.compute(model, "D", "C", "A", 2.0, 3.0)
        assert out.value == pytest.approx(36.0, rel=1e-9)

    def test_off_scale_with_fold_hint(self, model):
        with pytest.raises(OffScaleError) as exc:
            engine.compute(model, "D", "C", "D", 5.0, 5.0)
        assert exc.value.fold_units == pytest.approx(1.0)
        assert "re-align" in str(exc.value)

    def test_lath_convention_enforced(self, model):
        with pytest.raises(SlideRuleError, match="must be on the"):
            engine.compute(model, "C", "D", "D", 2.0, 3.0)

    def test_geometric_path_matches_analytic(self, model):
        rng = random.Random(5)
        for _ in range(50):
            x = rng.uniform(1.0, 9.0)
            y = rng.uniform(1.0, 10.0 / x)
            a = engine.compute(model, "D", "C", "D", x, y)
            g = engine.compute_geometric(model, "D", "C", "D", x, y)
            assert g.value == pytest.approx(a.value, rel=1e-12)

    def test_subtraction_via_negated_scale(self):
        d = build_scale(catalog_scale("D", U))
        c = build_scale(catalog_scale("C", U))
        from dataclasses import replace

        ci = negate_scale(c)
        ci = replace(ci, spec=replace(ci.spec, name="CIn"))
        m = engine.new_model([d], [ci])
        out = engine.compute(m, "D", "CIn", "D", 6.0, 2.0)
        assert out.value == pytest.approx(3.0, rel=1e-9)

    def test_unit_invariance(self):
        rng = random.Random(11)
        models = []
        for u in (125.0, 250.0, 1000.0):
            d = build_scale(catalog_scale("D", u))
            c = build_scale(catalog_scale("C", u))
            models.append(engine.new_model([d], [c]))
        for _ in range(25):
            x = rng.uniform(1.0, 9.0)
            y = rng.uniform(1.0, 10.0 / x)
            zs = [engine.compute(m, "D", "C", "D", x, y).value for m in models]
            assert zs[0] == pytest.approx(zs[1], rel=1e-12)
            assert zs[0] == pytest.approx(zs[2], rel=1e-12)
