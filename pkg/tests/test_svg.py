import math
import re

import pytest

from sliderule import documents, engine
from sliderule.catalog import catalog_scale
from sliderule.expr import parse
from sliderule.interval import Interval
from sliderule.scale import ScaleSpec, build_scale, inverse_scale
from sliderule.svgrender import RenderOptions, render_svg

U = 250.0


@pytest.fixture(scope="module")
def d_doc():
    return documents.scale_document(build_scale(catalog_scale("D", U)), with_analysis=False)


class TestScaleRendering:
    def test_deterministic(self, d_doc):
        assert render_svg(d_doc) == render_svg(d_doc)

    def test_viewbox_width(self, d_doc):
        svg = render_svg(d_doc, RenderOptions(margin_mm=8.0))
        m = re.search(r'viewBox="0 0 ([0-9.]+) ([0-9.]+)"', svg)
        assert m and float(m.group(1)) == pytest.approx(250.0 + 16.0)
        assert 'width="266.00mm"' in svg

    def test_ten_major_labels(self, d_doc):
        labels = re.findall(r"<text[^>]*>([^<]+)</text>", render_svg(d_doc))
        # ten majors plus the origin label under S1
        assert labels.count("1") == 2  # tick label and x0 label
        for k in range(2, 11):
            assert str(k) in labels
        assert len([t for t in labels]) == 11

    def test_tick_lengths_by_level(self, d_doc):
        opt = RenderOptions(rule_height_mm=10.0)
        svg = render_svg(d_doc, opt)
        heights = set()
        for m in re.finditer(r'<line x1="([0-9.-]+)" y1="([0-9.-]+)" x2="\1" y2="([0-9.-]+)"', svg):
            heights.add(round(float(m.group(2)) - float(m.group(3)), 2))
        assert {10.0, 6.0, 3.5} <= heights

    def test_origin_triangle_present(self, d_doc):
        assert "<path d=" in render_svg(d_doc)

    def test_minus_inf_label_and_crowding(self):
        s = build_scale(ScaleSpec("e10", parse("exp(x*ln(10))"), Interval(-math.inf, 0), U))
        svg = render_svg(documents.scale_document(s, with_analysis=False))
        assert ">-inf</text>" in svg
        assert s.accumulation

    def test_fig4_symmetric_about_two(self):
        s = build_scale(ScaleSpec("fig4", parse("(x-2)^3/100+1"), Interval(-5, 9), U))
        doc = documents.scale_document(s, with_analysis=False)
        by_value = {t["value"]: t["position_mm"] for t in doc["ticks"]}
        p2 = U * 1.0  # f(2) = 1
        checked = 0
        for v, p in by_value.items():
            mirror = 4.0 - v
            if mirror in by_value:
                assert (p - p2) == pytest.approx(-(by_value[mirror] - p2), abs=1e-9)
                checked += 1
        assert checked >= 8
        assert "fig4" in render_svg(doc)


class TestModelRendering:
    def test_model_layout(self):
        d = build_scale(catalog_scale("D", U))
        c = build_scale(catalog_scale("C", U))
        model = engine.new_model([d], [c], offset_mm=30.0, hairline_mm=100.0)
        doc = documents.model_document(model)
        svg = render_svg(doc)
        assert 'id="scale-D"' in svg and 'id="scale-C"' in svg
        assert svg.count("<g ") == 2
        assert 'stroke="#c00"' in svg  # hairline

    def test_invalid_kind(self):
        with pytest.raises(ValueError):
            render_svg({"kind": "nope"})

    def test_inverse_doc_renders(self):
        inv = inverse_scale(build_scale(catalog_scale("D", U)))
        doc = documents.scale_document(inv, with_analysis=False)
        svg = render_svg(doc)
        assert ">-inf</text>" in svg
