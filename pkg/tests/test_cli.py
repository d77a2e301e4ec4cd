import csv
import json
import math
import os

import pytest

from sliderule import documents, engine
from sliderule.catalog import catalog_scale
from sliderule.cli import main
from sliderule.scale import build_scale

U = 250.0


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestAnalyze:
    def test_non_monotone_witness(self, capsys):
        code, out, _ = run(capsys, "analyze", "x*ln(x)", "--domain", "0.1:2")
        assert code == 0
        assert "NonMonotone" in out
        assert "0.367879" in out

    def test_monotone_report(self, capsys):
        code, out, _ = run(capsys, "analyze", "lg(x)", "--domain", "1:10")
        assert code == 0
        assert "Increasing" in out
        assert "root" in out and "x0=1" in out
        assert "log_shift: holds" in out

    def test_json_output_matches_library(self, capsys):
        code, out, _ = run(capsys, "analyze", "lg(x)", "--domain", "1:10", "--json")
        blob = json.loads(out)
        assert blob["monotonicity"]["kind"] == "increasing"
        assert blob["origin"]["x0"] == 1.0

    def test_infinite_domain(self, capsys):
        code, out, _ = run(capsys, "analyze", "exp(x*ln(10))", "--domain=-inf:10")
        assert code == 0
        assert "x0=-inf" in out

    def test_parse_error_exits_one(self, capsys):
        code, _, err = run(capsys, "analyze", "x +", "--domain", "0:1")
        assert code == 1 and "offset" in err

    def test_usage_error_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["analyze"])
        assert exc.value.code == 2


class TestBuildTransformRender:
    def test_build_writes_document(self, capsys, tmp_path):
        out_path = tmp_path / "d.json"
        code, _, _ = run(
            capsys, "build", "lg(x)", "--domain", "1:10", "--unit", "250", "--name", "D",
            "-o", str(out_path),
        )
        assert code == 0
        doc = documents.load_document(str(out_path))
        lib = documents.scale_document(build_scale(catalog_scale("D", U)))
        assert doc["ticks"] == lib["ticks"]
        assert doc["samples"] == lib["samples"]

    def test_transform_negate(self, capsys, tmp_path):
        src = tmp_path / "d.json"
        dst = tmp_path / "ci.json"
        run(capsys, "build", "lg(x)", "--domain", "1:10", "--name", "D", "-o", str(src))
        code, _, _ = run(capsys, "transform", str(src), "--op", "negate", "-o", str(dst))
        assert code == 0
        doc = documents.load_document(str(dst))
        assert doc["ticks"][0]["position_mm"] == pytest.approx(-250.0)

    def test_transform_translate_and_zoom(self, capsys, tmp_path):
        src = tmp_path / "d.json"
        run(capsys, "build", "lg(x)", "--domain", "1:10", "--name", "D", "-o", str(src))
        dst = tmp_path / "t.json"
        code, _, _ = run(
            capsys, "transform", str(src), "--op", f"translate:{-math.log10(2)}", "-o", str(dst)
        )
        assert code == 0
        assert documents.load_document(str(dst))["origin"]["x0"] == pytest.approx(2.0)
        dst2 = tmp_path / "z.json"
        run(capsys, "transform", str(src), "--op", "zoom:125", "-o", str(dst2))
        assert documents.load_document(str(dst2))["window_mm"][1] == pytest.approx(125.0)

    def test_transform_inverse(self, capsys, tmp_path):
        src = tmp_path / "d.json"
        run(capsys, "build", "lg(x)", "--domain", "1:10", "--name", "D", "-o", str(src))
        dst = tmp_path / "i.json"
        code, _, _ = run(capsys, "transform", str(src), "--op", "inverse", "-o", str(dst))
        assert code == 0
        assert documents.load_document(str(dst))["origin"]["x0"] == "-inf"

    def test_bad_op(self, capsys, tmp_path):
        src = tmp_path / "d.json"
        run(capsys, "build", "lg(x)", "--domain", "1:10", "-o", str(src))
        code, _, err = run(capsys, "transform", str(src), "--op", "sideways")
        assert code == 1 and "unknown op" in err

    def test_catalog_k_renders_with_expected_position(self, capsys, tmp_path):
        kdoc = tmp_path / "k.json"
        code, _, _ = run(capsys, "catalog", "K", "--unit", "250", "-o", str(kdoc))
        assert code == 0
        doc = documents.load_document(str(kdoc))
        tick8 = [t for t in doc["ticks"] if t["value"] == 8.0][0]
        assert tick8["position_mm"] == pytest.approx(75.25749891599530, abs=1e-9)
        out_svg = tmp_path / "k.svg"
        code, _, _ = run(capsys, "render", str(kdoc), "-o", str(out_svg))
        assert code == 0
        svg = out_svg.read_text()
        # raw group coordinates carry the physical position
        assert 'x1="75.26"' in svg

    def test_catalog_list(self, capsys):
        code, out, _ = run(capsys, "catalog", "--list")
        assert code == 0
        assert "CI" in out.split()

    def test_catalog_unknown(self, capsys):
        code, _, err = run(capsys, "catalog", "QQ")
        assert code == 1 and "known codes" in err

    def test_render_stdout(self, capsys, tmp_path):
        src = tmp_path / "d.json"
        run(capsys, "build", "lg(x)", "--domain", "1:10", "-o", str(src))
        code, out, _ = run(capsys, "render", str(src))
        assert code == 0 and out.startswith("<?xml")


class TestComputeExport:
    def test_export_and_compute(self, capsys, tmp_path):
        model_path = tmp_path / "m.json"
        code, _, _ = run(
            capsys, "export", "--stator", "D", "--stator", "A", "--slide", "C",
            "--unit", "250", "-o", str(model_path),
        )
        assert code == 0
        code, out, _ = run(
            capsys, "compute", "--model", str(model_path),
            "--f", "D", "--g", "C", "--h", "D", "-x", "3", "-y", "2",
        )
        assert code == 0
        assert out.strip() == "z = 6"
        # thin adapter: identical to the library result
        model = documents.model_from_document(documents.load_document(str(model_path)))
        lib = engine.compute(model, "D", "C", "D", 3.0, 2.0)
        assert f"z = {lib.value:.10g}" == out.strip()

    def test_compute_off_scale_exits_one(self, capsys, tmp_path):
        model_path = tmp_path / "m.json"
        run(capsys, "export", "--stator", "D", "--slide", "C", "-o", str(model_path))
        code, _, err = run(
            capsys, "compute", "--model", str(model_path),
            "--f", "D", "--g", "C", "--h", "D", "-x", "5", "-y", "5",
        )
        assert code == 1 and "off scale" in err

    def test_export_render_model(self, capsys, tmp_path):
        model_path = tmp_path / "m.json"
        run(capsys, "export", "--stator", "D", "--slide", "C", "-o", str(model_path))
        svg_path = tmp_path / "m.svg"
        code, _, _ = run(capsys, "render", str(model_path), "-o", str(svg_path))
        assert code == 0
        assert 'id="scale-C"' in svg_path.read_text()


class TestReport:
    def test_report_writes_figure_profile_analysis(self, capsys, tmp_path):
        out_dir = tmp_path / "rep"
        code, out, _ = run(
            capsys, "report", "lg(x)", "--domain", "1:10", "--name", "D",
            "--out", str(out_dir),
        )
        assert code == 0
        prof = out_dir / "D_profile.csv"
        fig = out_dir / "D_figure.png"
        blob = out_dir / "D_analysis.json"
        assert prof.exists() and fig.exists() and blob.exists()
        with open(prof) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) > 100
        assert float(rows[0]["x"]) == pytest.approx(1.0)
        # |f'| = 1/(x ln 10) decreases along the lg scale
        slopes = [float(r["slope_abs"]) for r in rows]
        assert slopes[0] > slopes[-1]
        assert fig.stat().st_size > 5000
        assert json.load(open(blob))["monotonicity"]["kind"] == "increasing"
