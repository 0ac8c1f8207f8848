from pathlib import Path

import pytest

from sgsmap.cli import SpecFileError, main, parse_spec_text
from sgsmap.complexes import from_text
from sgsmap.report import ReportDocument, parse_data, render_data
from sgsmap.sgsmodel import total_dimension

SPECFILES = Path(__file__).resolve().parent.parent / "specfiles"


def write(tmp_path, text, name="s.spec"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_parse_disk_spec():
    sf = parse_spec_text("base = disk(2)\nfiber = [1]\nassignment = [1]\n")
    spec = sf.to_spec()
    assert (spec.n, spec.l1, spec.l2) == (2, 1, 1)


def test_parse_example_2_3():
    sf = parse_spec_text("base = sphere_times_interval(3)\nfiber = [1,2]\nassignment = [1,1]\n")
    spec = sf.to_spec()
    assert (total_dimension(spec), spec.l1, spec.l2) == (6, 2, 2)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(SpecFileError) as e:
        parse_spec_text("base = disk(2)\n\nfibre = [1]\nassignment = [1, x]\n")
    text = "\n".join(e.value.diagnostics)
    assert "line 3" in text and "unknown key 'fibre'" in text
    with pytest.raises(SpecFileError) as e:
        parse_spec_text("base = disk(2)\nfiber = 1\nassignment = [1]\n")
    assert "line 2, column 9" in e.value.diagnostics[0]
    with pytest.raises(SpecFileError):
        parse_spec_text("base = disk(2)\nfiber = [1]\nassignment = [1]\ncoefficients = [Q]\n")


def test_arity_diagnostic(tmp_path, capsys):
    p = write(tmp_path, "base = sphere_times_interval(2)\nfiber = [1]\nassignment = [1]\n")
    assert main(["predict", str(p)]) == 2
    assert "2 boundary components" in capsys.readouterr().err


def test_base_from_complex_file(tmp_path, capsys):
    (tmp_path / "tri.txt").write_text("dim 2\n# a triangle\n0 1 2\n")
    p = write(tmp_path, "base = tri.txt\nfiber = [1]\nassignment = [1]\ncoefficients = [Z]\n")
    assert main(["verify", str(p), "--format", "data"]) == 0
    doc = parse_data(capsys.readouterr().out)
    assert [n for n, _ in doc.sections] == ["Z"]
    assert doc.section("Z")["betti"] == [1, 0, 0, 1]


def test_verify_disk(tmp_path, capsys):
    assert main(["verify", str(SPECFILES / "sphere3.spec"), "--format", "data"]) == 0
    doc = parse_data(capsys.readouterr().out)
    for ring in ("Z2", "Z"):
        body = doc.section(ring)
        assert body["betti"] == [1, 0, 0, 1] and body["predicted"] == [1, 0, 0, 1]


def test_predict_example_2_2_boundary_products_empty(capsys):
    assert main(["predict", str(SPECFILES / "example_2_2.spec")]) == 0
    out = capsys.readouterr().out
    assert "boundary-product: empty" in out
    assert "assignment surjective" in out


def test_build_writes_complex(tmp_path, capsys):
    out = tmp_path / "m.txt"
    assert main(["build", str(SPECFILES / "sphere2.spec"), "--format", "data", "--complex-out", str(out)]) == 0
    doc = parse_data(capsys.readouterr().out)
    assert doc.section("complex")["euler_characteristic"] == 2
    assert from_text(out.read_text()).euler_characteristic() == 2


def test_build_example_2_3_euler(capsys):
    assert main(["build", str(SPECFILES / "example_2_3.spec"), "--format", "data"]) == 0
    doc = parse_data(capsys.readouterr().out)
    assert doc.section("complex")["euler_characteristic"] == 8


def test_budget_exit_status(capsys):
    assert main(["verify", str(SPECFILES / "sphere3.spec"), "--coeff", "z", "--budget", "10"]) == 3
    assert main(["verify", str(SPECFILES / "sphere3.spec"), "--coeff", "z2", "--budget", "10"]) == 0


def test_c0_option(capsys):
    assert main(["predict", str(SPECFILES / "pants.spec"), "--c0", "C2", "--format", "data"]) == 0
    doc = parse_data(capsys.readouterr().out)
    # the file orders C1, C0, C2; --c0 moves C2 to the front
    assert doc.fields["components"] == ["C2", "C1", "C0"]
    assert main(["predict", str(SPECFILES / "pants.spec"), "--c0", "C9"]) == 2


def test_catalog_and_usage(capsys):
    assert main(["catalog"]) == 0
    assert "surface" in capsys.readouterr().out
    assert main(["frobnicate"]) == 2


def test_reports_are_byte_identical(capsys):
    args = ["verify", str(SPECFILES / "punctured_torus.spec"), "--format", "data"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first
    assert "timings" not in first
    main(args + ["--timings"])
    assert "[timings]" in capsys.readouterr().out


def test_report_round_trip():
    doc = ReportDocument("verify", {"base": "disk(2)", "m": 3}, [("Z", {"betti": [1, 0, 0, 1], "ok": True, "x": None})], {"Z.build": 0.5})
    assert parse_data(render_data(doc)) == doc
    doc2 = ReportDocument("catalog")
    assert parse_data(render_data(doc2)) == doc2


def test_rendered_verify_report_round_trips(capsys):
    main(["verify", str(SPECFILES / "sphere2.spec"), "--format", "data", "--timings"])
    text = capsys.readouterr().out
    assert render_data(parse_data(text)) == text


@pytest.mark.parametrize("path", sorted(SPECFILES.glob("*.spec")), ids=lambda p: p.stem)
def test_shipped_specs_verify_cleanly(path, capsys):
    assert main(["verify", str(path), "--format", "data"]) == 0
