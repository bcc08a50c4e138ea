import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srcot.cli import EXIT_CAP, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main
from srcot.cotangent import full_report
from srcot.generators import ngon, octahedron_diagonals
from srcot.io import (
    InputError,
    PieceRow,
    ReportDocument,
    build_report,
    complex_to_json,
    key_from_names,
    load_complex,
    parse_complex_text,
    parse_exponents,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- parsing -------------------------------------------------------------------------

def test_parse_json_complex():
    X = parse_complex_text('{"vertices": ["a", "b", "c"], "facets": [["a", "b"], ["c"]]}')
    assert X.f_vector == (1, 3, 1)


def test_parse_line_format_with_comments():
    X = parse_complex_text("# a square\na b\nb,c\nc d  # trailing\nd a\n")
    assert X.f_vector == (1, 4, 4)


def test_parse_empty_facet_line():
    assert parse_complex_text("{}\n").faces == {0}
    assert parse_complex_text("").is_void


@pytest.mark.parametrize("text, where", [
    ('{"facets": [["a", "b"]', "<input>:1"),
    ('{"vertices": ["a"]}', "'facets'"),
    ('{"facets": [["a", 3.5]]}', "facets[0]"),
    ('{"facets": 3}', "'facets' must be a list"),
    ('{"vertices": ["a"], "facets": [["a", "b"]]}', "unknown vertex"),
    ("a b\nc c\n", "<input>:2"),
])
def test_parse_errors_carry_context(text, where):
    with pytest.raises(InputError, match=None) as info:
        parse_complex_text(text)
    assert where in str(info.value)


def test_load_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_complex(tmp_path / "nope.json")


def test_complex_json_round_trip():
    X = octahedron_diagonals()
    assert parse_complex_text(json.dumps(complex_to_json(X))) == X


def test_key_parsing(D):
    k = key_from_names(D, "x", "y,y2")
    assert k.a == D.face_of(["x"]) and k.b == D.face_of(["y", "y2"])
    with pytest.raises(InputError):
        key_from_names(D, "x", "")
    with pytest.raises(InputError):
        key_from_names(D, "x", "x")
    with pytest.raises(InputError, match="unknown vertex"):
        key_from_names(D, "w", "x")
    assert parse_exponents(D, "x^2,y") == ((2, 1, 0, 0, 0, 0), True)
    with pytest.raises(InputError):
        parse_exponents(D, "x^0")
    with pytest.raises(InputError):
        parse_exponents(D, "x,x")


# -- report documents ----------------------------------------------------------------

def test_report_round_trip():
    X = ngon(7)
    doc = build_report(X, full_report(X), "n")
    back = ReportDocument.from_json(doc.to_json())
    assert back == doc
    assert doc.totals() == (7, 7)


rows = st.lists(st.builds(PieceRow, st.lists(st.text(min_size=1, max_size=3), max_size=2),
                          st.lists(st.text(min_size=1, max_size=3), min_size=1, max_size=3),
                          st.integers(0, 5), st.integers(0, 5), st.integers(0, 5)), max_size=5)


@settings(max_examples=50, deadline=None)
@given(rows, st.dictionaries(st.integers(-5, 5), st.integers(0, 9), max_size=4))
def test_report_round_trip_property(rs, coarse):
    doc = ReportDocument(["a"], [["a"]], [1, 1], "n", rs, coarse, dict(coarse))
    assert ReportDocument.from_json(doc.to_json()) == doc


# -- commands ------------------------------------------------------------------------

def test_cli_report_ngon7(capsys):
    code, out, _ = run(capsys, "report", "--gen", "ngon:7", "--json")
    assert code == EXIT_OK
    doc = ReportDocument.from_json(out)
    chords = [r for r in doc.rows if not r.a and len(r.b) == 2 and r.dim_t2]
    assert len(chords) == 7 and all(r.dim_t2 == 1 for r in chords)
    assert doc.totals()[1] == 7


def test_cli_report_simplex(capsys):
    code, out, _ = run(capsys, "report", "--gen", "simplex:4", "--json")
    assert code == EXIT_OK and ReportDocument.from_json(out).rows == []


def test_cli_report_route_all_and_coarse(capsys):
    code, out, _ = run(capsys, "report", "--gen", "ngon:5", "--route", "all", "--coarse", "-1", "--coarse", "0")
    assert code == EXIT_OK
    assert "coarse degree" in out and "route: all" in out


def test_cli_piece_D(capsys):
    code, out, _ = run(capsys, "piece", "--a", "", "--b", "y,y2", "--gen", "octahedron-diagonals", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert (doc["dim_hom"], doc["dim_t1"], doc["dim_t2"]) == (0, 0, 4)
    assert len(doc["N"]) == 10 and sorted(doc["Nt"]) == [["x", "x2"], ["z", "z2"]]


def test_cli_piece_pentagon(capsys):
    code, out, _ = run(capsys, "piece", "--a", "1", "--b", "0,2", "--gen", "ngon:5")
    assert code == EXIT_OK
    assert "(1, 1, 0)" in out and "x₀x₂ − ε x₁" in out


def test_cli_piece_trivial_and_nonface(capsys):
    code, out, _ = run(capsys, "piece", "--a", "", "--b", "0", "--gen", "simplex:2")
    assert code == EXIT_OK and "(0, 0, 0)" in out
    code, out, _ = run(capsys, "piece", "--a", "0,2", "--b", "1", "--gen", "ngon:5")
    assert code == EXIT_OK and "warning" in out


def test_cli_piece_other_route(capsys):
    code, out, _ = run(capsys, "piece", "--a", "1", "--b", "0,2", "--gen", "ngon:5", "--route", "m")
    assert code == EXIT_OK


def test_cli_cup(capsys):
    code, out, _ = run(capsys, "cup", "--a1", "3", "--b1", "2,4", "--a2", "4", "--b2", "3,5", "--gen", "ngon:7", "--json")
    doc = json.loads(out)
    assert code == EXIT_OK and not doc["zero"] and doc["coordinates"] in (["1"], ["-1"])
    code, out, _ = run(capsys, "cup", "--a1", "3", "--b1", "2,4", "--a2", "5", "--b2", "4,6", "--gen", "ngon:7")
    assert "intersect" in out
    code, out, _ = run(capsys, "cup", "--a1", "", "--b1", "0", "--a2", "3", "--b2", "2,4", "--gen", "ngon:7")
    assert "zero" in out


def test_cli_quadratic_t0_localize_gen(capsys):
    code, out, _ = run(capsys, "quadratic", "--gen", "ngon:6", "--ascii")
    assert code == EXIT_OK and out.count("= 0") == 3
    code, out, _ = run(capsys, "t0", "--gen", "ngon:5", "--json")
    assert json.loads(out)["module_generated_by_delta"] is True
    code, out, _ = run(capsys, "localize", "--a", "x", "--b", "y", "--vertex", "x", "--gen", "octahedron-diagonals")
    assert code == EXIT_OK and "class 0" in out
    code, out, _ = run(capsys, "localize", "--a", "x", "--b", "y", "--vertex", "x,y", "--gen", "octahedron-diagonals")
    assert code == EXIT_USAGE
    code, out, _ = run(capsys, "gen", "sphere0")
    assert out.split() == ["0", "1"]
    code, out, _ = run(capsys, "gen", "ngon:4", "--json")
    assert len(json.loads(out)["facets"]) == 4


def test_cli_check(capsys):
    code, out, _ = run(capsys, "check", "--gen", "ngon:6")
    assert code == EXIT_OK and out.count("PASS") == 5
    code, out, _ = run(capsys, "check", "--gen", "random:seed=7,verts=6")
    assert code == EXIT_OK and "FAIL" not in out


def test_cli_input_file(tmp_path, capsys):
    f = tmp_path / "sq.txt"
    f.write_text("a b\nb c\nc d\nd a\n")
    code, out, _ = run(capsys, "report", str(f))
    assert code == EXIT_OK and "a,c" in out
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["a"], "facets": [["a", "zz"]]}')
    code, _, err = run(capsys, "check", str(bad))
    assert code == EXIT_USAGE and "unknown vertex" in err


def test_cli_usage_errors(capsys):
    assert run(capsys, "report")[0] == EXIT_USAGE
    assert run(capsys, "report", "--gen", "ngon:2")[0] == EXIT_USAGE
    assert run(capsys, "report", "x.json", "--gen", "ngon:5")[0] == EXIT_USAGE
    assert run(capsys, "report", "--gen", "ngon:5", "--jobs", "0")[0] == EXIT_USAGE
    assert run(capsys, "piece", "--b", "0", "--a", "0", "--gen", "ngon:5")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE


def test_cli_resource_cap(capsys):
    code, _, err = run(capsys, "report", "--gen", "ngon:6", "--route", "m", "--cap", "4")
    assert code == EXIT_CAP and "--route n" in err


def test_cli_route_mismatch(monkeypatch, capsys):
    import srcot.cli as cli

    real = cli.compute_dims

    def broken(X, keys, route="n", jobs=1):
        out = real(X, keys, route=route, jobs=jobs)
        return [(9, 9, 9)] + out[1:] if route == "u" else out

    monkeypatch.setattr(cli, "compute_dims", broken)
    code, _, err = run(capsys, "report", "--gen", "ngon:4", "--route", "all")
    assert code == EXIT_MISMATCH and "disagree" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "srcot.cli", "gen", "sphere0"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.split() == ["0", "1"]
