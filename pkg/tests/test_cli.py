import csv
import io
import json

import pytest

from adrg.cli import Filter, ScanConfig, main, report_single, run_scan
from adrg.config import Tolerances
from adrg.errors import FilterError
from adrg.fixtures import BUILDERS, petersen
from adrg.graph import encode_graph6


@pytest.fixture(scope="module")
def census_file(tmp_path_factory, census):
    path = tmp_path_factory.mktemp("scan") / "census.g6"
    path.write_text("".join(f"{encode_graph6(census(n))} {n}\n" for n in BUILDERS))
    return path


def scan(tmp_path, src, **kw):
    out = tmp_path / "out.jsonl"
    summary = run_scan(ScanConfig(str(src), str(out), **kw))
    return summary, out.read_text()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_census_scan(tmp_path, census_file):
    summary, text = scan(tmp_path, census_file, jobs=2)
    recs = records(text)
    assert [r["name"] for r in recs] == list(BUILDERS)
    assert summary.classified == 4 and summary.failed == 0
    f026 = recs[0]
    assert [h for h, f in enumerate(f026["punctual_dr"]) if f] == [0, 1, 2, 4]
    assert f026["c"][5] == 3 and f026["c"][4] is None and f026["c"][0] is None
    assert f026["well_defined"]["spreads"]["c4"] == [2, 3]
    assert f026["b"][f026["D"]] is None
    assert recs[1]["m_pdr"] == 3 and recs[2]["m_wr"] == 2 and recs[3]["m_wr"] >= 5


def test_schema(tmp_path, census_file):
    rec = records(scan(tmp_path, census_file)[1])[0]
    expected = [
        "name", "n", "degree", "D", "d", "girth", "bipartite", "spectrum", "punctual_dp", "punctual_dr",
        "punctual_wr", "m_pdr", "m_wr", "lm_frontier", "distance_polynomial", "distance_regular",
        "c", "a", "b", "well_defined", "bounds", "diagnostics", "tolerances",
    ]
    assert [k for k in rec if k != "line"] == expected
    assert set(rec["bounds"][0]) == {"h", "avg_deg", "boundA", "boundB", "eqA", "eqB"}
    assert set(rec["spectrum"][0]) == {"value", "mult"}
    assert rec["bounds"][3]["avg_deg"] == "9"
    assert rec["diagnostics"]["provenance"]["bounds.avg_deg"] == "exact"
    assert rec["tolerances"] == Tolerances().as_dict()


def test_error_record(tmp_path):
    src = tmp_path / "bad.g6"
    src.write_text("not-graph6\n")
    summary, text = scan(tmp_path, src)
    (rec,) = records(text)
    assert rec["error"] == "Graph6Error" and "offset" in rec
    assert summary.failed == 1 and summary.internal == 0
    assert main(["--in", str(src), "--out", str(tmp_path / "o")]) == 0


def test_validation_rejections_are_not_internal(tmp_path):
    src = tmp_path / "mixed.g6"
    src.write_text("Bo path\nA_ k2\n@ single\n")
    summary, text = scan(tmp_path, src)
    assert [r.get("error") for r in records(text)] == ["Irregular", None, "TooSmall"]
    assert (summary.parsed, summary.classified, summary.failed) == (3, 1, 2)


def test_filter_over_fixtures(tmp_path, census_file):
    summary, text = scan(tmp_path, census_file, filter="mWalkRegular >= 2")
    assert [r["name"] for r in records(text)] == list(BUILDERS)
    summary, text = scan(tmp_path, census_file, filter="m_wr >= 5 and not distance_regular")
    assert [r["name"] for r in records(text)] == ["F234B"] and summary.filtered == 3
    summary, text = scan(tmp_path, census_file, filter="punctual_dr[3] == false and bipartite")
    assert [r["name"] for r in records(text)] == ["F026A"]


@pytest.mark.parametrize("expr", ["__import__('os')", "m_wr.real", "open('x')", "lambda: 1", "m_wr >"])
def test_filter_rejects_unsafe(expr):
    with pytest.raises(FilterError):
        Filter(expr)


def test_filter_null_comparison():
    f = Filter("mWalkRegular >= 0")
    assert not f({"m_wr": None}) and f({"m_wr": 0})
    assert Filter("m_wr == null")({"m_wr": None})
    with pytest.raises(FilterError):
        Filter("nosuchfield > 1")({"m_wr": 1})


def test_sections(tmp_path, census_file):
    rec = records(scan(tmp_path, census_file, sections=("punctual",))[1])[0]
    assert "punctual_dr" in rec and "bounds" not in rec and "diagnostics" not in rec
    assert "m_wr" in rec and "m_pdr" in rec


def test_csv(tmp_path, census_file):
    _, text = scan(tmp_path, census_file, format="csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0]["name"] == "F026A" and rows[0]["punctual_dr"] == "0 1 2 4" and rows[0]["m_wr"] == "2"


def test_jobs_determinism(tmp_path, census_file):
    a = scan(tmp_path, census_file, jobs=1)[1]
    b = scan(tmp_path, census_file, jobs=3)[1]
    assert a == b


def test_single_reports():
    out = io.StringIO()
    report_single("A_", Tolerances(), out)
    assert "distance-regular: true; D=d=1" in out.getvalue()
    out = io.StringIO()
    report_single(encode_graph6(petersen()), Tolerances(), out)
    text = out.getvalue()
    assert "distance-regular: true" in text and "spectral excess: 6 = 6" in text


def test_single_f026a(census, capsys):
    assert main(["--single", encode_graph6(census("F026A"))]) == 0
    text = capsys.readouterr().out
    assert "punctual DR: 0 1 2 4 / failing 3 5" in text
    assert "(l,m) frontier:" in text and "bounds:" in text


def test_single_rejected(capsys):
    assert main(["--single", "Bo"]) == 0
    assert "Irregular" in capsys.readouterr().out


def test_bad_config(tmp_path, capsys):
    assert main(["--in", str(tmp_path / "missing")]) == 2
    assert main(["--jobs", "0", "--in", str(tmp_path)]) == 2
    assert main(["--tol-match", "0", "--single", "A_"]) == 2
    assert main(["--sections", "bogus", "--in", str(tmp_path)]) == 2
