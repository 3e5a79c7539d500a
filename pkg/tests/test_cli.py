import json

import pytest

from d2tk import gen
from d2tk.cli import falsify, main, write_findings
from d2tk.planegraph import dump_rotg, parse_rotg


@pytest.fixture
def w6_file(tmp_path):
    path = tmp_path / "w6.rotg"
    path.write_text(dump_rotg(gen.fixture("W6")))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_detect_lists_rim_configurations(capsys, w6_file):
    code, out, _ = run(capsys, "detect", w6_file, "--delta", "6")
    lines = out.splitlines()
    assert code == 0
    assert [ln.split()[:2] for ln in lines if ln.startswith("C6.2 ")] == [
        ["C6.2", str(v)] for v in range(1, 7)]


def test_detect_json(capsys, w6_file):
    code, out, _ = run(capsys, "detect", w6_file, "--json")
    data = json.loads(out)
    assert code == 0 and data[0]["id"] == "C6.2" and data[0]["delete"] == 1


def test_discharge_rim_rows(capsys, w6_file):
    code, out, _ = run(capsys, "discharge", w6_file, "--delta", "6", "--transfers")
    rows = {tuple(ln.split()[:2]): ln.split()[3] for ln in out.splitlines()
            if ln.startswith(("v ", "f "))}
    assert code == 0
    assert all(rows[("v", str(v))] == "-4/3" for v in range(1, 7))
    assert rows[("v", "0")] == "0"
    assert "total initial=-8 final=-8" in out
    assert "R2a f6 v1 1/3" in out


def test_analyze_table(capsys, w6_file):
    code, out, _ = run(capsys, "analyze", w6_file)
    assert code == 0
    assert out.splitlines()[1] == "0 6 6 0 0 6 6(6)"


@pytest.mark.parametrize("method", ["constructive", "exact", "greedy"])
def test_color_summary(capsys, w6_file, method):
    code, out, _ = run(capsys, "color", w6_file, "--method", method, "--trace")
    assert code == 0
    assert out.splitlines()[7] == f"palette=7 bound=19 method={method}"


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.rotg"
    bad.write_text("2 1\n0: 1\n1: zero\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "line 3" in err


def test_out_of_range_delta(capsys, tmp_path):
    path = tmp_path / "k4.rotg"
    path.write_text(dump_rotg(gen.fixture("K4")))
    code, _, err = run(capsys, "detect", str(path))
    assert code == 2 and "outside" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["detect"])
    assert info.value.code == 2


def test_gen_emits_parseable_rotg(capsys):
    code, out, _ = run(capsys, "gen", "--seed", "4", "--n", "20")
    assert code == 0 and parse_rotg(out).n == 20
    _, again, _ = run(capsys, "gen", "--seed", "4", "--n", "20")
    assert out == again


def test_falsify_small_run(capsys):
    code, out, _ = run(capsys, "falsify", "--seed", "1", "--count", "12", "--n", "40")
    assert code == 0
    assert out.splitlines()[-1] == "summary seed=1 graphs=12 passed=12 failed=0"


def test_falsify_workers_match_serial():
    assert falsify(2, 6, 30, 0.85, workers=2).text() == falsify(2, 6, 30, 0.85).text()


def test_findings_are_written(tmp_path):
    report = falsify(3, 2, 30, 0.85)
    report.records[0].failures.append("synthetic")
    report.records[0].rotg = dump_rotg(gen.fixture("W6"))
    paths = write_findings(report, tmp_path)
    assert [p.name for p in paths] == ["seed3-graph0.rotg"]
    assert parse_rotg(paths[0].read_text()) == gen.fixture("W6")
    assert "synthetic" in (tmp_path / "seed3-graph0.txt").read_text()
