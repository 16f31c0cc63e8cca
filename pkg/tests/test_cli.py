import json

import pytest

from loosepath import ramsey
from loosepath.cli import main
from loosepath.constructions import comet
from loosepath.graph import read_3g, write_3g


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_turan_order5(capsys, tmp_path):
    code, out = run(capsys, "turan", "--n", "7", "--forbid", "P", "--order", "5", "--out", str(tmp_path))
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()[1:]]
    assert [r[2] for r in rows] == ["20", "15", "13", "12", "11"]
    assert all(r[5] == "match" for r in rows)
    assert json.loads((tmp_path / "turan.json").read_text())["orders"][4]["value"] == 11


def test_turan_emit_extremal(capsys, tmp_path):
    d = tmp_path / "ext"
    code, _ = run(capsys, "turan", "--n", "7", "--forbid", "P", "--contain", "C", "--connected",
                  "--emit-extremal", str(d))
    assert code == 0
    files = sorted(d.glob("*.3g"))
    assert len(files) == 2 and all(len(read_3g(f)) == 13 for f in files)


def test_turan_budget_incomplete(capsys):
    code, out = run(capsys, "turan", "--n", "8", "--forbid", "P", "--budget-nodes", "10")
    assert code == 3 and "incomplete" in out


def test_turan_bad_input(capsys):
    assert main(["turan", "--n", "7", "--forbid", "Z"]) == 2
    assert main(["turan", "--n", "7", "--forbid", "P2", "--contain", "P"]) == 2


def test_zoo(capsys, tmp_path):
    assert main(["zoo", "build", "--name", "rocket", "--n", "16"]) == 2
    out = tmp_path / "k.3g"
    assert main(["zoo", "build", "--name", "K6 u S10", "--out", str(out)]) == 0
    assert len(read_3g(out)) == 56
    code, text = run(capsys, "zoo", "check", "--max-n", "12")
    assert code == 0 and "FAIL" not in text


def test_ramsey_trials(capsys, tmp_path):
    code, out = run(capsys, "ramsey", "trials", "--n", "16", "--colors", "10", "--count", "100", "--seed", "1",
                    "--out", str(tmp_path))
    assert code == 0
    assert out.splitlines()[1].split("\t")[4:7] == ["100", "100", "100"]


def test_ramsey_search_extract_verify(capsys, tmp_path):
    col = tmp_path / "w.col"
    assert main(["ramsey", "search-lower", "--n", "7", "--colors", "2", "--out", str(col)]) == 0
    code, out = run(capsys, "ramsey", "extract", "--coloring", str(col))
    assert code == 0 and out.strip().endswith("none")
    assert main(["ramsey", "search-lower", "--n", "8", "--colors", "2"]) == 0
    assert "exhausted" in capsys.readouterr().out

    full = tmp_path / "k8.col"
    ramsey.write_col(ramsey.Coloring.constant(8, 2), full)
    code, out = run(capsys, "ramsey", "extract", "--coloring", str(full), "--trace", "--out", str(tmp_path))
    assert code == 0
    cert = tmp_path / "certificate.json"
    assert main(["ramsey", "verify", "--coloring", str(full), "--certificate", str(cert)]) == 0
    bad = json.loads(cert.read_text())
    bad["color"] = 1
    cert.write_text(json.dumps(bad))
    assert main(["ramsey", "verify", "--coloring", str(full), "--certificate", str(cert)]) == 1


def test_ramsey_bad_coloring(tmp_path):
    f = tmp_path / "bad.col"
    f.write_text("7 2\n0 1\n")
    assert main(["ramsey", "extract", "--coloring", str(f)]) == 2


def test_audit_commands(capsys, tmp_path):
    g = tmp_path / "co.3g"
    write_3g(comet(12), g)
    code, out = run(capsys, "audit", "decompose", "--graph", str(g), "--out", str(tmp_path))
    assert code == 0 and "FAIL" not in out
    assert json.loads((tmp_path / "audit.json").read_text())[0]["ok"]
    write_3g(comet(6), g)
    assert main(["audit", "decompose", "--graph", str(g)]) == 2
    code, out = run(capsys, "audit", "sweep", "--n", "9", "--trials", "20", "--seed", "7")
    assert code == 0 and "audited\t20\t0" in out
    code, out = run(capsys, "audit", "structure-sweep", "--n", "7")
    assert code == 0


def test_tables_reports_family_discrepancy(capsys, tmp_path):
    code, out = run(capsys, "tables", "--max-n", "20", "--computed-max-n", "7", "--out", str(tmp_path))
    rows = {(r[0], r[1]): r for r in (line.split("\t") for line in out.splitlines()[1:])}
    assert rows[("5", "10")][2:4] == ["19", "{Co10}"]
    assert rows[("5", "17")][2] == "65"
    assert rows[("5", "20")][2] == "101"
    assert rows[("5", "7")][5:] == ["match", "mismatch"]
    assert code == 1
    diag = json.loads((tmp_path / "diagnostics-tables.json").read_text())
    assert diag["mismatches"][0]["n"] == 7 and diag["mismatches"][0]["order"] == 5


def test_outputs_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert main(["ramsey", "trials", "--count", "30", "--seed", "5", "--out", str(d)]) == 0
        assert main(["audit", "sweep", "--n", "8", "--trials", "10", "--seed", "2", "--out", str(d)]) == 0
        assert main(["turan", "--n", "7", "--forbid", "P", "--order", "2", "--out", str(d),
                     "--emit-extremal", str(d / "ext")]) == 0
    for f in sorted(a.rglob("*")):
        if f.is_file():
            assert f.read_bytes() == (b / f.relative_to(a)).read_bytes(), f.name


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("LOOSEPATH_BUDGET_NODES", "10")
    assert main(["turan", "--n", "8", "--forbid", "P"]) == 3


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "loosepath", "turan", "--n", "6", "--forbid", "P"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "\t20\t" in res.stdout


def test_unknown_command_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2
