import io
import json
import subprocess
import sys

import pytest

from secdom.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def c4_file(tmp_path):
    path = tmp_path / "c4.edges"
    path.write_text("4 4\n0 1\n1 2\n2 3\n0 3\n")
    return str(path)


def write_set(tmp_path, text, name="s.set"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_gamma_formula():
    assert call("gamma", "--family", "p2xcn", "--n", "16", "--method", "formula") == (0, "12\n", "")


def test_gamma_defaults_to_formula_for_family():
    assert call("gamma", "--family", "m2n", "--n", "12")[1] == "9\n"


def test_gamma_json():
    code, out, _ = call("gamma", "--family", "p3xcn", "--n", "7", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"value": 8, "method": "formula", "case": "n = 4, 7"}


def test_gamma_solver_on_file_with_witness(c4_file):
    code, out, _ = call("gamma", "--graph", c4_file, "--witness")
    assert code == 0
    assert out == "2\n0 1\n"


def test_gamma_oracle_family():
    code, out, _ = call("gamma", "--family", "p2xpn", "--n", "5", "--method", "oracle", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["value"] == 4 and payload["method"] == "oracle"


@pytest.mark.parametrize("argv", [
    ("gamma", "--family", "p2xcn"),
    ("gamma", "--family", "nope", "--n", "4"),
    ("gamma", "--family", "p2xcn", "--n", "2"),
    ("gamma", "--family", "p2xcn", "--n", "8", "--witness"),
    ("gamma", "--family", "p2xcn", "--n", "8", "--graph", "x"),
    ("frobnicate",),
    ("construct", "--family", "p3xpn", "--n", "5"),
    ("table", "--family", "p2xpn", "--from", "5", "--to", "3"),
    ("audit", "--family", "p2xpn", "--n", "4"),
    ("audit", "--family", "p2xpn", "--n", "4", "--pattern", "11", "--sizes", "x"),
])
def test_usage_errors(argv):
    code, out, _ = call(*argv)
    assert code == 2 and out == ""


def test_gamma_formula_needs_family(c4_file):
    assert call("gamma", "--graph", c4_file, "--method", "formula")[0] == 2


def test_verify_true(tmp_path, c4_file):
    s = write_set(tmp_path, "0 2\n")
    assert call("verify", "--graph", c4_file, "--set", s) == (0, "true\n", "")


def test_verify_false(tmp_path):
    g = tmp_path / "p3.edges"
    g.write_text("3 2\n0 1\n1 2\n")
    s = write_set(tmp_path, "1")
    assert call("verify", "--graph", str(g), "--set", s)[:2] == (1, "false\nunguarded\t0\n")
    code, out, _ = call("verify", "--graph", str(g), "--set", s, "--format", "json")
    assert (code, json.loads(out)) == (1, {"secure": False, "unguarded": 0})


def test_verify_family_source(tmp_path):
    s = write_set(tmp_path, "2 5 8 9 12 15")
    assert call("verify", "--family", "p2xcn", "--n", "8", "--set", s)[:2] == (0, "true\n")


@pytest.mark.parametrize("edges", ["4 4\n0 1\n", "x\n", "3 1\n0 5\n"])
def test_bad_graph_file(tmp_path, edges):
    g = tmp_path / "bad.edges"
    g.write_text(edges)
    code, _, err = call("gamma", "--graph", str(g))
    assert code == 3 and "bad.edges" in err


def test_missing_files(tmp_path, c4_file):
    assert call("gamma", "--graph", str(tmp_path / "absent"))[0] == 3
    assert call("verify", "--graph", c4_file, "--set", str(tmp_path / "absent"))[0] == 3
    bad = write_set(tmp_path, "0 9")
    assert call("verify", "--graph", c4_file, "--set", bad)[0] == 3


def test_construct():
    code, out, _ = call("construct", "--family", "p3xcn", "--n", "3")
    assert code == 0
    assert out == '{"family":"p3xcn","n":3,"size":3,"vertices":[[1,1],[2,2],[3,3]],"ids":[0,4,8]}\n'


def test_table_p3xcn_solver():
    code, out, _ = call("table", "--family", "p3xcn", "--from", "3", "--to", "8", "--check", "solver")
    lines = out.splitlines()
    assert lines[0] == "n\tformula\tcase\tconstruct\tsolver\tflag"
    rows = [line.split("\t") for line in lines[1:]]
    assert [r[4] for r in rows] == ["3", "5", "6", "6", "8", "9"]
    assert all(r[5] == "MATCH" for r in rows)
    assert code == 0


def test_table_without_check_and_p3xpn_construct_column():
    code, out, _ = call("table", "--family", "p3xpn", "--to", "4")
    assert code == 0
    assert out.splitlines()[1:] == ["2\t3\tn ≤ 8 or n = 10\t-\t-\t-",
                                    "3\t4\tn ≤ 8 or n = 10\t-\t-\t-",
                                    "4\t5\tn ≤ 8 or n = 10\t-\t-\t-"]


def test_table_mismatch_exit_code():
    # exhaustive search finds 2 for P2xC3, below the closed form
    code, out, _ = call("table", "--family", "p2xcn", "--from", "3", "--to", "4", "--check", "oracle")
    assert code == 1
    assert out.splitlines()[1].endswith("MISMATCH")


def test_table_json():
    code, out, _ = call("table", "--family", "p2xpn", "--from", "2", "--to", "3",
                        "--check", "solver", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["check"] == "solver"
    assert [r["solver"] for r in payload["rows"]] == [2, 3]


def test_enumerate(c4_file):
    assert call("enumerate", "--graph", c4_file, "--size", "2")[:2] == (0, "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    assert call("enumerate", "--graph", c4_file, "--size", "1")[:2] == (0, "")
    code, out, _ = call("enumerate", "--family", "p2xpn", "--n", "2", "--size", "3", "--format", "json")
    assert json.loads(out)["count"] == 4
    assert call("enumerate", "--graph", c4_file, "--size", "5")[0] == 2


def test_audit_clean():
    assert call("audit", "--family", "p2xpn", "--n", "8", "--pattern", "1010") == (0, "0\n", "")
    assert call("audit", "--family", "p3xcn", "--n", "6", "--rule", "111111", "--sizes", "6")[:2] == (0, "0\n")
    assert call("audit", "--family", "p2xcn", "--n", "8", "--rule", "type1-blocks")[:2] == (0, "0\n")


def test_audit_violations_report(tmp_path):
    report = tmp_path / "v.jsonl"
    code, out, _ = call("audit", "--family", "p2xpn", "--n", "3", "--pattern", "11",
                        "--sizes", "3:4", "--report", str(report))
    assert code == 1
    lines = report.read_text().splitlines()
    assert out == f"{len(lines)}\n" and lines
    first = json.loads(lines[0])
    assert set(first) == {"n", "size", "set", "pattern", "position"}
    assert first["pattern"] == "11" and first["size"] in (3, 4)


def test_audit_report_unwritable(tmp_path):
    target = tmp_path / "missing" / "v.jsonl"
    assert call("audit", "--family", "p2xpn", "--n", "3", "--pattern", "11", "--report", str(target))[0] == 3


def test_output_byte_stable():
    argv = ("table", "--family", "m2n", "--from", "3", "--to", "9", "--check", "solver")
    assert call(*argv) == call(*argv)


def test_console_entry_point(c4_file):
    proc = subprocess.run([sys.executable, "-m", "secdom", "gamma", "--graph", c4_file],
                          capture_output=True, text=True, check=False)
    assert (proc.returncode, proc.stdout) == (0, "2\n")
    proc = subprocess.run([sys.executable, "-m", "secdom"], capture_output=True, text=True, check=False)
    assert proc.returncode == 2
