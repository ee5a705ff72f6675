import json
from pathlib import Path

import pytest

from adrtools.cli import main
from adrtools.formats import format_algebra_file

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_algebra_info(capsys):
    code, out, _ = run(capsys, "algebra", "info", "--json")
    info = json.loads(out)
    assert code == 0
    assert (info["dim"], info["loewy_length"], info["rigid"]) == (3, 2, False)


def test_semisimple_algebra_info(tmp_path, capsys):
    p = tmp_path / "k2.quiver"
    p.write_text("vertex a b\n")
    code, out, _ = run(capsys, "algebra", "info", "--algebra", str(p), "--json")
    info = json.loads(out)
    assert code == 0 and info["rigid"] and info["quiver"]["arrows"] == [[0, 0], [0, 0]]


def test_bad_inputs_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.quiver"
    p.write_text("vertex a\narrow f a b\n")
    assert run(capsys, "algebra", "info", "--algebra", str(p))[0] == 2
    assert run(capsys, "algebra", "info", "--algebra", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    s = tmp_path / "s.json"
    s.write_text('{"d": 2, "ideals": {"1,2": ["e_a"]}}')
    assert run(capsys, "system", "validate", "--system", str(s))[0] == 2


def test_system_roundtrip(tmp_path, capsys):
    code, out, _ = run(capsys, "system", "jacobson")
    s = tmp_path / "jac.json"
    s.write_text(out)
    code, out, _ = run(capsys, "system", "validate", "--system", str(s), "--json")
    assert code == 0 and json.loads(out)["certificates"]["semisimple"]
    code, out, _ = run(capsys, "system", "dual", "--system", str(s))
    assert code == 0 and json.loads(out)["d"] == 2


def test_construct_writes_sidecar(tmp_path, capsys):
    out = tmp_path / "A.alg"
    assert run(capsys, "construct", "--out", str(out))[0] == 0
    assert out.read_text().startswith("algebra dim=9")
    grading = json.loads((tmp_path / "A.alg.grading.json").read_text())
    assert grading["dim"] == 9 and len(grading["grading"]) == 9
    code, text, _ = run(capsys, "algebra", "info", "--algebra", str(out), "--json")
    assert code == 0 and json.loads(text)["basic_dim"] == 5


@pytest.mark.parametrize("stage", ["qh", "ringel", "stratified", "chain", "faithful"])
def test_verify_stages(stage, capsys):
    code, out, _ = run(capsys, "verify", stage, "--json")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_verify_ringel_reports_a3(capsys):
    code, out, _ = run(capsys, "verify", "ringel", "--json")
    data = json.loads(out)
    assert data["end_op_basic"]["dim"] == 6
    assert data["end_op_basic"]["quiver"]["vertices"] == 3


def test_qh_refuses_non_semisimple(tmp_path, capsys):
    s = tmp_path / "s.json"
    s.write_text('{"d": 1, "ideals": {"1,2": []}}')
    assert run(capsys, "verify", "qh", "--system", str(s))[0] == 2
    assert run(capsys, "verify", "stratified", "--system", str(s))[0] == 0


def test_enumerate_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "--d", "2", "--json")
    data = json.loads(out)
    assert code == 0
    assert (data["count"], data["zero_or_semisimple"], data["nontrivial"]) == (20, 9, 11)


def test_demo_matches_golden(capsys):
    code, out, _ = run(capsys, "demo", "section7", "--json")
    assert code == 0
    assert out == (GOLDEN / "section7.json").read_text()


def test_reports_are_deterministic(capsys):
    first = run(capsys, "verify", "qh", "--json")[1]
    assert first == run(capsys, "verify", "qh", "--json")[1]


def test_mutated_algebra_exits_1(tmp_path, capsys, a2):
    table = format_algebra_file(a2).replace("mul 2 0 0 0 1", "mul 2 0 0 0 2")
    p = tmp_path / "bad.alg"
    p.write_text(table)
    assert table != format_algebra_file(a2)
    assert run(capsys, "algebra", "info", "--algebra", str(p))[0] == 1
