import io as stdio
import json
from pathlib import Path

import pytest

from skewcomp import io
from skewcomp.cli import run
from skewcomp.matrices import Matrix
from skewcomp.pfaffian import psi
from skewcomp.rings import parse_ring

GOLDEN = Path(__file__).parent / "golden"


def invoke(*argv):
    out = stdio.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.mark.parametrize("argv,golden", [
    (["demo", "kaplansky"], "demo_kaplansky.json"),
    (["demo", "identities"], "demo_identities.json"),
    (["orbit", "--ring", "Zmod:3", "--n", "2"], "orbit_zmod3_n2.json"),
])
def test_golden(argv, golden):
    first = invoke(*argv, "--format", "json")
    second = invoke(*argv, "--format", "json")
    assert first == second
    assert first[0] == 0
    assert first[1] == (GOLDEN / golden).read_text()


def test_orbit_table_content():
    _, text = invoke("orbit", "--ring", "Zmod:3", "--n", "2", "--format", "json")
    table = json.loads(text)["outputs"]["table"]
    assert table["orbit_count"] == 1 and table["sizes"] == [8]


def test_pfaffian_command(tmp_path):
    ring = parse_ring("Zmod:5")
    path = write(tmp_path, "f.json", {"ring": "Zmod:5", "entries": [
        ["0", "1", "2", "3"], ["-1", "0", "4", "0"], ["-2", "-4", "0", "1"], ["-3", "0", "-1", "0"]]})
    code, text = invoke("pfaffian", "--matrix", path, "--format", "json")
    report = json.loads(text)
    assert code == 0
    pf = ring(report["outputs"]["pfaffian"])
    assert pf == ring(1 * 1 - 2 * 0 + 3 * 4)
    assert report["outputs"]["det"] == str(pf * pf)


def test_pfaffian_rejects_non_alternating(tmp_path):
    path = write(tmp_path, "f.json", {"ring": "Q", "entries": [["0", "1"], ["1", "0"]]})
    assert invoke("pfaffian", "--matrix", path)[0] == 2


@pytest.mark.parametrize("argv", [
    ["skew4", "--ring", "Zmod:6", "--v", "1,2,3", "--w", "1,0,0"],
    ["complete", "--ring", "Zmod:6", "--v", "1,2,3", "--w", "1,0,0"],
    ["square-rep", "--ring", "Zmod:6", "--v", "1,2,3", "--w", "1,0,0", "--iterate", "2"],
    ["um-count", "--ring", "Zmod:4", "--n", "2"],
    ["demo", "lemma35", "--mod", "3"],
])
def test_commands_pass(argv):
    code, text = invoke(*argv)
    assert code == 0, text
    assert "[fail]" not in text


def test_square_rep_iterated_row():
    _, text = invoke("square-rep", "--ring", "Zmod:6", "--v", "1,2,3", "--w", "1,0,0",
                     "--iterate", "2", "--format", "json")
    W = json.loads(text)["outputs"]["W"]
    assert W["entries"][0] == ["0", "1", "2", "3"]


def test_complete_writes_out_file(tmp_path):
    out = tmp_path / "r.json"
    row = write(tmp_path, "row.json", {"ring": "Zmod:6", "v": ["1", "2", "3"], "w": ["1", "0", "0"]})
    code, text = invoke("complete", "--row", row, "--format", "json", "--out", str(out))
    assert code == 0 and out.read_text() == text
    K = io.matrix_from_json(json.loads(text)["outputs"]["K"])
    assert K.rows[0] == tuple(parse_ring("Zmod:6")(x) for x in "123")


@pytest.mark.parametrize("argv", [
    ["skew4", "--ring", "Zmod:6", "--v", "2,3,0", "--w", "1,1,0"],
    ["skew4", "--ring", "Zmod:", "--v", "1,0,0", "--w", "1,0,0"],
    ["skew4", "--v", "1,0,0"],
    ["orbit", "--ring", "Q", "--n", "2"],
    ["orbit", "--ring", "Zmod:9", "--n", "2"],
])
def test_validation_errors_exit_2(argv):
    assert invoke(*argv)[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        run(["no-such-command"])
    assert info.value.code == 2


def test_skew_from_completion_command(tmp_path):
    path = write(tmp_path, "s.json", {"ring": "Zmod:6", "entries": [
        ["1", "2", "3"], ["0", "1", "0"], ["0", "0", "1"]]})
    code, text = invoke("skew-from-completion", "--matrix", path, "--format", "json")
    assert code == 0
    assert json.loads(text)["outputs"]["V"]["entries"][0] == ["0", "1", "2", "3"]


def test_witt_commands(tmp_path):
    ring = parse_ring("Zmod:2")
    x = write(tmp_path, "x.json", io.matrix_to_json(psi(1, ring)))
    y = write(tmp_path, "y.json", {"ring": "Zmod:2", "entries": [["0", "1"], ["1", "0"]]})
    code, text = invoke("witt-search", "--x", x, "--y", y, "--depth", "1", "--format", "json")
    assert code == 0
    cert = write(tmp_path, "c.json", json.loads(text)["outputs"]["certificate"])
    assert invoke("witt-check", "--x", x, "--y", y, "--cert", cert)[0] == 0
    bad = write(tmp_path, "b.json", {"l": 0, "eps": {"ring": "Zmod:2", "size": 4,
                                                     "letters": [[1, 3, "1"]]}})
    assert invoke("witt-check", "--x", x, "--y", y, "--cert", bad)[0] == 1


def test_tangent_check_reports_failed_precondition(tmp_path):
    spec = "Q[x0,x1,x2]/(x0^2+x1^2+x2^2-1)"
    path = write(tmp_path, "t.json", {"ring": spec, "entries": [
        ["x0", "x1", "x2"], ["0", "1", "0"], ["0", "0", "1"]]})
    code, text = invoke("tangent-check", "--matrix", path, "--format", "json")
    report = json.loads(text)
    assert code == 1
    statuses = {c["name"]: c["status"] for c in report["checks"]}
    assert statuses["sigma completes (x0, x1, x2)"] == "fail"
    assert statuses["field tangent at samples"] == "pass"


def test_io_round_trip():
    ring = parse_ring("Q[x]/(x^2+1)")
    m = Matrix.parse(ring, [["x", "1/2"], ["0", "x+1"]])
    assert io.matrix_from_json(json.loads(io.dumps(io.matrix_to_json(m)))) == m
