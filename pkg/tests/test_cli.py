import json
import subprocess
import sys

import numpy as np
import pytest

from qmorita.catalog import lattice, quantale
from qmorita.cli import main
from qmorita.errors import ParseError
from qmorita.io import Document, load_workspace, parse_workspace
from qmorita.modules import free_module
from qmorita.tensor import tensor

TWO = {
    "lattices": [{"name": "L2", "elements": ["0", "1"], "leq": [[1, 1], [0, 1]]},
                 {"name": "L4", "elements": ["0", "a", "b", "1"],
                  "leq": [[1, 1, 1, 1], [0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1]]}],
    "quantales": [{"name": "two", "carrier": "L2", "mult": [[0, 0], [0, 1]], "unit": 1}],
    "modules": [{"name": "reg", "quantale": "two", "carrier": "L2", "action": [[0, 0], [0, 1]]}],
    "matrices": [{"name": "id", "quantale": "two", "rows": ["x", "y"], "cols": ["x", "y"],
                  "entries": [[1, 0], [0, 1]]}],
}
NONASSOC = {
    "lattices": TWO["lattices"],
    "quantales": [{"name": "bad", "carrier": "L4", "unit": 3,
                   "mult": [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 3, 2], [0, 1, 2, 3]]}],
}


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def _run(args, capsys):
    code = main(args)
    return code, capsys.readouterr()


def test_check_valid_file(tmp_path, capsys):
    code, out = _run(["check", _write(tmp_path, "two.json", TWO), "--format", "json"], capsys)
    assert code == 0
    report = json.loads(out.out)
    assert report["verdict"] == "pass" and report["summary"]["pass"] == 5


def test_check_nonassociative_has_triple_witness(tmp_path, capsys):
    code, out = _run(["check", _write(tmp_path, "bad.json", NONASSOC), "--format", "json"], capsys)
    assert code == 1
    failed = [c for c in json.loads(out.out)["checks"] if c["status"] == "fail"]
    assert failed[0]["witness"]["error"] == "NotAssociative"
    assert len(failed[0]["witness"]["witness"]) == 3


@pytest.mark.parametrize("text", [
    "{not json",
    json.dumps({"lattices": [], "extra": []}),
    json.dumps({"quantales": [{"name": "q", "carrier": "nope", "mult": [[0]], "unit": 0}]}),
    json.dumps({"lattices": [{"name": "L", "elements": ["0", "1"], "leq": [[1, 1]]}]}),
    json.dumps({"lattices": [{"name": "L", "elements": ["0"], "leq": [[1]]},
                             {"name": "L", "elements": ["0"], "leq": [[1]]}]}),
])
def test_malformed_files_exit_2(tmp_path, capsys, text):
    code, out = _run(["check", _write(tmp_path, "bad.json", text)], capsys)
    assert code == 2 and "error" in out.err


def test_missing_file_exit_2(capsys):
    assert _run(["check", "/nonexistent/file.json"], capsys)[0] == 2


def test_usage_error_exit_2(capsys):
    assert _run(["frobnicate"], capsys)[0] == 2
    assert _run(["compute", "tensor", "2"], capsys)[0] == 2


def test_compute_tensor_with_two_is_identity(tmp_path, capsys):
    out_path = tmp_path / "t.json"
    code, _ = _run(["compute", "tensor", "2", "N5", "--emit", str(out_path)], capsys)
    assert code == 0
    ws = load_workspace(str(out_path))
    (name,) = ws.names("lattices")
    assert len(ws.lattice(name)) == len(lattice("N5"))


def test_compute_matq_size(capsys):
    code, out = _run(["compute", "matq", "2", "2", "--format", "json"], capsys)
    assert code == 0 and json.loads(out.out)["data"]["size"] == 16


def test_compute_over_budget_exit_3(capsys):
    code, out = _run(["compute", "matq", "C5", "4", "--format", "json"], capsys)
    assert code == 3
    report = json.loads(out.out)
    assert report["checks"][0]["status"] == "skipped" and report["verdict"] == "skipped"


def test_budget_flag_and_environment(capsys, monkeypatch):
    assert _run(["compute", "rel", "2", "--budget", "10"], capsys)[0] == 3
    monkeypatch.setenv("QF_BUDGET", "10")
    assert _run(["compute", "rel", "2"], capsys)[0] == 3
    monkeypatch.setenv("QF_BUDGET", "lots")
    assert _run(["compute", "rel", "2"], capsys)[0] == 2


@pytest.mark.parametrize("kind,args,size", [
    ("tensor", ["C3", "C3"], 6), ("hom", ["C3", "C3"], 6), ("matq", ["2", "2"], 16),
    ("eAe", ["Rel2", "{(0,0)}"], 2), ("free", ["C3", "2"], 9), ("rel", ["2"], 16), ("endo", ["M2"], 16),
])
def test_emitted_structures_round_trip(tmp_path, capsys, kind, args, size):
    path = tmp_path / f"{kind}.json"
    code, _ = _run(["compute", kind, *args, "--emit", str(path)], capsys)
    assert code == 0
    code, out = _run(["check", str(path), "--format", "json"], capsys)
    assert code == 0
    ws = load_workspace(str(path))
    kinds = "modules" if kind == "free" else ("lattices" if kind in ("tensor", "hom") else "quantales")
    name = ws.names(kinds)[-1]
    built = {"lattices": ws.lattice, "quantales": ws.quantale, "modules": ws.module}[kinds](name)
    assert len(built) == size


def test_round_trip_preserves_tables():
    Q = quantale("Mat2_2")
    doc = Document()
    doc.add_quantale(Q, "M")
    again = parse_workspace(doc.to_json()).quantale("M")
    assert np.array_equal(again.mult_array, Q.mult_array) and again.unit == Q.unit
    F = free_module(quantale("C3"), 2)
    doc = Document()
    doc.add_module(F, "F")
    back = parse_workspace(doc.to_json()).module("F")
    assert np.array_equal(back.action_array, F.action_array)
    T = tensor(lattice("M2"), lattice("C3")).lattice
    doc = Document()
    doc.add_lattice(T, "T")
    assert np.array_equal(parse_workspace(doc.to_json()).lattice("T").leq_matrix, T.leq_matrix)


def test_names_resolve_from_input_file(tmp_path, capsys):
    path = _write(tmp_path, "two.json", TWO)
    code, out = _run(["compute", "tensor", "L4", "L2", "--in", path, "--format", "json"], capsys)
    assert code == 0 and json.loads(out.out)["data"]["size"] == 4


def test_find_full_idempotents(capsys):
    code, out = _run(["morita", "find-full-idempotents", "2", "2", "--format", "json"], capsys)
    assert code == 0
    names = json.loads(out.out)["data"]["full_idempotents"]
    assert "[1 0; 0 1]" in names and "[1 0; 0 0]" in names


def test_verify_witness_elementary(capsys):
    code, out = _run(["morita", "verify-witness", "2", "2", "E11", "--format", "json"], capsys)
    report = json.loads(out.out)
    assert code == 0 and report["data"]["corner_isomorphic_to"] == "2"


def test_verify_witness_bad_matrix(capsys):
    assert _run(["morita", "verify-witness", "2", "2", "1,1;1"], capsys)[0] == 2
    assert _run(["morita", "verify-witness", "2", "2", "E31"], capsys)[0] == 2


def test_commutative_check(capsys):
    code, out = _run(["morita", "commutative-check", "2", "C3", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out.out)["data"]["conclusion"] == "not Morita equivalent at budget 4"


def test_census(capsys):
    code, out = _run(["morita", "census", "C3", "--format", "json"], capsys)
    assert code == 0 and json.loads(out.out)["data"]["census"]


def test_suites_known_and_unknown(capsys):
    assert _run(["suite", "prop-6-4"], capsys)[0] == 0
    code, out = _run(["suite", "nonexistent"], capsys)
    assert code == 2 and "unknown suite" in out.err


def test_json_reports_are_deterministic(capsys, tmp_path):
    path = tmp_path / "report.json"
    runs = []
    for _ in range(2):
        main(["morita", "find-full-idempotents", "2", "2", "--format", "json", "--out", str(path)])
        runs.append(path.read_bytes())
    assert runs[0] == runs[1]


def test_text_report_has_table_and_wall_time(capsys):
    code, out = _run(["compute", "rel", "2"], capsys)
    assert code == 0 and "compute rel" in out.out and "wall time" in out.out


def test_workspace_rejects_bad_entries():
    with pytest.raises(ParseError):
        parse_workspace(json.dumps({"lattices": [{"name": "L", "elements": [], "leq": []}]}))
    with pytest.raises(ParseError):
        parse_workspace(json.dumps({"lattices": [{"name": "L", "elements": ["0"], "leq": [[2]]}]}))


def test_module_entry_point():
    result = subprocess.run([sys.executable, "-m", "qmorita", "compute", "rel", "1", "--format", "json"],
                            capture_output=True, text=True, check=False)
    assert result.returncode == 0 and json.loads(result.stdout)["data"]["size"] == 2
