import json
import subprocess
import sys

import pytest

from liectrl import cli
from liectrl.cli import EXIT_CAP, EXIT_INVALID, EXIT_NUMERIC, EXIT_OK, main, parse_system, render_report, write_system
from liectrl.decide import MODEL_FAMILIES, ModelSpec, assess, make_model, split_structure_example
from liectrl.fermion import hubbard_spinful
from liectrl.matrep import NumericalInconsistency
from liectrl.pauli import PauliExpr, parse_expr
from liectrl.system import ControlSystem


def family_size(fam):
    if fam.startswith(("example", "appendix")):
        return None
    return 1 if fam.startswith("ising") else 3


@pytest.fixture
def system_file(tmp_path):
    def write(system, name="system.json"):
        path = tmp_path / name
        write_system(system, str(path))
        return str(path)

    return write


@pytest.mark.parametrize("fam", MODEL_FAMILIES)
def test_round_trip_models(fam, system_file):
    system = make_model(ModelSpec(fam, family_size(fam)))
    assert parse_system(system_file(system)) == system


@pytest.mark.parametrize("system", [split_structure_example(), hubbard_spinful(2)])
def test_round_trip_other_systems(system, system_file):
    assert parse_system(system_file(system)) == system


def test_uncontrolled_system_is_valid(tmp_path):
    path = tmp_path / "drift.json"
    path.write_text(json.dumps({"n": 2, "drift": [{"coeff": "1", "pauli": "ZZ"}], "controls": []}))
    s = parse_system(path)
    assert s.controls == () and s.drift == parse_expr("ZZ")


@pytest.mark.parametrize(
    "doc",
    [
        {"n": 2, "drift": [{"coeff": "1/0", "pauli": "ZZ"}], "controls": []},
        {"n": 2, "drift": [{"coeff": "1", "pauli": "ZQ"}], "controls": []},
        {"n": 2, "drift": [{"coeff": "1", "pauli": "ZZZ"}], "controls": []},
        {"n": 2, "drift": [], "controls": []},
        {"n": 2, "drift": [], "controls": [], "extra": 1},
        {"drift": [], "controls": []},
    ],
)
def test_invalid_documents_exit_2(doc, tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert main(["closure", str(path)]) == EXIT_INVALID
    assert "invalid input" in capsys.readouterr().err


def test_unreadable_and_malformed(tmp_path, capsys):
    assert main(["closure", str(tmp_path / "missing.json")]) == EXIT_INVALID
    bad = tmp_path / "broken.json"
    bad.write_text("{")
    assert main(["closure", str(bad)]) == EXIT_INVALID
    assert "line 1" in capsys.readouterr().err


def test_model_then_closure(tmp_path, capsys):
    out = tmp_path / "m.json"
    assert main(["model", "xx-one-end", "--n", "3", "-o", str(out)]) == EXIT_OK
    assert main(["closure", str(out), "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["dim"] == 21 and data["closed"]


def test_assess_text_and_json(system_file, tmp_path, capsys):
    path = system_file(make_model(ModelSpec("xx-first-two-sites", 2)))
    report = tmp_path / "r.json"
    assert main(["assess", path, "--json", str(report)]) == EXIT_OK
    text = capsys.readouterr().out
    assert "verdict: fully controllable" in text
    assert json.loads(report.read_text())["fully_controllable"] is True


def test_report_rendering():
    sp = render_report(assess(make_model(ModelSpec("appendixA-zzz"))))
    assert "pure-state controllable" in sp
    ex1 = render_report(assess(make_model(ModelSpec("example-ex1"))))
    assert "condition (2) fails" in ex1 and "verdict: not fully controllable" in ex1
    js = render_report(assess(make_model(ModelSpec("xx-one-end", 2))), "json")
    assert json.loads(js)["closure_dim"] == 10
    with pytest.raises(ValueError):
        render_report(assess(make_model(ModelSpec("xx-one-end", 2))), "xml")


def test_symmetry_form_graph(system_file, tmp_path, capsys):
    path = system_file(make_model(ModelSpec("xx-one-end", 2)))
    assert main(["symmetry", path, "--tensor-square", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["centraliser_dim"] == 0 and data["tensor_square_commutant_dim"] == 3
    form_out = tmp_path / "s.json"
    assert main(["form", path, "--out", str(form_out)]) == EXIT_OK
    assert "Symplectic" in capsys.readouterr().out
    assert len(json.loads(form_out.read_text())["re"]) == 4
    dot = tmp_path / "g.dot"
    assert main(["graph", path, "--dot", str(dot), "--closure"]) == EXIT_OK
    assert dot.read_text().startswith("graph")
    assert "weakly connected: True" in capsys.readouterr().out


def test_graph_with_dims(system_file, capsys):
    path = system_file(split_structure_example())
    assert main(["graph", path, "--dims", "4,2", "--closure"]) == EXIT_OK
    assert "connected (prime refinement): False" in capsys.readouterr().out


def test_catalog_commands(tmp_path, capsys):
    assert main(["catalog", "dim", "--algebra", "e7", "--weight", "0,0,0,0,0,0,1"]) == EXIT_OK
    assert "dim 56" in capsys.readouterr().out
    assert main(["catalog", "irreps", "--max-dim", "7", "--csv"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("dim,family,rank,weight,type,orbit")
    assert main(["catalog", "lattice", "--N", "7"]) == EXIT_OK
    assert "su(2) (6) [o]  <  g2 (1,0) [o]" in capsys.readouterr().out
    dot, csv_path = tmp_path / "l.dot", tmp_path / "l.csv"
    assert main(["catalog", "--max-dim", "8", "--dot", str(dot), "--csv", str(csv_path)]) == EXIT_OK
    assert dot.read_text().count("digraph") == 7
    assert csv_path.read_bytes().startswith(b"dim,family,rank,weight,type,parents\r\n")
    assert main(["catalog", "dim", "--algebra", "su(3)", "--weight", "1"]) == EXIT_INVALID


def test_fermion_command(tmp_path):
    out = tmp_path / "f.json"
    assert main(["fermion", "quadratic", "--d", "2", "-o", str(out)]) == EXIT_OK
    assert parse_system(out).n == 2
    assert main(["fermion", "hubbard", "--d", "2", "--t", "0"]) == EXIT_INVALID


def test_simulate(system_file, capsys):
    a = system_file(make_model(ModelSpec("xx-two-ends", 3)), "a.json")
    b = system_file(make_model(ModelSpec("xx-one-end", 3)), "b.json")
    assert main(["simulate", a, b, "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["relation"] == "simulates"


def test_resource_cap_exit_3(system_file, capsys):
    path = system_file(make_model(ModelSpec("xx-one-end", 3)))
    assert main(["symmetry", path, "--tensor-square", "--cap", "4"]) == EXIT_CAP
    assert "resource cap" in capsys.readouterr().err
    assert main(["catalog", "lattice", "--N", "300"]) == EXIT_CAP


def test_numerical_inconsistency_exit_4(system_file, monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise NumericalInconsistency("forced")

    monkeypatch.setattr(cli, "classify_form", broken)
    path = system_file(make_model(ModelSpec("xx-one-end", 2)))
    assert main(["form", path]) == EXIT_NUMERIC
    assert "numerical inconsistency" in capsys.readouterr().err


def test_seed_does_not_change_results(system_file, capsys):
    path = system_file(make_model(ModelSpec("xx-one-end", 3)))
    outputs = []
    for seed in ("0", "7"):
        assert main(["assess", path, "--seed", seed, "--format", "json"]) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_console_script_entry_point(system_file):
    path = system_file(ControlSystem(1, PauliExpr.term("Z"), (PauliExpr.term("X"),)))
    proc = subprocess.run([sys.executable, "-m", "liectrl.cli", "closure", path], capture_output=True, text=True)
    assert proc.returncode == 0 and "closure dim: 3" in proc.stdout
