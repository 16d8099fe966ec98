import shutil
from pathlib import Path

import pytest

from graphbu.cli import EXIT_FAILS, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK, main

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
INPUTS = ROOT / "inputs"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_model_star_y(capsys):
    code, out, _ = run(["model", CORPUS / "star_y.graph"], capsys)
    assert code == EXIT_OK
    ud2 = out.split("complex: UD2")[1]
    assert "critical: dim0=1, dim1=1" in ud2
    assert "critical1: {2,(1,3)}" in ud2


def test_model_interval(tmp_path, capsys):
    path = tmp_path / "interval.graph"
    path.write_text("graph 3\nv 0: 1\nv 1: 0 2\nv 2: 1\n")
    code, out, _ = run(["model", path], capsys)
    assert code == EXIT_OK
    assert "D2 disconnected, 2 components" in out


def test_model_malformed(tmp_path, capsys):
    path = tmp_path / "bad.graph"
    path.write_text("graph 2\nv 0: 1\nv 1: 7\n")
    code, _, err = run(["model", path], capsys)
    assert code == EXIT_INPUT
    assert "line" in err
    code, _, _ = run(["model", tmp_path / "missing.graph"], capsys)
    assert code == EXIT_INPUT


def test_machine_format(capsys):
    code, out, _ = run(["model", CORPUS / "k4.graph", "--format", "machine"], capsys)
    assert code == EXIT_OK
    assert all("=" in line and ": " not in line.split("=")[0] for line in out.splitlines())


def test_map_examples(capsys):
    code, out, _ = run(["map", CORPUS / "k4.graph", "p1", "((0,2),1)"], capsys)
    assert code == EXIT_OK and "result: z1" in out
    _, out, _ = run(["map", CORPUS / "star_y.graph", "theta", "{2,(1,3)}"], capsys)
    assert "result: 1" in out
    _, out, _ = run(["map", CORPUS / "k4.graph", "iota", ""], capsys)
    assert "result: 1" in out
    _, out, _ = run(["map", CORPUS / "star_y.graph", "rewrite", "sigma^2"], capsys)
    assert "result: ((1,3),2)" in out


def test_map_lift_swaps_sheets(capsys):
    code, out, _ = run(["map", CORPUS / "star_y.graph", "lift", "{2,(1,3)}"], capsys)
    assert code == EXIT_OK
    assert "lift end: (1,0)" in out and "swaps sheets: yes" in out


def test_map_unknown_generator(capsys):
    code, _, err = run(["map", CORPUS / "k4.graph", "iota", "(1,(0,4))"], capsys)
    assert code == EXIT_INPUT
    assert "did you mean" in err


def test_map_with_tree_override(capsys):
    code, out, _ = run(["map", CORPUS / "k4.graph", "p1", "((0,2),1)", "--root", "0", "--tree", "0-1,1-2,2-3"], capsys)
    assert code == EXIT_OK and "result: z1" in out
    code, _, err = run(["model", CORPUS / "k4.graph", "--tree", "0-1,1-2"], capsys)
    assert code == EXIT_INPUT


def test_decide_circle(capsys):
    gamma, circle = INPUTS / "antipodal_circle.graph", INPUTS / "circle.graph"
    code, out, _ = run(["decide", gamma, circle, INPUTS / "class_degree3.txt"], capsys)
    assert code == EXIT_FAILS and "decision: fails" in out
    code, out, _ = run(["decide", gamma, circle, INPUTS / "class_degree2.txt"], capsys)
    assert code == EXIT_OK and "decision: holds" in out


def test_decide_general_certificate(capsys):
    code, out, _ = run(["decide", INPUTS / "antipodal_circle.graph", INPUTS / "k4.graph", INPUTS / "class_k4.txt"], capsys)
    assert code == EXIT_FAILS
    assert "verified: yes" in out and "FAIL" not in out
    code, out, _ = run(["decide", INPUTS / "multi_edge_m1.graph", INPUTS / "k4.graph", INPUTS / "class_k4_m1.txt"], capsys)
    assert code == EXIT_FAILS and "psi(c1)" in out


def test_decide_input_errors(tmp_path, capsys):
    cls = tmp_path / "cls.txt"
    cls.write_text("z1\nz2\n")
    code, _, err = run(["decide", INPUTS / "antipodal_circle.graph", INPUTS / "k4.graph", cls], capsys)
    assert code == EXIT_INPUT and "2m+1" in err
    fixed = tmp_path / "fixed.graph"
    fixed.write_text("graph 4\nv 0: 1 3\nv 1: 2 0\nv 2: 3 1\nv 3: 0 2\ntau v 0 0\ntau v 1 3\n")
    code, _, err = run(["decide", fixed, INPUTS / "k4.graph", INPUTS / "class_k4.txt"], capsys)
    assert code == EXIT_INPUT


def test_verify_empty_dir(tmp_path, capsys):
    code, out, _ = run(["verify", tmp_path], capsys)
    assert code == EXIT_OK and "cases: 0" in out


def test_verify_detects_corrupted_golden(tmp_path, capsys):
    for name in ("star_y.graph", "star_y.census"):
        shutil.copy(CORPUS / name, tmp_path / name)
    census = tmp_path / "star_y.census"
    census.write_text(census.read_text().replace("dim1=1", "dim1=2"))
    code, out, _ = run(["verify", tmp_path, "--format", "machine"], capsys)
    assert code == EXIT_INTERNAL
    assert "star_y_golden-census=FAIL" in out
    assert "+critical: dim0=1, dim1=1, dim2=0" in out


def test_corpus_then_verify_is_deterministic(tmp_path, capsys):
    code, _, _ = run(["corpus", tmp_path, "--seed", "7"], capsys)
    assert code == EXIT_OK
    first = run(["verify", tmp_path, "--seed", "3", "--fuzz", "3", "--format", "machine"], capsys)
    second = run(["verify", tmp_path, "--seed", "3", "--fuzz", "3", "--format", "machine"], capsys)
    assert first == second
    assert first[0] == EXIT_OK


def test_no_command_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
