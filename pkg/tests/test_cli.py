import json

import pytest

from dunkl.cli import run


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poly_rank_one(capsys):
    code, out, _ = _run(capsys, "poly", "E", "--type", "A1", "--k", "symbolic", "--weight", "-1")
    assert code == 0
    d = json.loads(out)
    assert d["schema"] == 1
    assert {(t["weight"][0], t["coef"]) for t in d["terms"]} == {("-1", "1"), ("1", "k/(k+1)")}


def test_deterministic_output(capsys):
    args = ("kz", "flatness", "--type", "A2", "--k", "0.3", "--seed", "4")
    _, a, _ = _run(capsys, *args)
    _, b, _ = _run(capsys, *args)
    assert a == b


def test_spectral_residual_contains_rho(capsys):
    code, out, _ = _run(capsys, "spectral", "residual", "--type", "A2", "--k", "-1/4")
    assert code == 0
    centers = [tuple(s["center"]) for s in json.loads(out)["subspaces"] if s["distinguished"]]
    assert ("-1/4", "-1/4") in centers


def test_exit_codes(capsys, tmp_path):
    assert _run(capsys, "poly", "E", "--type", "A1")[0] == 1
    assert _run(capsys, "poly", "E", "--type", "Z7", "--weight", "1")[0] == 1
    assert _run(capsys, "norm", "--type", "A2", "--k", "1", "--weight", "-1,0")[0] == 2
    assert _run(capsys, "kz", "flatness", "--type", "A2", "--tol", "1e-40")[0] == 3
    target = tmp_path / "o.json"
    assert _run(capsys, "check", "all", "--type", "A2", "--max-weight", "2", "--k-int", "1", "--out", str(target))[0] == 0
    assert json.loads(target.read_text())["passed"]


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("CHEREDNIK_THREADS", "many")
    assert _run(capsys, "check", "all", "--type", "A1")[0] == 1
    monkeypatch.setenv("CHEREDNIK_THREADS", "3")
    assert _run(capsys, "check", "all", "--type", "A1")[0] == 0


@pytest.mark.parametrize("argv", [
    ("norm", "--type", "B2", "--k", "2", "--weight", "1,0"),
    ("shift", "minus", "--type", "A2", "--weight", "1,0"),
    ("jack", "--partition", "3,1", "--n", "3"),
    ("hypergeom", "eval", "--type", "A2", "--k", "0.3", "--lambda", "0.4,0.7", "--point", "0.9,1.1"),
    ("hypergeom", "G", "--type", "A1", "--k", "0.3", "--lambda", "0.7", "--point", "0.6"),
    ("spectral", "sigma", "--type", "B2", "--k", "0.5", "--lambda", "0.3,0.17"),
    ("spectral", "integrable", "--type", "G2", "--k", "-1/10,-1/10"),
    ("spectral", "plancherel", "--type", "A1", "--k", "-1/4"),
])
def test_commands_succeed(capsys, argv):
    code, out, err = _run(capsys, *argv)
    assert code == 0, err
    assert json.loads(out)["schema"] == 1
