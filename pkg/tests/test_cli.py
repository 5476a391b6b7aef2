import json
import subprocess
import sys


from autostack import zoo
from autostack.cli import main
from autostack.serialization import read_json, save_structure, write_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve(capsys):
    assert run(capsys, "solve", "--structure", "zoo:Z2", "--word", "b a") == (0, "a b\n", "")
    code, out, _ = run(capsys, "solve", "--structure", "zoo:Z2", "--word", "a a^-1")
    assert code == 0 and out == "ε\n"


def test_solve_trace_and_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "solve", "--structure", "zoo:Z2", "--word", "b a", "--trace")
    data = json.loads(out)
    assert code == 0 and data["normal_form"] == ["a", "b"]
    assert data["trace"][0]["kind"] == "flow"
    code, out, _ = run(capsys, "solve", "--structure", "zoo:F2", "--word", "a b b^-1", "--trace")
    assert out.splitlines()[0] == "a"
    assert "cancel" in out


def test_trivial(capsys):
    code, out, _ = run(capsys, "trivial", "--structure", "zoo:trefoil", "--word", "x x y^-1 y^-1 y^-1")
    assert (code, out) == (0, "yes\n")
    code, out, _ = run(capsys, "trivial", "--structure", "zoo:trefoil", "--word", "x y")
    assert (code, out) == (1, "no\n")


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--structure", "zoo:Z2", "--oracle", "zoo:Z2",
                       "--radius", "6", "--nf-length", "8")
    assert code == 0 and out.startswith("verification of Z2: PASS")
    code, out, _ = run(capsys, "verify", "--structure", "zoo:dihedral", "--oracle", "zoo:dihedral",
                       "--radius", "3", "--nf-length", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["checks"][-1]["name"] == "respecting subgroup"


def test_verify_failure_exit_code(capsys):
    # Z² normal forms checked against the free group on the same letters
    code, out, _ = run(capsys, "verify", "--structure", "zoo:Z2", "--oracle", "zoo:F2",
                       "--radius", "2", "--nf-length", "3", "--format", "json")
    data = json.loads(out)
    assert code == 1 and not data["ok"]
    assert any(c["counterexamples"] for c in data["checks"])


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "solve", "--structure", "zoo:Z2", "--word", "q")
    assert code == 2 and err.startswith("error:")
    assert run(capsys, "solve", "--structure", "zoo:nothing", "--word", "a")[0] == 2
    assert run(capsys, "solve", "--structure", str(tmp_path / "missing.json"), "--word", "a")[0] == 2
    assert run(capsys, "verify", "--structure", "zoo:Z2", "--oracle", "Z2")[0] == 2
    assert run(capsys, "verify", "--structure", "zoo:Z2", "--oracle", "zoo:ZZ")[0] == 2
    bad = tmp_path / "spec.json"
    bad.write_text('{"type": "unknown"}')
    assert run(capsys, "build", "--spec", str(bad), "--out", str(tmp_path / "o.json"))[0] == 2


def test_step_limit_exit_code(capsys):
    code, _, err = run(capsys, "solve", "--structure", "zoo:Z2", "--word", "b b b a a a", "--step-limit", "2")
    assert code == 3 and "error" in err


def test_build_enumerate_and_dot(capsys, tmp_path):
    save_structure(zoo.free_structure(["a"]), str(tmp_path / "Za.json"))
    action = [[i, a, list(h), j] for (i, a), (h, j) in zoo.DIHEDRAL_ACTION.items()]
    spec = {"type": "findex", "subgroup": "Za.json", "alphabet": ["a", "a^-1", "b", "b^-1"],
            "transversal": [[], ["b"]], "coset_action": action}
    write_json(spec, str(tmp_path / "spec.json"))
    out_path = str(tmp_path / "dihedral.json")
    code, out, _ = run(capsys, "build", "--spec", str(tmp_path / "spec.json"), "--out", out_path)
    assert code == 0 and out == f"wrote {out_path}\n"
    assert read_json(out_path)["rebuild"]["spec"]["type"] == "findex"
    code, out, _ = run(capsys, "enumerate", "--structure", out_path, "--max-len", "2")
    forms = out.splitlines()
    assert code == 0 and forms[0] == "ε" and len(forms) == 8 and len(set(forms)) == 8
    dot = str(tmp_path / "nf.dot")
    code, out, _ = run(capsys, "export-dot", "--automaton", out_path, "--out", dot)
    assert code == 0
    assert open(dot).read().startswith("digraph")


def test_enumerate_is_shortlex(capsys):
    code, out, _ = run(capsys, "--format", "json", "enumerate", "--structure", "zoo:Z2", "--max-len", "2")
    forms = json.loads(out)
    letters = ["a", "a^-1", "b", "b^-1"]
    keys = [(len(w), [letters.index(x) for x in w]) for w in forms]
    assert keys == sorted(keys) and len(forms) == 13


def test_graph_check(capsys):
    code, out, _ = run(capsys, "graph-check", "--structure", "zoo:Z2", "--max-len", "4")
    assert code == 0 and out.startswith("checked ") and "agree" in out
    code, out, _ = run(capsys, "--format", "json", "graph-check", "--structure", "zoo:ZZ", "--max-len", "3")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["checked"] > 0


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "autostack.cli", "--format", "json", "verify", "--structure", "zoo:klein_hnn",
           "--oracle", "zoo:klein_hnn", "--radius", "3", "--nf-length", "4"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout
