import json
import subprocess
import sys

import pytest

from smallcuts.cli import main
from smallcuts.graph import write_graph
from smallcuts.report import read_cuts_csv, read_experiment_csv, read_similarity_csv

from conftest import planted_k8, random_graph, unit_graph

K3_TEXT = "3\n0 1 1\n0 2 2\n1 2 3\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_mincut_k3(capsys, files):
    code, out, _ = run(capsys, "mincut", files("k3.txt", K3_TEXT))
    assert code == 0
    assert out == "cut_bits,weight\n011,3\n"
    code, out, _ = run(capsys, "mincut", files("k3.txt", K3_TEXT), "--format", "json")
    assert json.loads(out) == {"weight": 3, "cut": "011"}


def test_enumerate_exact_k3(capsys, files):
    code, out, _ = run(capsys, "enumerate", files("k3.txt", K3_TEXT), "--rho", "1.5", "--exact")
    assert code == 0
    assert sorted(read_cuts_csv(out)) == [("010", 4.0), ("011", 3.0)]


def test_enumerate_monte_carlo_json(capsys, files):
    path = files("g.txt", write_graph(random_graph(10, 1)))
    code, out, _ = run(capsys, "enumerate", path, "--rho", "1.3", "--format", "json",
                       "--repetitions", "5", "--seed", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 10 and doc["cuts"]
    assert all(c["weight"] <= 1.3 * doc["lambda"] * (1 + 1e-9) for c in doc["cuts"])


def test_similarity_identical_files(capsys, files):
    path = files("k4.txt", write_graph(unit_graph(4)))
    code, out, _ = run(capsys, "similarity", path, path, "--exact", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["rho_star"] == 1.0
    first = doc["rows"][0]
    assert first["rho"] == 1.0 and first["intersection"] == first["k"] == first["l"] == 4


def test_similarity_csv(capsys, files):
    a = files("a.txt", write_graph(random_graph(8, 1)))
    b = files("b.txt", write_graph(random_graph(8, 2)))
    code, out, _ = run(capsys, "similarity", a, b, "--rho-max", "2")
    assert code == 0
    rows = read_similarity_csv(out)
    assert rows[0]["rho"] == 1.0 and rows[-1]["rho"] <= 2.0 * (1 + 1e-9)


def test_predict_strategies(capsys, files):
    paths = [files(f"g{i}.txt", write_graph(planted_k8(i))) for i in range(3)]
    for strategy in ("average", "first-intersection", "best-similarity", "optimum"):
        code, out, _ = run(capsys, "predict", *paths, "--strategy", strategy)
        assert code == 0
        (row,) = read_experiment_csv(out)
        assert not row["failed"]
    code, out, _ = run(capsys, "predict", *paths, "--strategy", "best-similarity")
    assert read_experiment_csv(out)[0]["cut_bits"] == "01100000"


def test_predict_failure_exit_code(capsys, files):
    g1 = files("g1.txt", write_graph(planted_k8(1, mask=0b00000110)))
    g2 = files("g2.txt", write_graph(planted_k8(2, mask=0b00011000)))
    code, out, err = run(capsys, "predict", g1, g2, g1, "--strategy", "first-intersection",
                         "--exact")
    assert code == 2 and out == ""
    doc = json.loads(err)
    assert doc["error"] == "strategy-failed" and doc["diagnostics"]["failed"]


@pytest.mark.parametrize("text", ["3\n0 1 -4\n", "x\n", "3\n0 5 1\n"])
def test_bad_graph_exit_code(capsys, files, text):
    code, out, err = run(capsys, "mincut", files("bad.txt", text))
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "input"


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "mincut", tmp_path / "nope.txt")
    assert code == 1 and "nope.txt" in json.loads(err)["message"]


def test_log_weights(capsys, files):
    code, out, _ = run(capsys, "mincut", files("k3.txt", K3_TEXT), "--log-weights")
    assert code == 0
    assert out.splitlines()[1].startswith("011,")


def test_experiment_outputs(capsys, files, tmp_path):
    spec = files("spec.json", json.dumps({"kind": "uniform-random", "n": 8,
                                          "weight_range": [0, 255], "seed": 1, "triples": 4}))
    out_path = tmp_path / "rows.csv"
    agg_path = tmp_path / "agg.csv"
    code, _, _ = run(capsys, "experiment", "--spec", spec, "--repetitions", "4",
                     "--out", out_path, "--aggregate-out", agg_path)
    assert code == 0
    rows = read_experiment_csv(out_path.read_text())
    assert len(rows) == 16
    assert agg_path.read_text().startswith("strategy,sum_all,pct_of_opt_all")


def test_experiment_bad_spec(capsys, files):
    spec = files("spec.json", json.dumps({"kind": "nope", "n": 8, "weight_range": [0, 1]}))
    code, _, err = run(capsys, "experiment", "--spec", spec)
    assert code == 1 and json.loads(err)["error"] == "input"
    code, _, _ = run(capsys, "experiment", "--spec", files("s2.json", "{not json"))
    assert code == 1


def test_module_entry_point(files):
    path = files("k3.txt", K3_TEXT)
    proc = subprocess.run([sys.executable, "-m", "smallcuts", "mincut", path],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "cut_bits,weight\n011,3\n"
