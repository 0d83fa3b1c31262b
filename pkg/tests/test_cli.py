import io
import json

import pytest

from wassalg.cli import run


def _run(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err, stdin=io.StringIO(stdin) if stdin else None)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return {
        "a": write("a.json", {"space": "line", "atoms": [2], "weights": [1]}),
        "b": write("b.json", {"space": "line", "atoms": [5], "weights": [1]}),
        "c": write("c.json", {"space": {"dim": 2}, "atoms": [[0, 0], [3, 4]], "weights": ["1/3", "2/3"]}),
        "d": write("d.json", {"space": {"dim": 2}, "atoms": [[1, 0], [0, 2]], "weights": ["1/2", "1/2"]}),
        "bad": write("bad.json", {"space": "line", "atoms": [0, 1], "weights": [0.5, 0.4]}),
        "dir": tmp_path,
    }


def test_distance_of_diracs(files):
    assert _run("distance", "--p", "1", files["a"], files["b"]) == (0, "3\n", "")


def test_distance_formats(files):
    code, out, _ = _run("distance", "--p", "2", "--mode", "exact", "--format", "json", files["c"], files["d"])
    assert code == 0 and json.loads(out)["cost_p"] == "61/6"
    code, out, _ = _run("distance", "--p", "2", "--format", "csv", files["c"], files["d"])
    assert out.splitlines()[0] == "p,wp,cost_p"


def test_stdin_measure(files):
    code, out, _ = _run("distance", "-", files["b"], stdin='{"space": "line", "atoms": [1], "weights": [1]}')
    assert (code, out) == (0, "4\n")


def test_env_override(files, monkeypatch):
    monkeypatch.setenv("WASSALG_P", "2")
    code, out, _ = _run("distance", files["c"], files["d"])
    assert code == 0 and float(out) == pytest.approx((61 / 6) ** 0.5)


def test_usage_errors(files):
    assert _run("distance", "--p", "1.5", "--mode", "exact", files["a"], files["b"])[0] == 2
    assert _run("distance", "--p", "0.5", files["a"], files["b"])[0] == 2
    assert _run("frobnicate")[0] == 2
    assert _run("laws", "--trials", "0")[0] == 2


def test_validate(files):
    code, _, err = _run("validate", files["bad"])
    assert code == 1 and "sum" in err
    assert _run("validate", files["c"])[0] == 0
    assert _run("validate", str(files["dir"] / "missing.json"))[0] == 1


@pytest.mark.parametrize("mode", ["exact", "float"])
def test_coupling_revalidates(files, mode):
    out = str(files["dir"] / f"cp-{mode}.csv")
    assert _run("coupling", "--p", "2", "--mode", mode, "--out", out, files["c"], files["d"])[0] == 0
    code, text, _ = _run("validate", "--mode", mode, "--coupling", out, files["c"], files["d"])
    assert code == 0 and text.startswith("ok")


def test_coupling_json(files):
    code, out, _ = _run("coupling", "--p", "1", "--mode", "exact", "--format", "json", files["c"], files["d"])
    doc = json.loads(out)
    assert code == 0 and len(doc["matrix"]) == 2


def test_laws_report():
    code, out, _ = _run("laws", "--set", "barycentric", "--trials", "1000", "--p", "2", "--seed", "7")
    assert code == 0 and out.rstrip().endswith("0 with failures")
    code, out, _ = _run("laws", "--set", "metric", "--trials", "20", "--p", "1,2", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("law,trials,failures")


def test_output_is_deterministic(files):
    a = _run("laws", "--set", "wasserstein", "--trials", "30", "--p", "1,2", "--seed", "5")
    b = _run("laws", "--set", "wasserstein", "--trials", "30", "--p", "1,2", "--seed", "5")
    assert a == b
    assert _run("coupling", files["c"], files["d"]) == _run("coupling", files["c"], files["d"])


def test_experiments():
    code, out, _ = _run("experiment", "dirichlet-cauchy", "--p", "1", "--schedule", "2,4", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "p,q,m,2m,wp" and len(out.splitlines()) == 3
    code, out, _ = _run("experiment", "moment-growth", "--m-max", "3")
    assert code == 0 and "last increment" in out
    code, out, _ = _run("experiment", "density", "--k", "3", "--format", "csv")
    assert code == 0 and out.splitlines()[1].endswith(",0")
    code, out, _ = _run("experiment", "moment-convergence", "--schedule", "2,4,8,16,32,64")
    assert code == 0 and "moments-converge" in out
