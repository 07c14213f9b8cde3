import json
import subprocess
import sys

import pytest

from reduction_engine.cli import EXIT_INVALID, EXIT_NOT_FOUND, EXIT_OK, main

SQRT2 = {
    "algebraics": [{"name": "r2", "minpoly": [-2, 0, 1]}],
    "set": {"a": "r2"},
    "constraints": {"custom": ["r2 - 1"]},
    "options": {"mode": "strict", "primes": "2:50"},
}
GAUSS = {"algebraics": [{"name": "i", "minpoly": [1, 0, 1]}], "constraints": {"custom": ["i"]}}


def write(tmp_path, doc, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def run_cli(args):
    out = args[args.index("-o") + 1] if "-o" in args else None
    code = main(args)
    return code, (json.loads(open(out).read()) if out and code != EXIT_INVALID else None)


def test_reduce_finds_seven(tmp_path):
    code, rep = run_cli(["reduce", "-i", write(tmp_path, SQRT2), "-o", str(tmp_path / "r.json")])
    assert code == EXIT_OK
    (m,) = rep["maps"]
    assert (m["p"], m["a"], m["verified"]) == (7, 3, True)
    assert rep["manifest"]["command"] == "reduce" and len(rep["manifest"]["input_digest"]) == 64


def test_reduce_not_found(tmp_path):
    code, rep = run_cli(["reduce", "-i", write(tmp_path, GAUSS), "--primes", "2:3", "-o", str(tmp_path / "r.json")])
    assert code == EXIT_NOT_FOUND and rep["maps"] == [] and rep["status"] == "not-found"


@pytest.mark.parametrize(
    "doc",
    [
        {"algebraics": [{"name": "r2", "minpoly": []}], "constraints": {"custom": ["r2"]}},
        {"algebraics": [{"name": "r2", "minpoly": [-2, 0, 2]}], "constraints": {"custom": ["r2"]}},
        {"algebraics": [{"name": "r2", "minpoly": [-2, 0, 1]}], "constraints": {"custom": ["r2 +"]}},
        {"algebraics": [{"name": "r2", "minpoly": [-2, 0, 1]}], "constraints": {"custom": ["r2^2 - 2"]}},
        "{not json",
    ],
)
def test_reduce_invalid(tmp_path, doc):
    assert main(["reduce", "-i", write(tmp_path, doc)]) == EXIT_INVALID


def test_reduce_missing_file(tmp_path):
    assert main(["reduce", "-i", str(tmp_path / "absent.json")]) == EXIT_INVALID


def test_density_examples(tmp_path):
    code, rep = run_cli(["density", "-f", "-2,0,1", "--bound", "1000", "-o", str(tmp_path / "d.json")])
    assert code == EXIT_OK
    assert set(rep["counts"]) == {"1,1", "2"} and rep["ramified"] == 1
    code, rep = run_cli(["density", "-f", "1,0,1", "--bound", "100", "-o", str(tmp_path / "g.json")])
    assert rep["counts"]["1,1"] == 11  # 5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97
    assert main(["density", "-f", "1,-2,1", "--bound", "100"]) == EXIT_INVALID


def test_density_predictions(tmp_path):
    code, rep = run_cli(["density", "-f", "-2,0,1", "--bound", "2000", "--predict", "1,1=1/2;2=1/2",
                         "-o", str(tmp_path / "d.json")])
    assert code == EXIT_OK and set(rep["deviation"]) == {"1,1", "2"}


def test_harness_examples(tmp_path):
    code, rep = run_cli(["harness", "matrix", "--size", "2", "--exhaustive", "-o", str(tmp_path / "m.json")])
    assert code == EXIT_OK
    (t,) = rep["trials"]
    assert t["image"]["agree"] == 16 == t["source"]["matrices"]
    code, rep = run_cli(["harness", "sumprod", "--size", "1", "--trials", "1", "-o", str(tmp_path / "s.json")])
    assert code == EXIT_OK and rep["aggregate"]["pass"] == 1
    code, rep = run_cli(["harness", "sl2", "--seed", "7", "--trials", "5", "-o", str(tmp_path / "l.json")])
    assert code == EXIT_OK and rep["aggregate"]["pass"] == 5


@pytest.mark.parametrize(
    "args",
    [
        ["harness", "knots"],
        ["harness", "sumprod", "--size", "0"],
        ["harness", "sumprod", "--primes", "9:3"],
        ["reduce"],
        ["frobnicate"],
        ["density", "-f", "x,y"],
    ],
)
def test_usage_errors(args):
    assert main(args) == EXIT_INVALID


def strip_manifest(text):
    doc = json.loads(text)
    doc.pop("manifest")
    return doc


def test_reports_byte_stable(tmp_path):
    problem = write(tmp_path, SQRT2)
    texts = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        main(["reduce", "-i", problem, "--max-maps", "3", "-o", str(out)])
        texts.append(out.read_text())
    assert strip_manifest(texts[0]) == strip_manifest(texts[1])
    a, b = (json.dumps(strip_manifest(t), sort_keys=True, indent=2) for t in texts)
    assert a.encode() == b.encode()
    for k in range(2):
        main(["harness", "distance", "--size", "4", "--trials", "3", "--seed", "4", "-o", str(tmp_path / f"h{k}.json")])
    h = [strip_manifest((tmp_path / f"h{k}.json").read_text()) for k in range(2)]
    assert h[0] == h[1]


def test_seed_from_environment(tmp_path):
    env_out, flag_out = tmp_path / "env.json", tmp_path / "flag.json"
    base = [sys.executable, "-m", "reduction_engine", "harness", "sumprod", "--size", "4", "--trials", "2"]
    subprocess.run(base + ["-o", str(env_out)], check=True, env={**_env(), "REDUCTION_ENGINE_SEED": "11"})
    subprocess.run(base + ["--seed", "11", "-o", str(flag_out)], check=True, env=_env())
    assert strip_manifest(env_out.read_text()) == strip_manifest(flag_out.read_text())
    assert json.loads(env_out.read_text())["config"]["seed"] == 11
    bad = subprocess.run(base, env={**_env(), "REDUCTION_ENGINE_SEED": "eleven"}, capture_output=True)
    assert bad.returncode == EXIT_INVALID


def _env():
    import os

    return {k: v for k, v in os.environ.items() if k != "REDUCTION_ENGINE_SEED"}
