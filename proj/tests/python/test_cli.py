# Copyright 2026 The magicsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import csv
import io
import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

CLI = os.environ.get("MAGICSIM_CLI", "magicsim")
ROOT = pathlib.Path(os.environ.get("MAGICSIM_ROOT", pathlib.Path(__file__).resolve().parents[2]))
SCHEMA = ROOT / "schema"
PROBLEMS = ROOT / "problems"


def schema(name):
    return json.loads((SCHEMA / f"{name}.schema.json").read_text())


def run(*args, env=None, rc=0):
    p = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=env)
    assert p.returncode == rc, p.stderr
    return p


def run_json(*args, **kw):
    return json.loads(run(*args, **kw).stdout)


@pytest.mark.parametrize("path", sorted(PROBLEMS.glob("*.json")), ids=lambda p: p.name)
def test_problem_files_match_schema(path):
    jsonschema.validate(json.loads(path.read_text()), schema("problem"))


@pytest.mark.parametrize("args,name", [
    (["estimate", "--input", PROBLEMS / "h_identity_zero.json"], "estimate"),
    (["estimate", "--input", PROBLEMS / "explicit_channel.json"], "estimate"),
    (["sample", "--input", PROBLEMS / "noisy_h_pair_sample.json", "--samples", 20], "sample"),
    (["sample", "--input", PROBLEMS / "noisy_h_pair_sample.json", "--samples", 5, "--timing"], "sample"),
    (["constrained", "--input", PROBLEMS / "h_identity_zero.json"], "constrained"),
    (["monotone", "--state", "H", "--copies", 3, "--scaling", "--lp", "--format", "json"], "monotone"),
    (["monotone", "--state", "H", "--state", "0.1,0.2,0.3", "--format", "json"], "monotone"),
    (["distill", "--target", "F", "--sweep", "alpha", "--grid", "0.6,0.9", "--format", "json"], "distill"),
    (["distill", "--target", "H", "--alpha", "0.9", "--m", 3, "--epsilon", 1e-4, "--format", "json"], "distill"),
    (["bench", "--samples", 2000], "bench"),
    (["selftest"], "selftest"),
])
def test_json_outputs_validate(args, name):
    jsonschema.validate(run_json(*args), schema(name))


def test_monotone_ten_copies_of_h():
    rows = list(csv.DictReader(io.StringIO(run("monotone", "--state", "H", "--copies", 10).stdout)))
    assert len(rows) == 1
    assert abs(float(rows[0]["log2_lambda_plus"]) - 2.28443) < 5e-5
    assert abs(float(rows[0]["lambda_plus"]) - 2 ** 2.28443) < 1e-3


def test_csv_layout():
    text = run("estimate", "--input", PROBLEMS / "h_identity_zero.json", "--format", "csv").stdout
    lines = text.splitlines()
    assert len(lines) == 2 and lines[0].startswith("subcommand,seed,mu_hat")
    assert ";" not in text and "0." in lines[1]


@pytest.mark.parametrize("sub", ["estimate", "sample", "constrained"])
def test_byte_identical_outputs(sub, tmp_path):
    src = "noisy_h_pair_sample.json" if sub == "sample" else "t_gadget.json"
    if sub == "constrained":
        src = "h_identity_zero.json"
    outs = []
    for workers in (1, 3):
        out = tmp_path / f"{workers}.json"
        run(sub, "--input", PROBLEMS / src, "--seed", 99, "--workers", workers, "--output", out)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_workers_env_fallback():
    env = dict(os.environ, MAGICSIM_WORKERS="2")
    a = run("estimate", "--input", PROBLEMS / "t_gadget.json", env=env).stdout
    b = run("estimate", "--input", PROBLEMS / "t_gadget.json").stdout
    assert a == b
    bench = run_json("bench", "--samples", 1000, env=env)
    assert bench["workers"] == 2


def test_seed_surfaces_and_changes_output():
    a = run_json("estimate", "--input", PROBLEMS / "h_identity_zero.json", "--seed", 1)
    b = run_json("estimate", "--input", PROBLEMS / "h_identity_zero.json", "--seed", 2)
    assert a["seed"] == 1 and b["seed"] == 2 and a["mu_hat"] != b["mu_hat"]


@pytest.mark.parametrize("doc,path", [
    ({"state": {"product": ["H"]}, "measurement": {"bits": "0"}, "extra": 1}, "/extra"),
    ({"state": {"product": ["H"]}, "measurement": {"pauli": "XX"}}, "/measurement/pauli"),
    ({"state": {"product": ["H"]}, "measurement": {"bits": "0"}, "params": {"epsilon": "big"}}, "/params/epsilon"),
    ({"state": {"product": ["H", "0"]}, "circuit": [{"type": "t_gadget", "qubits": [0, 5]}], "measurement": {"bits": "0"}},
     "/circuit/0/qubits/1"),
])
def test_validation_diagnostics(tmp_path, doc, path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    p = run("estimate", "--input", f, rc=2)
    diag = json.loads(p.stderr)
    jsonschema.validate(diag, schema("error"))
    assert diag["error"]["kind"] == "validation" and diag["error"]["path"] == path


def test_malformed_json_and_usage_errors(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    jsonschema.validate(json.loads(run("estimate", "--input", f, rc=2).stderr), schema("error"))
    jsonschema.validate(json.loads(run("estimate", "--nope", rc=2).stderr), schema("error"))
    jsonschema.validate(json.loads(run("monotone", "--state", "H", "--format", "xml", rc=2).stderr), schema("error"))
    jsonschema.validate(json.loads(run("estimate", "--input", tmp_path / "missing.json", rc=3).stderr), schema("error"))
