"""End-to-end checks of the command-line interface (exit codes, file formats)."""

import csv
import json
import math
import os
import subprocess
import sys

import pytest

CLI = os.environ.get("RWLAB_CLI", "build/rwlab")

CONE = {
    "ambient": {"warping": {"kind": "constant", "a": 1.0}, "c": 0},
    "family": {"kind": "revolution", "zeta1": {"kind": "linear", "a": 2.0}, "zeta2": 0.0},
    "grid": {"u0": 0.5, "u1": 1.5, "nu": 64, "v0": 0.2, "v1": 1.2, "nv": 64},
    "columns": "extended",
}


def run(*args, cwd):
    return subprocess.run([CLI, *args], cwd=cwd, capture_output=True, text=True)


@pytest.fixture()
def config_path(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(CONE))
    return str(path)


def test_generate_64x64(tmp_path, config_path):
    r = run("generate", "--config", config_path, cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    with open(tmp_path / "mesh.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], rows[1:]
    assert header == ["u", "v", "t", "x", "y", "z", "theta", "h311", "h312", "h322",
                      "h411", "h412", "h422", "H3", "H4"]
    assert len(data) == 4096
    for row in data:
        assert all(math.isfinite(float(x)) for x in row)
    meta = json.loads((tmp_path / "mesh.meta.json").read_text())
    assert meta["schema_version"] == 1
    assert meta["family"] == "revolution"
    assert meta["rows"] == 4096


def test_generate_plane_2x2(tmp_path, config_path):
    r = run("generate", "--config", config_path,
            "--set", "family.kind=cylinder",
            "--set", 'family.x1={"kind":"linear","a":1.4142135623730951}',
            "--set", "family.x2=0.0",
            "--set", "grid.u0=-0.5", "--set", "grid.u1=0.5",
            "--set", "grid.v0=-0.5", "--set", "grid.v1=0.5",
            "--set", "grid.nu=2", "--set", "grid.nv=2",
            cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    with open(tmp_path / "mesh.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 4
    for row in rows:
        for col in ("h311", "h312", "h322", "h411", "h412", "h422"):
            assert abs(float(row[col])) < 1e-9


def test_generate_project(tmp_path, config_path):
    r = run("generate", "--config", config_path, "--project", "t,x,y",
            "--set", "columns=basic", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    header = open(tmp_path / "mesh.csv").readline().strip()
    assert header == "u,v,t,x,y"


def test_generate_degenerate_config(tmp_path, config_path):
    r = run("generate", "--config", config_path,
            "--set", "family.kind=minimal_cylinder",
            "--set", "family.c1=0.3", "--set", "family.c2=0.0", "--set", "family.c3=0.5",
            cwd=tmp_path)
    assert r.returncode == 2
    err = json.loads(r.stderr)
    assert "c3 < 0" in err["error"]
    assert err["type"] == "domain"


def test_check_pass_fail_and_empty(tmp_path, config_path):
    r = run("check", "--config", config_path, "--set", 'checks=["classa"]', cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    report = json.loads((tmp_path / "check.json").read_text())
    assert report["pass"] is True

    r = run("check", "--config", config_path,
            "--set", "family.kind=perturbed_cylinder",
            "--set", 'family.x1={"kind":"linear","a":1.2}', "--set", "family.x2=0.0",
            "--set", "grid.u0=-0.4", "--set", "grid.u1=0.4",
            "--set", "grid.v0=-0.4", "--set", "grid.v1=0.4",
            "--set", 'checks=["classa"]', cwd=tmp_path)
    assert r.returncode == 1
    report = json.loads((tmp_path / "check.json").read_text())
    assert report["pass"] is False
    worst = max(res["max"] for p in report["predicates"] for res in p["residuals"])
    assert worst > 1e-3

    r = run("check", "--config", config_path, "--set", "checks=[]", cwd=tmp_path)
    assert r.returncode == 0
    assert json.loads((tmp_path / "check.json").read_text())["predicates"] == []


def test_verify_subset_and_determinism(tmp_path):
    r = run("verify", "--set", "suite.checks=lemma31,lemma41", cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    report = json.loads((tmp_path / "verify.json").read_text())
    assert report["pass"] is True
    assert [c["check"] for c in report["checks"]] == ["lemma31", "lemma41"]
    first = (tmp_path / "verify.json").read_bytes()

    r = run("verify", "--set", "suite.checks=lemma31,lemma41", cwd=tmp_path)
    assert r.returncode == 0
    assert (tmp_path / "verify.json").read_bytes() == first


def test_list_families(tmp_path):
    r = run("list-families", cwd=tmp_path)
    assert r.returncode == 0
    for name in ("cylinder", "revolution", "spherical", "minimal_cylinder",
                 "minimal_revolution", "eta_parallel_cylinder", "eta_parallel_spherical"):
        assert name in r.stdout


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
