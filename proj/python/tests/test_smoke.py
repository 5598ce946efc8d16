import math

import pytest

import rwlab

CONE = {
    "ambient": {"warping": {"kind": "constant", "a": 1.0}, "c": 0},
    "family": {"kind": "revolution", "zeta1": {"kind": "linear", "a": 2.0}, "zeta2": 0.0},
    "grid": {"u0": 0.5, "u1": 1.5, "nu": 8, "v0": 0.2, "v1": 1.2, "nv": 8},
}


def test_build_and_sample():
    patch = rwlab.build_patch(CONE)
    assert patch.family == "revolution"
    t, x, y, z = patch.position(1.0, 0.5)
    assert t == 1.0
    assert math.hypot(x, y) == pytest.approx(2.0)
    assert z == 0.0
    for value in patch.fundamental_forms(1.0, 0.5).values():
        assert math.isfinite(value)


def test_closed_form_matches_numeric():
    patch = rwlab.build_patch(CONE)
    closed = patch.closed_form_h(0.75, 0.5)
    numeric = patch.fundamental_forms(0.75, 0.5)
    for key, want in closed.items():
        assert numeric[key] == pytest.approx(want, abs=1e-8)
    # independently derived value on the cone: h3_22 = -1/(2 sqrt(3) u)
    assert closed["h3_22"] == pytest.approx(-1.0 / (2.0 * math.sqrt(3.0) * 0.75), abs=1e-12)


def test_classa_verdict():
    patch = rwlab.build_patch(CONE)
    report = patch.class_a_residuals()
    assert report["verdict"] is True
    assert report["failed_rows"] == 0


def test_perturbed_fails():
    broken = dict(CONE, family={
        "kind": "perturbed_cylinder",
        "x1": {"kind": "linear", "a": 1.2},
        "x2": 0.0,
        "amplitude": 0.1,
    })
    broken["grid"] = {"u0": -0.4, "u1": 0.4, "nu": 8, "v0": -0.4, "v1": 0.4, "nv": 8}
    report = rwlab.build_patch(broken).class_a_residuals()
    assert report["verdict"] is False
    assert max(r["max"] for r in report["residuals"]) > 1e-3


def test_domain_error():
    bad = dict(CONE, family={"kind": "minimal_cylinder", "c1": 0.3, "c2": 0.0, "c3": 0.5})
    with pytest.raises(ValueError, match="c3 < 0"):
        rwlab.build_patch(bad)


def test_verify_subset_and_determinism():
    suite = {"checks": ["lemma31"]}
    report = rwlab.verify(suite)
    assert report["pass"] is True
    assert [c["check"] for c in report["checks"]] == ["lemma31"]
    assert rwlab.verify_json(suite) == rwlab.verify_json(suite)


def test_catalog():
    names = {f["name"] for f in rwlab.list_families()}
    assert {"cylinder", "revolution", "spherical", "minimal_cylinder",
            "minimal_revolution", "eta_parallel_cylinder",
            "eta_parallel_spherical"} <= names
    assert len(rwlab.check_names()) == 15
