"""Smoke tests for the python bindings: the documented examples, run
through the compiled module."""

import pytest

import puncture


def test_rhom_ext_identification():
    r = puncture.rhom("L", "F(0)")
    assert r["h0"] == "0"
    assert r["h1"] == "Q(0)"
    assert r["oracle_pass"]
    assert all(v == 0 for v in r["h0_shadow"].values())


def test_rhom_free_to_laurent():
    r = puncture.rhom("F(0)", "L")
    assert r["h0"] == "L"
    assert r["h1"] == "0"
    assert r["oracle_pass"]


def test_rab_identifies_laurent_series():
    r = puncture.rab("F(0)", "F(0)", window=(-8, 8), margin=2)
    assert r["cohomology"][0] == "LS"
    assert all(v == 1 for v in r["shadow"][0].values())


def test_rab_torsion_degenerates():
    r = puncture.rab("T(2,0)", "F(0)")
    assert all(m == "0" for m in r["cohomology"].values())


def test_remark_agrees_with_rab():
    a = puncture.rab("F(1)", "F(-1)")
    b = puncture.remark("F(1)", "F(-1)")
    assert a["cohomology"] == b["cohomology"]
    assert a["shadow"] == b["shadow"]


def test_localize():
    assert puncture.localize("F(0)+T(2,0)") == "L"


def test_verify_appendix_b():
    rep = puncture.verify_appendix_b(n=6, window=(0, 8), margin=2)
    assert rep["pass"]
    assert rep["failures"] == []


def test_verify_extension_and_field_choice():
    rep = puncture.verify_extension(n=6, window=(0, 8), margin=2, field="fp:10007")
    assert rep["pass"]
    assert rep["detail"]["delta_obstructed"] is True


def test_verify_adjunction():
    rep = puncture.verify_adjunction("T(2,0)", "L")
    assert rep["pass"]


def test_compose_monomials():
    out = puncture.compose(
        ["F(0)", "F(0)", "F(0)"],
        [{"g": [["t^2"]]}, {"g": [["t^3"]]}],
    )
    assert out["g"] == [["t^5"]]
    assert out["f"] == [["0"]]


def test_errors_are_typed():
    with pytest.raises(puncture.StructuralError):
        puncture.rhom("NOPE", "F(0)")
    with pytest.raises(puncture.CalculusError):
        puncture.rhom("L", "PS(0)")
