import json
import os
import pathlib

import pytest

import tensorhn

DATA = pathlib.Path(os.environ.get("TENSORHN_TEST_DATA", pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"))


def load(name):
    return json.loads((DATA / name).read_text())


def test_matmul_zeta_and_acr():
    T = tensorhn.matmul_tensor(2, 3, 4)
    assert T["dims"] == [6, 12, 8]
    z = tensorhn.zeta(T, rho="1/2")
    assert z["value"]["decimal"].startswith("8.48528137423857029")
    a = tensorhn.acr(load("diag_sum_p1q1.json"))
    assert a["value"]["decimal"].startswith("3.46410161513775458")


def test_hn_and_semistable():
    T = tensorhn.matmul_tensor(2, 1, 2)
    r = tensorhn.hn(T)
    assert r["dim_data"]
    assert all(step["certificate"] == 0 for step in r["steps"])
    s = tensorhn.semistable(T)
    assert s["semistable"] in (True, False)
    assert tensorhn.gauge(T, mode=1)["value"] == 2


def test_compress_and_verify_round_trip():
    T = load("random_2_4_2.json")
    rep = tensorhn.compress(T)
    assert rep["results"]
    for r in rep["results"]:
        assert r["verified"]
        assert r["lambda"] >= r["bound"]
    ext = rep["results"][0]["extraction"]
    v = tensorhn.verify(T, ext, rho="1/2")
    assert v["verified"]


def test_tampered_extraction_is_rejected():
    with pytest.raises(tensorhn.VerificationError) as info:
        tensorhn.verify(load("mm_2_3_4.json"), load("extraction_tampered.json"))
    assert json.loads(info.value.result)["verified"] is False


def test_supports():
    b = tensorhn.balance(load("support_unbalanced.json"))
    assert b["balanced"] is False
    assert b["violating"] == [2]
    e = tensorhn.entropy(load("support_blocks.json"), theta=["1/3", "2/3"])
    assert e["converged"]


def test_lab():
    assert tensorhn.four_cycle([2, 3, 5, 4])["cr12"]["value"] == 8
    t = tensorhn.tpq(4, 9)
    assert t["acr34_integer"] == 10
    assert t["separated"]
    g = tensorhn.gap(10)
    assert (g["subrank"], g["best_monomial"]) == ("59049", "8064")
    assert tensorhn.subrank([(1, 0, 1), (0, 1, 1)])["subrank"] == "3"


def test_input_errors_carry_a_path():
    with pytest.raises(tensorhn.InputError) as info:
        tensorhn.hn(load("malformed.json"))
    assert info.value.path == "/entries/1/1"
    with pytest.raises(tensorhn.InputError):
        tensorhn.zeta(tensorhn.matmul_tensor(1, 2, 1), rho="0.5")
    with pytest.raises(tensorhn.InstabilityError):
        tensorhn.compress(load("diag_sum_p1q1.json"))


def test_field_override_and_determinism():
    T = tensorhn.matmul_tensor(1, 2, 2, field="rational")
    assert tensorhn.cr(T, field="gf:11") == tensorhn.cr(T, field="gf:11")
    assert tensorhn.shift(T, seed=5) == tensorhn.shift(T, seed=5)
