import math

import pytest

from blaschke_kit import InvalidScenario, Scenario, run_scenario
from blaschke_kit.scenarios import SEED_ENV

ANTIPODAL = {"E": {"points": [0.0]}, "F": {"points": [math.pi]}}


def scenario(**kw):
    d = {"id": "t", **ANTIPODAL, **kw}
    return Scenario.from_dict(d)


def records(rep):
    return {r.check: r for r in rep.records}


def test_theorem_2_1_antipodal():
    rep = run_scenario(scenario(kind="theorem_2_1", p=0.5, q=0.5))
    assert rep.status == "pass"
    rec = records(rep)["blaschke_condition"]
    assert rec.details["norm"] == pytest.approx(1.1803, abs=1e-4)
    assert max(rec.series["value"]) <= 1.1803 * 1.05


def test_theorem_2_1_scales_with_M():
    rep = run_scenario(scenario(kind="theorem_2_1", p=0.5, q=0.5, M=10.0,
                                controls={"k_max": 8}))
    rec = records(rep)["blaschke_condition"]
    assert rep.status == "pass"
    assert rec.rhs == pytest.approx(10 * 1.18034, rel=1e-4)


def test_theorem_2_1_nonintegrable_is_invalid():
    rep = run_scenario(scenario(kind="theorem_2_1", p=1.0, q=0.5, controls={"k_max": 6}))
    assert rep.status == "invalid"


def test_theorem_main_i_example():
    rep = run_scenario(scenario(kind="theorem_main_i", p=1.0, q=1.0, a=0.5, b=0.5, eps=0.1))
    assert rep.status == "pass"
    assert records(rep)["weighted_sweep_bounded"].details["C_hat"] > 0


def test_theorem_main_i_without_integrability():
    rep = run_scenario(scenario(kind="theorem_main_i", p=1.0, q=1.0, a=0.0, b=0.0, eps=0.1,
                                controls={"k_max": 10}))
    assert rep.status == "pass"
    assert records(rep)["weighted_sweep_bounded"].details["norm"] == 1.0


def test_theorem_main_ii_one_sided():
    rep = run_scenario(scenario(kind="theorem_main_ii", p=1.0, q=0.5, a=0.5, b=0.5, eps=0.1,
                                controls={"k_max": 10}))
    assert rep.status == "pass"


@pytest.mark.parametrize("kw", [
    {"kind": "theorem_main_i", "p": 1.0, "q": 1.0, "a": 0.5, "b": 0.5, "eps": 0.0},
    {"kind": "theorem_main_i", "p": 1.0, "q": 1.0, "a": 1.0, "b": 0.5},
    {"kind": "theorem_main_ii", "p": 1.0, "q": 1.0, "a": 0.5, "b": 0.5},
    {"kind": "prop_separate", "p": 1.0, "q": 1.0, "p_prime": 0.5, "q_prime": 0.5},
    {"kind": "prop_separate", "p": 1.0, "q": 1.0},
    {"kind": "theorem_inverse", "p": 2.0, "q": 2.0, "F": {"points": [0.0]}},
    {"kind": "theorem_2_1", "p": -1.0},
    {"kind": "no_such_kind"},
    {"kind": "theorem_2_1", "bogus": 1},
    {"kind": "theorem_2_1", "controls": {"k_min": 5, "k_max": 3}},
    {"kind": "theorem_2_1", "controls": {"nope": 1}},
    {"kind": "theorem_2_1", "E": {"points": []}},
])
def test_invalid_scenarios(kw):
    with pytest.raises(InvalidScenario):
        scenario(**kw)


def test_prop_separate():
    rep = run_scenario(scenario(kind="prop_separate", p=0.5, q=0.5, p_prime=0.5, q_prime=0.5))
    assert rep.status == "pass"
    rec = records(rep)["elementary_inequality"]
    assert rec.details["max_ratio"] <= 1.0


def test_corollary_combined():
    rep = run_scenario(scenario(kind="corollary_zero_sets", p=1.0, q=1.0, a=0.5, b=0.5,
                                controls={"c": 5.0, "c_prime": 5.0}))
    assert rep.status == "pass"
    assert {"zero_sum_finite", "riesz_representation"} <= set(records(rep))


def test_corollary_zero_free():
    rep = run_scenario(scenario(kind="corollary_zero_sets", p=1.0, q=1.0, a=0.5, b=0.5,
                                controls={"count": 0}))
    assert rep.status == "pass"
    assert records(rep)["zero_sum_finite"].lhs == 0.0


def test_corollary_pure_blaschke():
    rep = run_scenario(scenario(kind="corollary_zero_sets", p=1.0, q=1.0, a=0.5, b=0.5,
                                controls={"c": 0.0, "c_prime": 0.0}))
    assert rep.status == "pass"


def test_inverse_two_point():
    rep = run_scenario(scenario(kind="theorem_inverse", p=2.0, q=2.0, eps=0.5))
    assert rep.status == "pass"
    rec = records(rep)["divergent_control"]
    values = rec.series["value"]
    assert all(b >= 1.25 * a for a, b in zip(values, values[1:]))


def test_inverse_small_eps_grows_without_plateau():
    rep = run_scenario(scenario(kind="theorem_inverse", p=2.0, q=2.0, eps=0.25,
                                controls={"growth_threshold": 1.2, "plateau_window": 2,
                                          "plateau_tol": 0.02}))
    assert rep.status == "pass"


def test_prop_suite_default():
    rep = run_scenario(Scenario.from_dict({"id": "s", "kind": "prop_suite"}))
    assert rep.status == "pass"
    assert {"inclusion", "layer_cake", "radial_doubling", "harmonic_majorant"} <= set(records(rep))


def test_prop_suite_other_seed(monkeypatch):
    monkeypatch.setenv(SEED_ENV, "17")
    sc = Scenario.from_dict({"id": "s", "kind": "prop_suite", "controls": {"samples": 10}})
    assert sc.controls.seed == 17
    assert run_scenario(sc).status == "pass"


def test_round_trip():
    sc = scenario(kind="theorem_main_i", p=1.0, q=1.0, a=0.5, b=0.5)
    again = Scenario.from_dict(sc.to_dict())
    assert again.to_dict() == sc.to_dict()
