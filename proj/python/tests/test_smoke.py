import json
import math

import pytest

import dupdel


def test_params_regimes():
    assert dupdel.ModelParams(0.3).regime == "subcritical"
    assert dupdel.ModelParams(0.5).regime == "critical"
    assert dupdel.ModelParams(0.7).regime == "supercritical"
    assert dupdel.ModelParams(0.25).gamma == pytest.approx(3.0)
    assert dupdel.ModelParams(0.7).beta() == pytest.approx(1.75)
    with pytest.raises(ValueError):
        dupdel.ModelParams(1.5)
    with pytest.raises(ValueError):
        dupdel.ModelParams(0.5).beta()


def test_theory_tables():
    c = dupdel.compute_c(0.5, 50)
    assert c[0] == pytest.approx(0.40365263767680593, rel=1e-9)
    assert 0.0 < sum(c) < 1.0
    q = dupdel.compute_q(0.5, 50)
    assert q[0] == pytest.approx(1.0 - c[0], rel=1e-9)
    # Linkage between the two laws (gamma = 1 at the critical point).
    for k in range(1, 40):
        assert q[k] == pytest.approx(c[k - 1] - c[k], abs=1e-10)
    assert dupdel.tail_q(0.5, 1) == pytest.approx(1.0 - q[0], rel=1e-8)


def test_survival_scale():
    table = dupdel.compute_a(0.5, 10)
    assert table["a"][0] == 1.0
    assert table["a"][1] == pytest.approx(2.0)
    assert table["a"][2] == pytest.approx(3.5)
    assert table["p0"][2] == pytest.approx(2.0 / 7.0)
    assert table["a"] == sorted(table["a"])  # reaching higher degrees is harder
    assert dupdel.laguerre_eval(2, -1.0) == pytest.approx(3.5)
    assert dupdel.first_passage_solve(0.5, 2)[0] == pytest.approx(2.0 / 7.0, abs=1e-12)


def test_simulation_determinism_and_counts():
    runs = [dupdel.simulate(1, 0.5, 1000, seed=7) for _ in range(2)]
    assert runs[0] == runs[1]
    snap = runs[0][-1]
    assert snap["n_vertices"] == sum(snap["degree_histogram"].values())
    assert snap["max_degree"] == max(snap["degree_histogram"])
    assert snap["s1"] >= 0


def test_enumeration_matches_hand_values():
    states = dict()
    for multiset, p in dupdel.enumerate_states(1, 0.3, 1):
        states[tuple(multiset)] = p
    assert states == {(2,): pytest.approx(0.3), (1,): pytest.approx(0.7)}


def test_fixed_vertex_trajectory():
    traj = dupdel.simulate_fixed_vertex(0.5, 25.0, seed=3)
    assert traj["times"][0] == 0.0
    assert traj["degrees"][0] == 0
    assert traj["running_max"] == max(traj["degrees"])
    for prev, curr in zip(traj["degrees"], traj["degrees"][1:]):
        assert curr in (prev + 1, prev - 1, 0)


def test_experiment_roundtrip():
    spec = {
        "kind": "growth_law",
        "version": 1,
        "theta": 0.5,
        "horizon": 20000,
        "replicas": 3,
        "master_seed": 11,
        "tolerance": 0.05,
    }
    result = json.loads(dupdel.run_experiment_json(json.dumps(spec)))
    assert result["schema_version"] == 1
    assert result["overall_pass"] is True
    observed = next(v for v in result["verdicts"] if v["metric"] == "n_over_n")
    assert math.isclose(observed["observed"], 0.5, abs_tol=0.05)
