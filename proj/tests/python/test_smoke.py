"""End-to-end smoke tests for the python bindings."""

import math

import pytest

import edwalk


def test_solve_smallest_size():
    rep = edwalk.solve(5)
    p = rep.params
    assert p.N == 5
    assert p.r == 2
    assert p.t2 == 3
    assert p.ct2 == 30
    assert p.t1 == 3
    assert abs(p.d - 0.30013) < 1e-3
    assert rep.residual_inner < 1e-10
    assert rep.residual_outer < 1e-9
    assert edwalk.query_count(p) == 362


def test_solve_rejects_bad_sizes():
    with pytest.raises(ValueError):
        edwalk.solve(4)
    with pytest.raises(ValueError):
        edwalk.solve(100, c=7)


def test_reduced_run_is_exact():
    for n in (5, 8, 20, 100, 1000):
        rep = edwalk.solve(n)
        out = edwalk.run_reduced(rep.params)
        assert out["success_prob"] >= 1 - 1e-9
        assert len(out["final_state"]) == 5
        assert out["query_count"] == edwalk.query_count(rep.params)


def test_walk_power_identity():
    for n in (5, 7, 50):
        rep = edwalk.solve(n)
        assert edwalk.walk_power_residual(rep.params) < 1e-8


def test_group_sizes_are_exact_integers():
    sizes = edwalk.group_sizes(5, 2)
    assert sizes == [3, 6, 12, 6, 3]
    big = edwalk.group_sizes(2000, 158)
    assert all(isinstance(x, int) for x in big)
    assert sum(big) == math.comb(2000, 158) * (2000 - 158)


def test_full_run_matches_reduced():
    rep = edwalk.solve(6)
    full = edwalk.run_full(rep.params, seed=6)
    red = edwalk.run_reduced(rep.params)
    assert full["colliding_pair"] is not None
    assert abs(full["success_prob"] - red["success_prob"]) < 1e-8
    assert full["query_count"] == edwalk.query_count(rep.params)

    distinct = edwalk.run_full(rep.params, seed=6, distinct=True)
    assert distinct["colliding_pair"] is None
    assert distinct["success_prob"] == 0.0


def test_measurement_finds_the_pair():
    rep = edwalk.solve(5)
    out = edwalk.measure(rep.params, seed=7, samples=200)
    assert out["reported_pair"] == 200
    assert out["correct"] == 200
    assert tuple(out["colliding_pair"]) == tuple(sorted(out["colliding_pair"]))

    none = edwalk.measure(rep.params, seed=7, samples=200, distinct=True)
    assert none["reported_distinct"] == 200
    assert none["colliding_pair"] is None


def test_explicit_register_agrees():
    rep = edwalk.solve(5)
    out = edwalk.explicit_register_check(rep.params, seed=3)
    assert out["max_final_diff"] <= 1e-10
    assert out["max_off_pattern"] <= 1e-10
    assert abs(out["success_prob"] - out["success_prob_index_only"]) <= 1e-10
    assert out["query_count"] == 362


def test_resource_limit_surfaces():
    rep = edwalk.solve(20)
    with pytest.raises(edwalk.ResourceLimit):
        edwalk.run_full(rep.params, seed=1, cap=1000)


def test_json_export():
    import json

    rep = edwalk.solve(5)
    j = json.loads(edwalk.to_json(rep))
    assert j["N"] == 5
    assert j["query_count"] == 362
    assert j["mode"] == "solve"
