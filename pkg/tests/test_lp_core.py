import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from gptd.lp_core import (
    Constraint,
    LinearProgram,
    MalformedLP,
    PivotLimitExceeded,
    Relation,
    Status,
    feasible,
    pivot_ceiling,
    solve,
)

from oracles import lp_by_vertices


def test_minimize_single_bound():
    res = solve(LinearProgram(1, [([1], ">=", 3)], [1]))
    assert res.status is Status.OPTIMAL
    assert res.witness == (3,)
    assert res.objective_value == 3


def test_contradictory_bounds_infeasible():
    assert solve(LinearProgram(1, [([1], ">=", 1), ([1], "<=", 0)])).status is Status.INFEASIBLE


def test_triangle_minimum():
    # vertices (0,0), (1,0), (0,1): objective -x-y takes 0, -1, -1
    res = solve(LinearProgram(2, [([1, 1], "<=", 1)], [-1, -1], lower=[0, 0]))
    assert res.objective_value == -1


def test_unbounded():
    assert solve(LinearProgram(1, [], [-1], lower=[0])).status is Status.UNBOUNDED
    assert solve(LinearProgram(2, [([1, -1], "=", 0)], [1, 1])).status is Status.UNBOUNDED


def test_feasible_examples():
    ok, x = feasible(LinearProgram(1, [([1], "=", F(1, 2))], lower=[0], upper=[1]))
    assert ok and x == (F(1, 2),)
    ok, x = feasible(LinearProgram(2, [([1, 1], "=", 1), ([1, 0], ">=", F(2, 3)), ([0, 1], ">=", F(2, 3))]))
    assert not ok and x is None


def test_upper_only_and_boxed_variables():
    lp = LinearProgram(2, [([1, 1], ">=", -5)], [1, -1], lower=[None, -1], upper=[2, 4])
    res = solve(lp)
    assert res.witness == (-9, 4)
    assert res.objective_value == -13
    assert lp.is_satisfied_by(res.witness)


def test_empty_box_infeasible():
    assert solve(LinearProgram(1, [], lower=[2], upper=[1])).status is Status.INFEASIBLE


def test_redundant_equalities():
    lp = LinearProgram(2, [([1, 1], "=", 1), ([2, 2], "=", 2), ([1, -1], "=", 0)], [1, 0])
    res = solve(lp)
    assert res.witness == (F(1, 2), F(1, 2))


def test_malformed():
    with pytest.raises(MalformedLP):
        LinearProgram(2, [([1], "<=", 0)])
    with pytest.raises(MalformedLP):
        LinearProgram(1, [], [1, 2])
    with pytest.raises(ValueError):
        Constraint([1], "<>", 0)


def test_pivot_limit(monkeypatch):
    lp = LinearProgram(3, [([1, 1, 1], "=", 1), ([1, 2, 3], ">=", 2)], [-1, -2, -3], lower=[0, 0, 0])
    with pytest.raises(PivotLimitExceeded):
        solve(lp, pivot_limit=0)
    monkeypatch.setenv("GPTD_LP_PIVOT_LIMIT", "0")
    with pytest.raises(PivotLimitExceeded):
        solve(lp)


def test_deterministic():
    lp = LinearProgram(3, [([1, 1, 1], "<=", 4), ([1, -1, 0], ">=", -1)], [-1, -1, 0], lower=[0, 0, 0])
    assert solve(lp) == solve(lp)


def test_cycling_example_terminates():
    # Beale's classic cycling LP: the textbook largest-coefficient rule cycles here.
    lp = LinearProgram(
        4,
        [
            ([F(1, 4), -8, -1, 9], "<=", 0),
            ([F(1, 2), -12, F(-1, 2), 3], "<=", 0),
            ([0, 0, 1, 0], "<=", 1),
        ],
        [F(-3, 4), 20, F(-1, 2), 6],
        lower=[0, 0, 0, 0],
    )
    res = solve(lp)
    assert res.objective_value == F(-5, 4)
    assert res.pivots <= pivot_ceiling(lp)


def _random_lp(rng: random.Random) -> LinearProgram:
    def q():
        return F(rng.randint(-10, 10), rng.randint(1, 10))

    nv = rng.randint(1, 3)
    nc = rng.randint(1, 6)
    cons = [([q() for _ in range(nv)], rng.choice(["<=", ">=", "="]), q()) for _ in range(nc)]
    return LinearProgram(nv, cons, [q() for _ in range(nv)], lower=[0] * nv)


def _check_against_oracle(lp: LinearProgram):
    res = solve(lp)
    status, value = lp_by_vertices(lp)
    assert res.status.value == status
    if status == "optimal":
        assert res.objective_value == value
        assert lp.is_satisfied_by(res.witness)
        assert lp.evaluate(res.witness) == res.objective_value
    assert res.pivots <= pivot_ceiling(lp)


def test_matches_vertex_enumeration_seeded():
    rng = random.Random(7)
    statuses = set()
    for _ in range(120):
        lp = _random_lp(rng)
        _check_against_oracle(lp)
        statuses.add(solve(lp).status)
    assert statuses == set(Status)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_matches_vertex_enumeration_property(rng):
    _check_against_oracle(_random_lp(rng))


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_free_variables_witness_is_feasible(rng):
    nv = rng.randint(1, 4)
    cons = [
        ([F(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(nv)], rng.choice(list(Relation)), F(rng.randint(-6, 6)))
        for _ in range(rng.randint(1, 7))
    ]
    lp = LinearProgram(nv, cons)
    ok, x = feasible(lp)
    if ok:
        assert lp.is_satisfied_by(x)
    else:
        # An exact Farkas-free sanity check: boxing the variables cannot make it feasible.
        boxed = LinearProgram(nv, cons, lower=[-1000] * nv, upper=[1000] * nv)
        assert solve(boxed).status is Status.INFEASIBLE
