from fractions import Fraction as F

import pytest

from gptd.convex_geometry import in_simplex
from gptd.gpt_construction import (
    build,
    epsilon,
    inner_coordinate_bound_holds,
    ruin_point,
    ruin_point_violations,
)
from gptd.indep_system import IndependenceSystem, IndexSubset, from_maximal, from_member_list


@pytest.mark.parametrize("n, expected", [(2, F(1, 12)), (3, F(1, 27)), (10, F(1, 300))])
def test_epsilon(n, expected):
    assert epsilon(n) == expected


def test_epsilon_needs_two_points():
    with pytest.raises(ValueError):
        epsilon(1)


@pytest.mark.parametrize(
    "h, j, n, expected",
    [
        ([1, 2, 3], 1, 3, (F(-1, 27), F(14, 27), F(14, 27))),
        ([1, 2], 1, 3, (F(-2, 27), F(1), F(2, 27))),
        ([1, 2], 2, 2, (F(13, 12), F(-1, 12))),
    ],
)
def test_ruin_point_values(h, j, n, expected):
    q = ruin_point(h, j, n)
    assert q.coords == expected
    assert not in_simplex(q)


def test_ruin_point_preconditions():
    with pytest.raises(ValueError):
        ruin_point([1, 2], 3, 3)
    with pytest.raises(ValueError):
        ruin_point([1], 1, 3)


@pytest.mark.parametrize("n", range(2, 9))
def test_ruin_point_bounds_for_every_shape(n):
    assert inner_coordinate_bound_holds(n)
    for m in range(2, n + 1):
        h = IndexSubset.of(n, range(1, m + 1))
        for j in h:
            assert ruin_point_violations(ruin_point(h, j, n), h, j, n) == []


def test_build_power_set_is_simplex():
    out = build(IndependenceSystem.power_set(3))
    assert len(out.space) == 3
    assert out.ruin_points == {}
    assert out.epsilon == F(1, 27)


def test_build_seven_member_system():
    out = build(from_maximal(3, [[1, 2], [1, 3], [2, 3]]))
    assert len(out.space) == 6
    assert out.space.labels == ("s1", "s2", "s3", "q_{1,2,3}^1", "q_{1,2,3}^2", "q_{1,2,3}^3")
    assert out.space[3].coords == (F(-1, 27), F(14, 27), F(14, 27))
    assert out.vertex_positions() == [0, 1, 2]


def test_build_pair_circuit():
    out = build(from_member_list(3, [[], [1], [2], [3], [1, 3], [2, 3]]))
    assert len(out.space) == 5
    assert set(out.ruin_points) == {(IndexSubset.of(3, [1, 2]), 1), (IndexSubset.of(3, [1, 2]), 2)}


def test_build_orders_ruin_points_by_circuit_tuple():
    a = from_maximal(4, [[1, 3], [2, 4], [3, 4]])
    out = build(a)
    keys = [(h.indices, j) for (h, j), _ in sorted(out.ruin_points.items(), key=lambda kv: kv[1])]
    assert keys == sorted(keys)
    assert build(a) == out


def test_build_n_equals_one():
    out = build(IndependenceSystem.power_set(1))
    assert len(out.space) == 1
    assert out.epsilon is None


def test_build_json_roles():
    data = build(from_maximal(3, [[1, 2], [1, 3], [2, 3]])).to_json()
    assert data["epsilon"] == "1/27"
    assert data["generators"][0]["role"] == {"vertex": 1}
    assert data["generators"][5]["role"] == {"circuit": [1, 2, 3], "j": 3}
