from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treecover.errors import InvalidInput, PreconditionViolation, ResourceLimitExceeded
from treecover.hardness import gen_random_tree
from treecover.oracle import (
    best_path_tuple,
    oracle_length,
    oracle_paths_mlcp,
    oracle_time,
    solve_length,
    solve_time,
    three_partition_solve,
)
from treecover.tree import Tree, is_covering, rendezvous_ok, strategy_length, strategy_time


def test_time_examples(star3, path3):
    assert oracle_time(star3, (0,)) == 5
    assert oracle_time(star3, (0, 0, 0)) == 1
    assert oracle_time(path3, (1,)) == 3
    assert oracle_time(Tree(1, ()), (0, 0)) == 0


def test_length_examples(star3, path3):
    assert oracle_length(star3, (0, 0)) == 4
    assert oracle_length(path3, (0, 2)) == 1
    assert oracle_length(Tree(1, ()), (0,)) == 0


def test_path_tuple_examples(star3):
    assert [oracle_paths_mlcp(star3, (0,) * k) for k in (1, 2, 3)] == [5, 4, 3]
    cost, paths = best_path_tuple(star3, (0, 0))
    assert cost == 4 and all(p[0] == 0 for p in paths)


def test_closed_robot_must_return(path3):
    assert oracle_length(path3, (0,), closed=[0]) == 4
    res = solve_length(path3, (0,), closed=[0])
    assert res.strategy.walks[0][-1] == 0


def test_rendezvous_examples(star3, path2):
    # two robots on a star: sweep one leaf each and come back together
    res = solve_length(star3, (0, 0), 2)
    assert rendezvous_ok(res.strategy, 2) and is_covering(star3, res.strategy)
    assert res.cost == strategy_length(res.strategy)
    assert oracle_time(path2, (0, 1), 1) == 1


def test_rendezvous_infeasible(path3):
    # different ends that can never meet within one step of the start
    with pytest.raises(PreconditionViolation):
        solve_length(Tree.path(6), (0, 5), 1)


def test_witnesses_verify():
    t = gen_random_tree(7, 3)
    for starts in [(0,), (0, 4), (2, 2, 5)]:
        r = solve_time(t, starts)
        assert is_covering(t, r.strategy) and strategy_time(r.strategy) == r.cost
        assert r.strategy.starts == starts
        r = solve_length(t, starts)
        assert is_covering(t, r.strategy) and strategy_length(r.strategy) == r.cost
        r = solve_time(t, starts, 3)
        assert rendezvous_ok(r.strategy, 3) and strategy_time(r.strategy) == r.cost


def test_resource_limits():
    with pytest.raises(ResourceLimitExceeded):
        oracle_length(Tree.path(25), (0,))
    with pytest.raises(ResourceLimitExceeded):
        oracle_time(gen_random_tree(12, 1), (0, 0, 0), max_states=50)


def test_rejects_bad_starts(star3):
    with pytest.raises(InvalidInput):
        oracle_length(star3, ())
    with pytest.raises(InvalidInput):
        oracle_length(star3, (9,))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10**6), st.data())
def test_oracle_relations(n, seed, data):
    t = gen_random_tree(n, seed)
    starts = tuple(data.draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=2)))
    extra = data.draw(st.integers(0, n - 1))
    base_len = oracle_length(t, starts)
    base_time = oracle_time(t, starts)
    assert oracle_length(t, starts + (extra,)) <= base_len
    assert oracle_time(t, starts + (extra,)) <= base_time
    assert base_len == oracle_paths_mlcp(t, starts)
    assert base_time <= base_len
    p = data.draw(st.integers(1, 4))
    try:
        assert oracle_time(t, starts, p) >= base_time
        assert oracle_length(t, starts, p) >= base_len
    except PreconditionViolation:
        pass
    if len(starts) == 1:
        assert oracle_length(t, starts, 2 * n) == base_len


@pytest.mark.parametrize(
    "a, b, yes",
    [
        ((3, 3, 3, 3, 3, 3), 9, True),
        ((2, 2, 3), 7, True),
        ((5, 5, 6, 5, 5, 6), 16, True),
        ((4, 4, 7, 5, 5, 5), 15, True),
        ((7, 7, 12, 8, 8, 8), 25, False),
    ],
)
def test_three_partition(a, b, yes):
    sol = three_partition_solve(a, b)
    assert (sol is not None) == yes
    if sol:
        assert all(sum(t) == b for t in sol)
        assert sorted(x for t in sol for x in t) == sorted(a)


@pytest.mark.parametrize("a, b", [((1, 2, 3), 6), ((3, 3, 3, 3), 9), ((3, 3, 4), 9), ((), 9)])
def test_three_partition_rejects_invalid(a, b):
    with pytest.raises(InvalidInput):
        three_partition_solve(a, b)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10**6), st.data())
def test_rendezvous_witnesses_respect_period(n, seed, data):
    t = gen_random_tree(n, seed)
    starts = tuple(data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2)))
    p = data.draw(st.integers(1, 4))
    try:
        r = solve_length(t, starts, p)
    except PreconditionViolation:
        return
    assert rendezvous_ok(r.strategy, p) and is_covering(t, r.strategy)
    assert strategy_length(r.strategy) == r.cost
    r = solve_time(t, starts, p)
    assert rendezvous_ok(r.strategy, p) and strategy_time(r.strategy) == r.cost


@pytest.mark.parametrize("seed", range(5))
def test_period_one_moves_the_team_as_one(seed):
    # with a common start and p = 1 the robots are together at every step
    t = gen_random_tree(6, seed)
    assert oracle_time(t, (0, 0), 1) == oracle_time(t, (0,))
    assert oracle_length(t, (0, 0), 1) == 2 * oracle_time(t, (0,))
