"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed at the end."""

from __future__ import annotations

import os
import random
import statistics
import subprocess
import sys
import time

import pytest

from treecover.dp import TwoSourcesTable, one_source
from treecover.hardness import SHAPES, gen_lcsr, gen_random_tree, gen_tcs, witness_lcsr, witness_tcs
from treecover.oracle import oracle_length, oracle_paths_mlcp, three_partition_solve
from treecover.structure import check_edge_directions, verify_structure
from treecover.tree import Tree, is_covering, rendezvous_ok, strategy_length, strategy_time

from conftest import record

pytestmark = pytest.mark.acceptance

A6, A3, B = (3, 3, 3, 3, 3, 3), (3, 3, 3), 9


def _trees(count, max_n, seed, min_n=1):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(min_n, max_n)
        shape = "uniform" if i % 4 else rng.choice(SHAPES)
        out.append(gen_random_tree(n, rng.randrange(10**9), shape))
    return out


def _strategy_problems(tree, sol):
    s = sol.strategy
    problems = []
    if not is_covering(tree, s):
        problems.append("not covering")
    if strategy_length(s) != sol.cost:
        problems.append(f"length {strategy_length(s)} != cost {sol.cost}")
    if not verify_structure(tree, s).ok:
        problems.append("structure")
    return problems


@pytest.fixture(scope="module")
def one_source_runs():
    """Every (tree, start, k) of the first criterion with DP, search and path-tuple costs."""
    runs = []
    for tree in _trees(200, 8, 1):
        for u in range(tree.n):
            sols = one_source(tree, u, 3)
            for k in (1, 2, 3):
                starts = (u,) * k
                runs.append(
                    {
                        "tree": tree,
                        "u": u,
                        "k": k,
                        "sol": sols[k],
                        "search": oracle_length(tree, starts),
                        "paths": oracle_paths_mlcp(tree, starts),
                    }
                )
    return runs


SPLITS = [(s, t) for s in range(4) for t in range(4) if 1 <= s + t <= 3]


@pytest.fixture(scope="module")
def two_source_runs():
    """Every (tree, u, v, s, t) of the second criterion; a zero count is one robot that must come home."""
    runs = []
    for tree in _trees(100, 7, 2, min_n=2):
        for u in range(tree.n):
            for v in range(tree.n):
                if u == v:
                    continue
                table = TwoSourcesTable(tree, u, v, 3)
                for s, t in SPLITS:
                    starts = (u,) * max(s, 1) + (v,) * max(t, 1)
                    closed = [0] if s == 0 else [len(starts) - 1] if t == 0 else []
                    runs.append(
                        {
                            "tree": tree,
                            "key": (u, v, s, t),
                            "sol": table.solution(s, t),
                            "search": oracle_length(tree, starts, closed=closed),
                            "paths": oracle_paths_mlcp(tree, starts, closed),
                        }
                    )
    return runs


def test_criterion_01_one_source_equals_oracles(one_source_runs):
    trees = {id(r["tree"]) for r in one_source_runs}
    bad = [r for r in one_source_runs if not r["sol"].cost == r["search"] == r["paths"]]
    ok = len(trees) >= 200 and not bad
    record("1 one_source == oracle_length == oracle_paths_mlcp", ok, f"{len(one_source_runs)} runs on {len(trees)} trees, {len(bad)} mismatches")
    assert ok, bad[:3]


def test_criterion_02_two_sources_equal_oracle(two_source_runs):
    trees = {id(r["tree"]) for r in two_source_runs}
    bad = [(r["tree"].edges, r["key"], r["sol"].cost, r["search"]) for r in two_source_runs if r["sol"].cost != r["search"]]
    ok = len(trees) >= 100 and not bad
    record("2 two_sources == oracle_length", ok, f"{len(two_source_runs)} runs on {len(trees)} trees, {len(bad)} mismatches")
    assert ok, bad[:3]


def test_criterion_03_structure(one_source_runs, two_source_runs):
    failures = []
    for r in one_source_runs + two_source_runs:
        if r["paths"] != r["search"]:
            failures.append(("path-tuple optimum differs", r["tree"].edges))
        for problem in _strategy_problems(r["tree"], r["sol"]):
            failures.append((problem, r["tree"].edges))
    total = len(one_source_runs) + len(two_source_runs)
    record("3 path-tuple == search; DP strategies structured, covering, exact length", not failures, f"{total} instances, {len(failures)} failures")
    assert not failures, failures[:3]


def test_criterion_04_closed_form(one_source_runs):
    bad = [
        (r["tree"].edges, r["u"])
        for r in one_source_runs
        if r["k"] == 1 and r["sol"].cost != 2 * (r["tree"].n - 1) - r["tree"].eccentricity(r["u"])
    ]
    checked = sum(1 for r in one_source_runs if r["k"] == 1)
    record("4 single robot cost == 2(n-1) - ecc(u)", not bad, f"{checked} instances, {len(bad)} mismatches")
    assert not bad, bad[:3]


def test_criterion_05_edge_directions(two_source_runs):
    bad = [r["key"] for r in two_source_runs if not check_edge_directions(r["tree"], r["sol"].strategy).ok]
    record("5 two_sources strategies cross each edge one way", not bad, f"{len(two_source_runs)} strategies, {len(bad)} failures")
    assert not bad, bad[:3]


def test_criterion_06_lcsr_witness():
    details, ok = [], True
    for a, expect in ((A6, 120), (A3, 80)):
        inst = gen_lcsr(a, B)
        s = witness_lcsr(inst, [(3, 3, 3)] * inst.m)
        length = strategy_length(s)
        good = length == expect == inst.budget and rendezvous_ok(s, 2 * B + 2) and is_covering(inst.tree, s)
        ok &= good
        details.append(f"m={inst.m}: length {length}/{expect}")
    record("6 LCSR witness: exact length, rendezvous, covering", ok, ", ".join(details))
    assert ok


def test_criterion_07_tcs_witness():
    details, ok = [], True
    for a, expect in ((A6, 54), (A3, 36)):
        inst = gen_tcs(a, B)
        s = witness_tcs(inst, [(3, 3, 3)] * inst.m)
        t = strategy_time(s)
        good = t == expect == inst.spoke_length + 2 * B and is_covering(inst.tree, s)
        ok &= good
        details.append(f"m={inst.m}: time {t}/{expect}")
    record("7 TCS witness: exact time, covering", ok, ", ".join(details))
    assert ok


def test_criterion_08_three_partition():
    yes = three_partition_solve(A6, B)
    no = three_partition_solve((6, 6, 6, 6, 7, 9), 20)
    ok = yes is not None and sorted(x for t in yes for x in t) == list(A6) and all(sum(t) == B for t in yes) and no is None
    record("8 3-PARTITION yes/no instances", ok, f"yes -> {yes}, no -> {no}")
    assert ok


def test_criterion_09_rendezvous_sanity(one_source_runs):
    star = Tree.star(3)
    with_p, without = oracle_length(star, (0, 0), 2), oracle_length(star, (0, 0))
    bad = []
    for r in one_source_runs:
        if r["k"] == 1:
            tree, u = r["tree"], r["u"]
            if oracle_length(tree, (u,), 2 * tree.n) != r["search"]:
                bad.append((tree.edges, u))
    ok = with_p >= without and not bad
    record("9 rendezvous oracle sanity", ok, f"star3 p=2: {with_p} >= {without}; k=1 large p mismatches: {len(bad)}")
    assert ok, bad[:3]


SCRIPT = [
    ["gen", "random", "--n", "7", "--seed", "11", "--k", "2", "--starts", "0,5", "-o", "rand.txt", "--quiet"],
    ["solve", "rand.txt", "--emit-strategy", "rand.walks", "--format", "json"],
    ["oracle", "rand.txt", "--emit-strategy", "rand.oracle.walks"],
    ["verify", "rand.txt", "rand.walks"],
    ["gen", "lcsr", "--a", "3,3,3", "--b", "9", "-o", "lcsr.txt", "--witness", "lcsr.walks", "--dot", "lcsr.dot"],
    ["witness", "tcs", "--a", "3,3,3,3,3,3", "--b", "9", "-o", "tcs.walks"],
    ["gen", "random", "--n", "40", "--seed", "3", "--shape", "caterpillar", "--k", "3", "-o", "cat.txt", "--quiet"],
    ["solve", "cat.txt", "--emit-strategy", "cat.walks", "--dot", "cat.dot"],
]


def _run_script(workdir, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    reports = []
    for argv in SCRIPT:
        proc = subprocess.run(
            [sys.executable, "-m", "treecover.cli", *argv], cwd=workdir, env=env, capture_output=True, check=True
        )
        reports.append(proc.stdout)
    files = {p.name: p.read_bytes() for p in sorted(workdir.iterdir())}
    return reports, files


def test_criterion_10_determinism(tmp_path):
    first, second = tmp_path / "a", tmp_path / "b"
    first.mkdir()
    second.mkdir()
    r1, f1 = _run_script(first, 1)
    r2, f2 = _run_script(second, 2)
    ok = r1 == r2 and f1 == f2 and len(f1) == 10
    record("10 byte-identical files and reports across runs", ok, f"{len(f1)} files, {len(r1)} reports compared")
    assert ok


def _median_seconds(tree, k, repeats=7):
    one_source(tree, 0, k)  # warm-up
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        one_source(tree, 0, k)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def test_criterion_11_scaling():
    small = _median_seconds(gen_random_tree(2000, 0, "caterpillar"), 4)
    large = _median_seconds(gen_random_tree(4000, 0, "caterpillar"), 4)
    ratio = large / small
    ok = ratio <= 4 and small < 10 and large < 10
    record("11 one_source scaling n=2000 -> 4000 at k=4", ok, f"{small:.3f}s -> {large:.3f}s, ratio {ratio:.2f}")
    assert ok
