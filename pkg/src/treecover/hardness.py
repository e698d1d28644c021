"""Instances built from 3-PARTITION, their yes-witnesses, and random trees.

Labelling: the hub ``u`` is vertex 0, the arms ``P_1..P_3m`` follow with
consecutive ids (``P_i`` has ``a_i`` vertices besides the hub), and the long
paths come last. Each arm and long path is stored as a vertex tuple that
starts at its attachment vertex.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .errors import InvalidInput
from .oracle import check_three_partition
from .tree import Strategy, Tree

SHAPES = ("uniform", "caterpillar", "star", "path", "spider")


def _arms(a: Sequence[int], edges: list[tuple[int, int]], hub: int, next_id: int) -> tuple[list[tuple[int, ...]], int]:
    arms = []
    for length in a:
        arm = [hub]
        for _ in range(length):
            edges.append((arm[-1], next_id))
            arm.append(next_id)
            next_id += 1
        arms.append(tuple(arm))
    return arms, next_id


@dataclass(frozen=True)
class LcsrInstance:
    """Rendezvous-length instance: arms on ``u``, a tail ``v_1..v_{3B+4}`` hung from ``u`` at ``v_1``.

    Robots start on ``v_1``; ``tail[j]`` is the vertex at distance ``j`` from ``v_1``.
    """

    tree: Tree
    a: tuple[int, ...]
    b: int
    start: int
    k: int
    p: int
    budget: int
    hub: int
    arms: tuple[tuple[int, ...], ...]
    tail: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.a) // 3


@dataclass(frozen=True)
class TcsInstance:
    """Cover-time instance: arms and ``m`` long spokes of length ``L = 2*sum(a)`` on ``u``."""

    tree: Tree
    a: tuple[int, ...]
    b: int
    start: int
    k: int
    budget: int
    spoke_length: int
    arms: tuple[tuple[int, ...], ...]
    spokes: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.a) // 3


def gen_lcsr(a: Sequence[int], b: int) -> LcsrInstance:
    a = tuple(a)
    check_three_partition(a, b)
    m = len(a) // 3
    edges: list[tuple[int, int]] = []
    arms, nxt = _arms(a, edges, 0, 1)
    tail = tuple(range(nxt, nxt + 3 * b + 4))
    edges.append((0, tail[0]))
    edges.extend(zip(tail, tail[1:]))
    tree = Tree(tail[-1] + 1, tuple(edges))
    return LcsrInstance(
        tree=tree,
        a=a,
        b=b,
        start=tail[0],
        k=m + 1,
        p=2 * b + 2,
        budget=(2 * m + 2) * (2 * b + 2),
        hub=0,
        arms=tuple(arms),
        tail=tail,
    )


def gen_tcs(a: Sequence[int], b: int) -> TcsInstance:
    a = tuple(a)
    check_three_partition(a, b)
    m = len(a) // 3
    spoke = 2 * sum(a)
    edges: list[tuple[int, int]] = []
    arms, nxt = _arms(a, edges, 0, 1)
    spokes, nxt = _arms([spoke] * m, edges, 0, nxt)
    return TcsInstance(
        tree=Tree(nxt, tuple(edges)),
        a=a,
        b=b,
        start=0,
        k=m,
        budget=spoke + 2 * b,
        spoke_length=spoke,
        arms=tuple(arms),
        spokes=tuple(spokes),
    )


def _assign_arms(a: tuple[int, ...], b: int, partition: Sequence[Sequence[int]]) -> list[list[int]]:
    """Map each triple of values to distinct arm indices of matching length."""
    m = len(a) // 3
    if len(partition) != m:
        raise InvalidInput(f"expected {m} triples, got {len(partition)}")
    free: dict[int, list[int]] = defaultdict(list)
    for i in reversed(range(len(a))):
        free[a[i]].append(i)
    out = []
    for triple in partition:
        if len(triple) != 3 or sum(triple) != b:
            raise InvalidInput(f"triple {tuple(triple)} does not consist of three values summing to {b}")
        idx = []
        for value in triple:
            if not free.get(value):
                raise InvalidInput(f"value {value} used more often than it occurs in A")
            idx.append(free[value].pop())
        out.append(idx)
    return out


def _sweep(arm: tuple[int, ...]) -> list[int]:
    """Out along an arm from the hub and back to the hub's neighbour on it."""
    return list(arm[1:]) + list(reversed(arm[1:-1]))


def witness_tcs(inst: TcsInstance, partition: Sequence[Sequence[int]]) -> Strategy:
    """Each robot sweeps its three arms, then runs to the end of its own spoke."""
    groups = _assign_arms(inst.a, inst.b, partition)
    walks = []
    for robot, idx in enumerate(groups):
        walk = [inst.start]
        for i in idx:
            walk += _sweep(inst.arms[i])
            walk.append(inst.start)
        walk += inst.spokes[robot][1:]
        walks.append(tuple(walk))
    return Strategy(tuple(walks))


def witness_lcsr(inst: LcsrInstance, partition: Sequence[Sequence[int]]) -> Strategy:
    """Length-``budget`` strategy meeting every ``p`` steps.

    Window ``w`` (``p`` steps): robot ``w`` enters the arms through the hub,
    sweeps its triple and returns to ``v_1`` while everybody else waits. Then
    all robots march to ``tail[p]`` together, and the last robot runs to the
    end of the tail and back.
    """
    groups = _assign_arms(inst.a, inst.b, partition)
    k, p, tail = inst.k, inst.p, inst.tail
    walks = [[inst.start] for _ in range(k)]
    for robot, idx in enumerate(groups):
        trip = [inst.hub]
        for i in idx:
            trip += _sweep(inst.arms[i])
            trip.append(inst.hub)
        trip.append(inst.start)
        assert len(trip) == p
        for r in range(k):
            walks[r] += trip if r == robot else [inst.start] * p
    for w in walks:
        w += tail[1 : p + 1]
    far = list(tail[p + 1 :]) + list(reversed(tail[p:-1]))
    for r in range(k):
        walks[r] += far if r == k - 1 else [tail[p]] * len(far)
    return Strategy(tuple(tuple(w) for w in walks))


def gen_random_tree(n: int, seed: int = 0, shape: str = "uniform") -> Tree:
    """Deterministic random tree on ``n`` vertices for a given seed and shape.

    ``uniform`` decodes a uniformly random Pruefer sequence, which samples
    labelled trees uniformly. ``caterpillar`` hangs the second half of the
    vertices off a spine ``0..ceil(n/2)-1``; ``spider`` splits the non-centre
    vertices into random legs on vertex 0.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidInput(f"n must be a positive integer, got {n!r}")
    if shape not in SHAPES:
        raise InvalidInput(f"unknown shape {shape!r}; expected one of {', '.join(SHAPES)}")
    rng = random.Random(seed)
    if n == 1:
        return Tree(1, ())
    if shape == "path":
        return Tree.path(n)
    if shape == "star":
        return Tree.star(n - 1)
    if shape == "uniform":
        if n == 2:
            return Tree(2, ((0, 1),))
        g = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
        return Tree(n, tuple(g.edges()))
    if shape == "caterpillar":
        spine = (n + 1) // 2
        edges = [(i, i + 1) for i in range(spine - 1)]
        edges += [(rng.randrange(spine), v) for v in range(spine, n)]
        return Tree(n, tuple(edges))
    edges = []
    prev = 0
    for v in range(1, n):
        if v > 1 and rng.random() < 0.5:
            edges.append((prev, v))
        else:
            edges.append((0, v))
        prev = v
    return Tree(n, tuple(edges))
