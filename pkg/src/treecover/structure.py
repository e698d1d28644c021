"""Path/forest structure of covering strategies.

A minimum-length strategy splits every walk into a path travelled once and a
forest travelled twice, so its length only depends on the paths:
``sum(len(P_i)) + 2 * |vertices on no path|``. This module evaluates that cost,
turns any tuple of paths into a strategy achieving it, and checks the
structural conditions on an arbitrary strategy.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .errors import PreconditionViolation
from .tree import Edge, Strategy, Tree, check_path, edge_key, is_covering, tree_path, uncovered


@dataclass(frozen=True)
class WalkDecomposition:
    """Edges of one walk split by traversal parity.

    ``path_edges`` holds the odd-count edges, which in a tree are exactly the
    edges of the path between the walk's endpoints; ``path_vertices`` is that
    path. ``forest_edges`` holds the edges traversed a positive even number of
    times.
    """

    path_vertices: tuple[int, ...]
    path_edges: frozenset[Edge]
    forest_edges: frozenset[Edge]
    traversal_counts: dict[Edge, int] = field(compare=False)


def traversals(walk: Sequence[int]) -> list[tuple[int, int]]:
    """Directed moves of a walk, stays dropped."""
    return [(a, b) for a, b in zip(walk, walk[1:]) if a != b]


def decompose_walk(tree: Tree, walk: Sequence[int]) -> WalkDecomposition:
    counts = Counter(edge_key(a, b) for a, b in traversals(walk))
    return WalkDecomposition(
        path_vertices=tree_path(tree, walk[0], walk[-1]),
        path_edges=frozenset(e for e, c in counts.items() if c % 2 == 1),
        forest_edges=frozenset(e for e, c in counts.items() if c % 2 == 0),
        traversal_counts=dict(counts),
    )


def _forest_components(edges: frozenset[Edge]) -> list[frozenset[int]]:
    nbrs: dict[int, list[int]] = {}
    for a, b in edges:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    seen: set[int] = set()
    out = []
    for start in sorted(nbrs):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(frozenset(comp))
    return out


@dataclass(frozen=True)
class StructureReport:
    """Violations of the four path/forest conditions, one tuple per condition.

    Each witness is a tuple ``(robot, ...)`` naming the robot and the offending
    edge, component or vertex. An empty tuple means the condition holds.
    """

    path_once: tuple = ()
    forest_twice: tuple = ()
    forest_anchor: tuple = ()
    forest_overlap: tuple = ()

    CONDITIONS = ("path_once", "forest_twice", "forest_anchor", "forest_overlap")

    @property
    def ok(self) -> bool:
        return not any(getattr(self, name) for name in self.CONDITIONS)

    def failed(self) -> list[str]:
        return [name for name in self.CONDITIONS if getattr(self, name)]


def verify_structure(tree: Tree, s: Strategy) -> StructureReport:
    """Check the path/forest conditions that every minimum-length strategy meets.

    path_once: every path edge is traversed exactly once by its robot.
    forest_twice: every forest edge is traversed exactly twice by its robot and
    never by another robot.
    forest_anchor: every forest component touches the union of path vertices in
    exactly one vertex.
    forest_overlap: forests of different robots only share path vertices.
    Passing is necessary for optimality, not sufficient.
    """
    s.check(tree)
    if not is_covering(tree, s):
        raise PreconditionViolation(f"strategy does not cover vertices {uncovered(tree, s)}")
    decs = [decompose_walk(tree, w) for w in s.walks]
    on_paths = set().union(*(d.path_vertices for d in decs))

    path_once = []
    forest_twice = []
    for i, d in enumerate(decs):
        for e in sorted(d.path_edges):
            if d.traversal_counts[e] != 1:
                path_once.append((i, e, d.traversal_counts[e]))
        for e in sorted(d.forest_edges):
            if d.traversal_counts[e] != 2:
                forest_twice.append((i, e, d.traversal_counts[e]))
            for j, other in enumerate(decs):
                if j != i and e in other.traversal_counts:
                    forest_twice.append((i, e, "also traversed by", j))

    forest_anchor = []
    forest_vertices = []
    for i, d in enumerate(decs):
        comps = _forest_components(d.forest_edges)
        for comp in comps:
            touching = len(comp & on_paths)
            if touching != 1:
                forest_anchor.append((i, tuple(sorted(comp)), touching))
        forest_vertices.append(frozenset().union(*comps))

    forest_overlap = []
    for i in range(len(decs)):
        for j in range(i + 1, len(decs)):
            for v in sorted((forest_vertices[i] & forest_vertices[j]) - on_paths):
                forest_overlap.append((i, j, v))

    return StructureReport(
        tuple(path_once), tuple(forest_twice), tuple(forest_anchor), tuple(forest_overlap)
    )


@dataclass(frozen=True)
class DirectionReport:
    """Edges shared by several robots but crossed in both directions."""

    conflicts: tuple[Edge, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.conflicts


def check_edge_directions(tree: Tree, s: Strategy) -> DirectionReport:
    s.check(tree)
    robots: dict[Edge, set[int]] = {}
    directions: dict[Edge, set[tuple[int, int]]] = {}
    for i, w in enumerate(s.walks):
        for a, b in traversals(w):
            e = edge_key(a, b)
            robots.setdefault(e, set()).add(i)
            directions.setdefault(e, set()).add((a, b))
    bad = [e for e in sorted(robots) if len(robots[e]) >= 2 and len(directions[e]) == 2]
    return DirectionReport(tuple(bad))


def cost_of_paths(tree: Tree, paths: Sequence[Sequence[int]]) -> int:
    """Length of the best strategy built on ``paths``: path lengths plus two per vertex off every path."""
    on_paths: set[int] = set()
    total = 0
    for p in paths:
        check_path(tree, p)
        on_paths.update(p)
        total += len(p) - 1
    return total + 2 * (tree.n - len(on_paths))


def _euler_tour(tree: Tree, root: int, claimed: list[bool]) -> list[int]:
    """Closed depth-first tour from ``root`` over unclaimed vertices, claiming them.

    Children are visited in ascending id order. The returned list excludes the
    leading ``root`` and ends with ``root`` whenever it is non-empty.
    """
    out: list[int] = []
    stack = [(root, iter(tree.adj[root]))]
    while stack:
        x, it = stack[-1]
        for y in it:
            if not claimed[y]:
                claimed[y] = True
                out.append(y)
                stack.append((y, iter(tree.adj[y])))
                break
        else:
            stack.pop()
            if stack:
                out.append(stack[-1][0])
    return out


def strategy_from_paths(tree: Tree, paths: Sequence[Sequence[int]]) -> Strategy:
    """Covering strategy whose length equals :func:`cost_of_paths`.

    Robot ``i`` walks ``paths[i]`` and, at each vertex of it, tours every
    vertex that lies on no path and is not yet claimed, reached without
    crossing another path vertex. Robots claim in index order and, along one
    path, earlier vertices claim first.
    """
    if not paths:
        raise PreconditionViolation("need at least one path")
    claimed = [False] * tree.n
    for p in paths:
        check_path(tree, p)
        for v in p:
            claimed[v] = True
    walks = []
    for p in paths:
        walk: list[int] = []
        for v in p:
            walk.append(v)
            walk.extend(_euler_tour(tree, v, claimed))
        walks.append(tuple(walk))
    return Strategy(tuple(walks))
