"""Trees, walks and strategies, plus the time/length metrics of a strategy.

Vertices are dense integer ids ``0..n-1``. A walk is a tuple of vertex ids in
which consecutive entries are adjacent or equal (a stay move). A finished robot
is treated as standing on the last vertex of its walk forever after.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidInput

Walk = tuple[int, ...]
Path = tuple[int, ...]
Edge = tuple[int, int]


def edge_key(a: int, b: int) -> Edge:
    """Normalised (smaller id first) form of an undirected edge."""
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Tree:
    """Undirected tree with unit-length edges on vertices ``0..n-1``."""

    n: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidInput(f"vertex count must be a positive integer, got {self.n!r}")
        normalised = []
        for e in self.edges:
            a, b = e
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise InvalidInput(f"edge {e} references a vertex outside 0..{self.n - 1}")
            if a == b:
                raise InvalidInput(f"self-loop at vertex {a}")
            normalised.append(edge_key(a, b))
        normalised.sort()
        for x, y in zip(normalised, normalised[1:]):
            if x == y:
                raise InvalidInput(f"duplicate edge {x}")
        if len(normalised) != self.n - 1:
            raise InvalidInput(f"a tree on {self.n} vertices needs {self.n - 1} edges, got {len(normalised)}")
        object.__setattr__(self, "edges", tuple(normalised))
        # n-1 distinct edges plus connectivity implies acyclic
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != self.n:
            raise InvalidInput("edge set is not connected")

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: int | None = None) -> Tree:
        edge_list = [(int(a), int(b)) for a, b in edges]
        if n is None:
            n = 1 + max((max(e) for e in edge_list), default=0)
        return cls(n, tuple(edge_list))

    @classmethod
    def path(cls, n: int) -> Tree:
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def star(cls, leaves: int) -> Tree:
        return cls(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        """Neighbour lists in ascending id order."""
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, a: int, b: int) -> bool:
        return edge_key(a, b) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise InvalidInput(f"vertex {v!r} is not in 0..{self.n - 1}")

    def distances(self, source: int) -> list[int]:
        """BFS distances from ``source`` to every vertex."""
        self.check_vertex(source)
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def eccentricity(self, v: int) -> int:
        return max(self.distances(v))


def check_walk(tree: Tree, walk: Sequence[int]) -> None:
    """Raise :class:`InvalidInput` unless ``walk`` is a walk on ``tree``."""
    if len(walk) == 0:
        raise InvalidInput("a walk must contain at least one vertex")
    for v in walk:
        tree.check_vertex(v)
    for i, (a, b) in enumerate(zip(walk, walk[1:])):
        if a != b and not tree.has_edge(a, b):
            raise InvalidInput(f"step {i}: {a} -> {b} is neither a stay nor a tree edge")


def check_path(tree: Tree, path: Sequence[int]) -> None:
    """Raise :class:`InvalidInput` unless ``path`` is a simple path on ``tree``."""
    check_walk(tree, path)
    if len(set(path)) != len(path):
        raise InvalidInput(f"path {tuple(path)} repeats a vertex")


def walk_time(walk: Sequence[int]) -> int:
    """Number of synchronous steps the walk takes."""
    return len(walk) - 1


def walk_length(walk: Sequence[int]) -> int:
    """Number of steps that actually change position."""
    return sum(1 for a, b in zip(walk, walk[1:]) if a != b)


@dataclass(frozen=True)
class Strategy:
    """One walk per robot; robot ``i`` starts at ``walks[i][0]``."""

    walks: tuple[Walk, ...]

    def __post_init__(self) -> None:
        walks = tuple(tuple(int(v) for v in w) for w in self.walks)
        if not walks:
            raise InvalidInput("a strategy needs at least one walk")
        if any(len(w) == 0 for w in walks):
            raise InvalidInput("every walk must contain at least one vertex")
        object.__setattr__(self, "walks", walks)

    @property
    def k(self) -> int:
        return len(self.walks)

    @property
    def starts(self) -> tuple[int, ...]:
        return tuple(w[0] for w in self.walks)

    @property
    def ends(self) -> tuple[int, ...]:
        return tuple(w[-1] for w in self.walks)

    def check(self, tree: Tree) -> None:
        for i, w in enumerate(self.walks):
            try:
                check_walk(tree, w)
            except InvalidInput as exc:
                raise InvalidInput(f"walk {i}: {exc}") from None

    def padded(self) -> list[Walk]:
        """Walks extended to a common length by repeating their final vertex."""
        horizon = max(len(w) for w in self.walks)
        return [w + (w[-1],) * (horizon - len(w)) for w in self.walks]


def strategy_time(s: Strategy) -> int:
    return max(walk_time(w) for w in s.walks)


def strategy_length(s: Strategy) -> int:
    return sum(walk_length(w) for w in s.walks)


def uncovered(tree: Tree, s: Strategy) -> list[int]:
    """Vertices of ``tree`` that no walk visits, ascending."""
    seen = [False] * tree.n
    for w in s.walks:
        for v in w:
            tree.check_vertex(v)
            seen[v] = True
    return [v for v in range(tree.n) if not seen[v]]


def is_covering(tree: Tree, s: Strategy) -> bool:
    return not uncovered(tree, s)


def rendezvous_violation(s: Strategy, p: int) -> int | None:
    """First time index at which the rendezvous rule breaks, or ``None``.

    Meetings are the time indices where every padded walk is on the same vertex.
    Time 0 opens the first window even when the starts differ, every window
    between consecutive meetings spans at most ``p`` steps, and the final index
    must be a meeting. The returned index is the first step that a window
    overran, or the final index when the robots do not end together.
    """
    if p < 1:
        raise InvalidInput(f"rendezvous period must be positive, got {p}")
    padded = s.padded()
    horizon = len(padded[0])
    last_meet = 0
    for j in range(horizon):
        if all(w[j] == padded[0][j] for w in padded):
            last_meet = j
        elif j - last_meet >= p:
            return j
    if last_meet != horizon - 1:
        return horizon - 1
    return None


def rendezvous_ok(s: Strategy, p: int) -> bool:
    return rendezvous_violation(s, p) is None


def tree_path(tree: Tree, u: int, v: int) -> Path:
    """The unique simple path from ``u`` to ``v``."""
    tree.check_vertex(u)
    tree.check_vertex(v)
    parent = [-1] * tree.n
    parent[v] = v
    queue = deque([v])
    while queue and parent[u] < 0:
        x = queue.popleft()
        for y in tree.adj[x]:
            if parent[y] < 0:
                parent[y] = x
                queue.append(y)
    out = [u]
    while out[-1] != v:
        out.append(parent[out[-1]])
    return tuple(out)


@dataclass(frozen=True)
class Branch:
    """A connected piece of the tree hanging from ``root``."""

    root: int
    vertices: frozenset[int]


def component(tree: Tree, root: int, blocked: Iterable[int] = ()) -> list[int]:
    """Vertices reachable from ``root`` without entering ``blocked``, in BFS order."""
    barred = set(blocked)
    barred.discard(root)
    order = [root]
    seen = {root}
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in tree.adj[x]:
            if y not in seen and y not in barred:
                seen.add(y)
                order.append(y)
    return order


def split_along_path(tree: Tree, gamma: Sequence[int]) -> list[Branch]:
    """Components of the tree once the edges of ``gamma`` are removed, in path order."""
    check_path(tree, gamma)
    on_path = set(gamma)
    return [Branch(x, frozenset(component(tree, x, on_path))) for x in gamma]
