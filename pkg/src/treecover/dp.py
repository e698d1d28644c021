"""Exact minimum-length coverage for robots starting at one or two vertices.

All three programs work on tuples of paths rather than walks: a tuple of paths
costs ``sum(len(P_i)) + 2 * |vertices on no path|`` and
:func:`treecover.structure.strategy_from_paths` turns it into a strategy of that
length. Ties in every minimisation go to the smaller robot count and then to
the earlier case, so backtracking is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import InvalidInput
from .structure import strategy_from_paths
from .tree import Path, Strategy, Tree, tree_path

INF = float("inf")


@dataclass(frozen=True)
class DpSolution:
    """Optimal cost with a path tuple attaining it; the strategy is built lazily."""

    tree: Tree
    cost: int
    paths: tuple[Path, ...]

    @cached_property
    def strategy(self) -> Strategy:
        return strategy_from_paths(self.tree, self.paths)


class OneSourceTable:
    """Cost table for ``j`` robots that all start at ``root``.

    ``entry(v, i, j)`` is the cheapest way for ``j`` robots standing on ``v`` to
    cover ``v`` plus the subtrees of its first ``i`` children (ascending id);
    with ``j = 0`` it is a closed tour, i.e. twice the edge count. Vertices in
    ``blocked`` and everything behind them are outside the tree being covered.
    """

    def __init__(self, tree: Tree, root: int, k: int, blocked: Iterable[int] = ()) -> None:
        tree.check_vertex(root)
        if k < 0:
            raise InvalidInput(f"robot count must be non-negative, got {k}")
        self.tree = tree
        self.root = root
        self.k = k
        barred = set(blocked)
        barred.discard(root)

        order = [root]
        children: dict[int, list[int]] = {}
        parent = {root: -1}
        idx = 0
        while idx < len(order):
            x = order[idx]
            idx += 1
            kids = [y for y in tree.adj[x] if y != parent[x] and y not in barred]
            children[x] = kids
            for y in kids:
                parent[y] = x
                order.append(y)
        self.vertices = order
        self.children = children

        rows: dict[int, list[list[float]]] = {}
        choices: dict[int, list[list[int]]] = {}
        width = k + 1
        for x in reversed(order):
            cur = [0] * width
            x_rows = [cur]
            x_choice: list[list[int]] = [[]]
            for c in children[x]:
                sub = rows[c][-1]
                detour = sub[0] + 2
                nxt = [0] * width
                pick = [0] * width
                for j in range(width):
                    best = cur[j] + detour
                    arg = 0
                    for l in range(1, j + 1):
                        cand = cur[j - l] + sub[l] + l
                        if cand < best:
                            best = cand
                            arg = l
                    nxt[j] = best
                    pick[j] = arg
                x_rows.append(nxt)
                x_choice.append(pick)
                cur = nxt
            rows[x] = x_rows
            choices[x] = x_choice
        self._rows = rows
        self._choices = choices

    def entry(self, v: int, i: int, j: int) -> int:
        return self._rows[v][i][j]

    def subtree_cost(self, v: int, j: int) -> int:
        """Cost for ``j`` robots at ``v`` to cover the whole subtree below ``v``."""
        return self._rows[v][-1][j]

    def cost(self, j: int) -> int:
        return self._rows[self.root][-1][j]

    def costs(self) -> list[int]:
        return list(self._rows[self.root][-1])

    def paths(self, j: int) -> list[Path]:
        """``j`` paths from the root attaining :meth:`cost` (none for the closed tour)."""
        if not 0 <= j <= self.k:
            raise InvalidInput(f"robot count {j} outside 0..{self.k}")
        built = [[self.root] for _ in range(j)]
        stack = [(self.root, built)]
        while stack:
            x, group = stack.pop()
            remaining = len(group)
            kids = self.children[x]
            for i in range(len(kids), 0, -1):
                l = self._choices[x][i][remaining]
                if l:
                    sub = group[remaining - l : remaining]
                    for p in sub:
                        p.append(kids[i - 1])
                    stack.append((kids[i - 1], sub))
                    remaining -= l
        return [tuple(p) for p in built]


def one_source(tree: Tree, u: int, k: int) -> dict[int, DpSolution]:
    """Optimal solutions for ``j = 1..k`` robots all starting at ``u``."""
    if not isinstance(k, int) or k < 1:
        raise InvalidInput(f"need at least one robot, got k={k!r}")
    tree.check_vertex(u)
    table = OneSourceTable(tree, u, k)
    return {j: DpSolution(tree, table.cost(j), tuple(table.paths(j))) for j in range(1, k + 1)}


def _extend(paths: list[list[int]], at: int, count: int, step: int) -> list[list[int]]:
    """Append ``step`` to the first ``count`` paths ending at ``at``; return those paths."""
    chosen = []
    for p in paths:
        if len(chosen) == count:
            break
        if p[-1] == at:
            chosen.append(p)
    assert len(chosen) == count, "backtracking found too few paths ending at the path vertex"
    for p in chosen:
        p.append(step)
    return chosen


def _graft(heads: list[list[int]], tails: list[Path]) -> None:
    """Continue ``heads[i]`` along ``tails[i]``; both start at the same vertex."""
    for p, q in zip(heads, tails):
        p.extend(q[1:])


class DestinationPathTable:
    """Costs for robots leaving ``u`` toward ``v`` that cover a prefix of the tree.

    Let ``x_1 = u, ..., x_m = v`` be the u-v path and ``T_i`` the piece hanging
    from ``x_i`` once the path edges are removed. ``self[x_i, kk, j]`` is the
    optimal cost for ``kk`` robots from ``u`` to cover ``x_1..x_i`` with
    ``T_1..T_i`` such that at least ``j`` of them end on ``x_i``; ``kk = 0``
    stands for a single robot that must come back to ``u``.
    """

    def __init__(self, tree: Tree, u: int, v: int, k: int, branch_capacity: int | None = None) -> None:
        tree.check_vertex(u)
        tree.check_vertex(v)
        if u == v:
            raise InvalidInput("destination path needs two distinct endpoints; use one_source")
        if not isinstance(k, int) or k < 1:
            raise InvalidInput(f"need at least one robot, got k={k!r}")
        self.tree = tree
        self.u = u
        self.v = v
        self.k = k
        self.gamma = tree_path(tree, u, v)
        self.index = {x: i for i, x in enumerate(self.gamma)}
        cap = k if branch_capacity is None else max(k, branch_capacity)
        self.branches = [OneSourceTable(tree, x, cap, blocked=self.gamma) for x in self.gamma]

        width = k + 1
        table: list[list[list[float]]] = []
        choice: list[list[list[int]]] = []
        first = self.branches[0]
        rows, picks = [], []
        for kk in range(width):
            row, pick = [INF] * width, [0] * width
            for j in range(kk + 1):
                best, arg = INF, -1
                for l in range(j, kk + 1):
                    cand = first.cost(kk - l)
                    if cand < best:
                        best, arg = cand, l
                row[j], pick[j] = best, arg
            rows.append(row)
            picks.append(pick)
        table.append(rows)
        choice.append(picks)

        for i in range(1, len(self.gamma)):
            prev = table[-1]
            os_i = self.branches[i].costs()
            rows, picks = [], []
            for kk in range(width):
                row, pick = [INF] * width, [0] * width
                p = prev[kk]
                # j = 0: the branch is either toured from x_{i-1} or entered by l paths
                best, arg = p[0] + os_i[0] + 2, 0
                for l in range(1, kk + 1):
                    cand = p[l] + os_i[l] + l
                    if cand < best:
                        best, arg = cand, l
                row[0], pick[0] = best, arg
                for j in range(1, kk + 1):
                    best, arg = INF, -1
                    for l in range(j, kk + 1):
                        cand = p[l] + os_i[l - j] + l
                        if cand < best:
                            best, arg = cand, l
                    row[j], pick[j] = best, arg
                rows.append(row)
                picks.append(pick)
            table.append(rows)
            choice.append(picks)
        self._table = table
        self._choice = choice

    def __getitem__(self, key: tuple[int, int, int]) -> int:
        x, kk, j = key
        if x not in self.index:
            raise InvalidInput(f"vertex {x} is not on the path from {self.u} to {self.v}")
        if not 0 <= j <= kk <= self.k:
            raise InvalidInput(f"need 0 <= j <= k' <= {self.k}, got k'={kk}, j={j}")
        return self._table[self.index[x]][kk][j]

    def paths(self, x: int, kk: int, j: int) -> list[list[int]]:
        """Paths attaining ``self[x, kk, j]``; a lone ``[u]`` when ``kk == 0``."""
        self[x, kk, j]
        top = self.index[x]
        need = [0] * (top + 1)
        need[top] = j
        for i in range(top, 0, -1):
            need[i - 1] = self._choice[i][kk][need[i]]
        gamma = self.gamma
        stay = self._choice[0][kk][need[0]]
        built = [list(p) for p in self.branches[0].paths(kk - stay)]
        built += [[gamma[0]] for _ in range(stay)]
        for i in range(1, top + 1):
            entering = need[i - 1]
            if entering == 0:
                continue
            moved = _extend(built, gamma[i - 1], entering, gamma[i])
            _graft(moved, self.branches[i].paths(entering - need[i]))
        if kk == 0:
            return [[self.u]]
        return built


def destination_path(tree: Tree, u: int, v: int, k: int) -> DestinationPathTable:
    return DestinationPathTable(tree, u, v, k)


class TwoSourcesTable:
    """Optimal costs with ``s`` robots starting at ``u`` and ``t`` at ``v``.

    ``s = 0`` (resp. ``t = 0``) means one robot at ``u`` (resp. ``v``) that
    must return to its start. Every candidate is indexed by ``i``, the last
    u-v path vertex reached along a path by a robot from ``u``.
    """

    def __init__(self, tree: Tree, u: int, v: int, k: int) -> None:
        if u == v:
            raise InvalidInput("two_sources needs distinct start vertices; use one_source")
        self.tree = tree
        self.u = u
        self.v = v
        self.k = k
        # branch tables must seat robots from both ends at once
        self.from_u = DestinationPathTable(tree, u, v, k, branch_capacity=2 * k)
        self.from_v = DestinationPathTable(tree, v, u, k, branch_capacity=2 * k)
        self.gamma = self.from_u.gamma
        self._best: dict[tuple[int, int], tuple[float, tuple]] = {}
        for s in range(k + 1):
            for t in range(k + 1):
                if s or t:
                    self._best[s, t] = self._solve(s, t)

    def _solve(self, s: int, t: int) -> tuple[float, tuple]:
        gamma, m = self.gamma, len(self.gamma)
        du, dv = self.from_u, self.from_v
        os_u = self.from_u.branches
        best: float = INF
        arg: tuple = ()
        for i in range(m):
            x = gamma[i]
            if i == 0:
                for j in range(t + 1):
                    cand = os_u[0].cost(s + j) + dv[gamma[1], t, j] + j
                    if cand < best:
                        best, arg = cand, ("first", j)
            elif i == m - 1:
                for j in range(s + 1):
                    cand = os_u[i].cost(t + j) + du[gamma[i - 1], s, j] + j
                    if cand < best:
                        best, arg = cand, ("last", j)
            else:
                cand = du[x, s, 0] + dv[gamma[i + 1], t, 0]
                if cand < best:
                    best, arg = cand, ("split", i)
                for j in range(1, s + 1):
                    for l in range(t + 1):
                        cand = du[gamma[i - 1], s, j] + os_u[i].cost(j + l) + dv[gamma[i + 1], t, l] + j + l
                        if cand < best:
                            best, arg = cand, ("meet", i, j, l)
        return best, arg

    def cost(self, s: int, t: int) -> int:
        return self._best[s, t][0]

    def paths(self, s: int, t: int) -> list[Path]:
        """Path tuple attaining :meth:`cost`: robots from ``u`` first, then from ``v``."""
        _, arg = self._best[s, t]
        gamma, m = self.gamma, len(self.gamma)
        du, dv = self.from_u, self.from_v
        os_u = self.from_u.branches
        kind = arg[0]
        if kind == "first":
            j = arg[1]
            v_paths = dv.paths(gamma[1], t, j)
            movers = _extend(v_paths, gamma[1], j, gamma[0])
            tails = os_u[0].paths(s + j)
            u_paths = [list(p) for p in tails[:s]] if s else [[self.u]]
            _graft(movers, tails[s:])
        elif kind == "last":
            j = arg[1]
            u_paths = du.paths(gamma[m - 2], s, j)
            movers = _extend(u_paths, gamma[m - 2], j, gamma[m - 1])
            tails = os_u[m - 1].paths(t + j)
            v_paths = [list(p) for p in tails[:t]] if t else [[self.v]]
            _graft(movers, tails[t:])
        elif kind == "split":
            i = arg[1]
            u_paths = du.paths(gamma[i], s, 0)
            v_paths = dv.paths(gamma[i + 1], t, 0)
        else:
            _, i, j, l = arg
            u_paths = du.paths(gamma[i - 1], s, j)
            v_paths = dv.paths(gamma[i + 1], t, l)
            movers = _extend(u_paths, gamma[i - 1], j, gamma[i])
            movers += _extend(v_paths, gamma[i + 1], l, gamma[i])
            _graft(movers, os_u[i].paths(j + l))
        return [tuple(p) for p in u_paths + v_paths]

    def solution(self, s: int, t: int) -> DpSolution:
        return DpSolution(self.tree, self.cost(s, t), tuple(self.paths(s, t)))


def two_sources(tree: Tree, u: int, v: int, k: int) -> dict[tuple[int, int], DpSolution]:
    """Optimal solutions for every split ``(s, t)`` with ``0 <= s, t <= k``, not both zero."""
    if not isinstance(k, int) or k < 1:
        raise InvalidInput(f"need at least one robot, got k={k!r}")
    tree.check_vertex(u)
    tree.check_vertex(v)
    table = TwoSourcesTable(tree, u, v, k)
    return {key: table.solution(*key) for key in table._best}
