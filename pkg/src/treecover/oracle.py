"""Brute-force ground truth for small instances.

The joint-state searches know nothing about paths or forests: they explore
robot positions together with the set of vertices seen so far. Robots sharing a
start (and the same return obligation) are interchangeable, so their positions
are kept sorted inside a state.
"""

from __future__ import annotations

import heapq
import itertools
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInput, PreconditionViolation, ResourceLimitExceeded
from .structure import cost_of_paths
from .tree import Path, Strategy, Tree, tree_path

MAX_STATES = 5_000_000
MAX_VERTICES = 20


@dataclass(frozen=True)
class OracleResult:
    cost: int
    strategy: Strategy
    states: int


class _Slots:
    """Robots grouped into interchangeable classes; one slot per robot."""

    def __init__(self, starts: Sequence[int], closed: Iterable[int]) -> None:
        closed = set(closed)
        groups: dict[tuple[int, bool], list[int]] = {}
        for r, s in enumerate(starts):
            groups.setdefault((s, r in closed), []).append(r)
        self.robots: list[int] = []
        self.segments: list[tuple[int, int]] = []
        self.home: list[int] = []
        self.must_return: list[bool] = []
        for (start, back), members in groups.items():
            lo = len(self.robots)
            self.robots.extend(members)
            self.segments.append((lo, len(self.robots)))
            self.home.extend([start] * len(members))
            self.must_return.extend([back] * len(members))
        self.initial = tuple(self.home)
        self.returning = [i for i, b in enumerate(self.must_return) if b]

    def canon(self, pos: Sequence[int]) -> tuple[int, ...]:
        if len(self.segments) == 1:
            return tuple(sorted(pos))
        out: list[int] = []
        for lo, hi in self.segments:
            out.extend(sorted(pos[lo:hi]))
        return tuple(out)

    def home_ok(self, pos: Sequence[int]) -> bool:
        return all(pos[i] == self.home[i] for i in self.returning)


def _check_args(tree: Tree, starts: Sequence[int], p: int | None, closed: Iterable[int]) -> None:
    if not starts:
        raise InvalidInput("need at least one robot")
    for s in starts:
        tree.check_vertex(s)
    for r in closed:
        if not 0 <= r < len(starts):
            raise InvalidInput(f"closed robot index {r} out of range")
    if p is not None and p < 1:
        raise InvalidInput(f"rendezvous period must be positive, got {p}")


def _replay(slots: _Slots, steps: list, synchronous: bool) -> Strategy:
    """Rebuild per-robot walks from slot-level moves recorded by a search."""
    k = len(slots.robots)
    where = {r: slots.home[i] for i, r in enumerate(slots.robots)}
    walks: dict[int, list[int]] = {r: [where[r]] for r in slots.robots}
    for move in steps:
        order: list[int] = []
        for lo, hi in slots.segments:
            order.extend(sorted(slots.robots[lo:hi], key=lambda r: (where[r], r)))
        if synchronous:
            for slot in range(k):
                r = order[slot]
                where[r] = move[slot]
                walks[r].append(where[r])
        else:
            slot, target = move
            r = order[slot]
            where[r] = target
            walks[r].append(target)
    return Strategy(tuple(tuple(walks[r]) for r in range(k)))


def _trace(parent: dict, state) -> list:
    steps = []
    while parent[state] is not None:
        state, move = parent[state]
        steps.append(move)
    steps.reverse()
    return steps


def _limit(tree: Tree, seen: int, max_states: int) -> None:
    if seen > max_states:
        raise ResourceLimitExceeded(f"search exceeded {max_states} states on a {tree.n}-vertex tree")


def _guard(tree: Tree, max_vertices: int) -> None:
    if tree.n > max_vertices:
        raise ResourceLimitExceeded(
            f"exhaustive search is limited to {max_vertices} vertices, instance has {tree.n}"
        )


def _length_async(tree: Tree, slots: _Slots, max_states: int) -> OracleResult:
    # without rendezvous only the order of moves matters, so move one robot at a time
    full = (1 << tree.n) - 1
    adj = tree.adj
    k = len(slots.robots)
    start_mask = 0
    for v in slots.home:
        start_mask |= 1 << v
    start = (slots.initial, start_mask)
    parent: dict = {start: None}
    frontier = [start]
    depth = 0
    while frontier:
        nxt = []
        for state in frontier:
            pos, mask = state
            if mask == full and slots.home_ok(pos):
                steps = _trace(parent, state)
                return OracleResult(depth, _replay(slots, steps, synchronous=False), len(parent))
            for slot in range(k):
                here = pos[slot]
                if slot and pos[slot - 1] == here and any(lo < slot < hi for lo, hi in slots.segments):
                    continue  # same class, same vertex: the earlier slot already covers these moves
                for y in adj[here]:
                    moved = list(pos)
                    moved[slot] = y
                    child = (slots.canon(moved), mask | (1 << y))
                    if child not in parent:
                        parent[child] = (state, (slot, y))
                        nxt.append(child)
            _limit(tree, len(parent), max_states)
        frontier = nxt
        depth += 1
    raise AssertionError("covering strategy always exists on a connected tree")


def _sync_moves(tree: Tree, pos: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    return itertools.product(*[(x,) + tree.adj[x] for x in pos])


def _time_search(tree: Tree, slots: _Slots, p: int | None, max_states: int) -> OracleResult:
    full = (1 << tree.n) - 1
    mask0 = 0
    for v in slots.home:
        mask0 |= 1 << v
    start = (slots.initial, mask0, 0)
    parent: dict = {start: None}
    queue = deque([(start, 0)])
    while queue:
        state, depth = queue.popleft()
        pos, mask, since = state
        if mask == full and slots.home_ok(pos) and (p is None or len(set(pos)) == 1):
            steps = _trace(parent, state)
            return OracleResult(depth, _replay(slots, steps, synchronous=True), len(parent))
        for move in _sync_moves(tree, pos):
            if p is None:
                gap = 0
            else:
                gap = 0 if len(set(move)) == 1 else since + 1
                if gap >= p:
                    continue  # the next meeting would come more than p steps after the last
            new_mask = mask
            for y in move:
                new_mask |= 1 << y
            child = (slots.canon(move), new_mask, gap)
            if child not in parent:
                parent[child] = (state, move)
                queue.append((child, depth + 1))
        _limit(tree, len(parent), max_states)
    raise PreconditionViolation("no covering strategy satisfies the rendezvous period")


def _length_rendezvous(tree: Tree, slots: _Slots, p: int, max_states: int) -> OracleResult:
    full = (1 << tree.n) - 1
    mask0 = 0
    for v in slots.home:
        mask0 |= 1 << v
    start = (slots.initial, mask0, 0)
    best = {start: 0}
    parent: dict = {start: None}
    heap = [(0, start)]
    while heap:
        cost, state = heapq.heappop(heap)
        if cost > best[state]:
            continue
        pos, mask, since = state
        if mask == full and slots.home_ok(pos) and len(set(pos)) == 1:
            steps = _trace(parent, state)
            return OracleResult(cost, _replay(slots, steps, synchronous=True), len(parent))
        for move in _sync_moves(tree, pos):
            step_cost = sum(1 for a, b in zip(pos, move) if a != b)
            if step_cost == 0:
                continue  # standing still only ages the rendezvous window
            gap = 0 if len(set(move)) == 1 else since + 1
            if gap >= p:
                continue
            new_mask = mask
            for y in move:
                new_mask |= 1 << y
            child = (slots.canon(move), new_mask, gap)
            c = cost + step_cost
            if c < best.get(child, c + 1):
                best[child] = c
                parent[child] = (state, move)
                heapq.heappush(heap, (c, child))
        _limit(tree, len(best), max_states)
    raise PreconditionViolation("no covering strategy satisfies the rendezvous period")


def solve_time(
    tree: Tree,
    starts: Sequence[int],
    rendezvous_p: int | None = None,
    *,
    closed: Iterable[int] = (),
    max_states: int = MAX_STATES,
    max_vertices: int = MAX_VERTICES,
) -> OracleResult:
    """Minimum cover time by breadth-first search over synchronous joint moves."""
    closed = tuple(closed)
    _check_args(tree, starts, rendezvous_p, closed)
    _guard(tree, max_vertices)
    return _time_search(tree, _Slots(starts, closed), rendezvous_p, max_states)


def solve_length(
    tree: Tree,
    starts: Sequence[int],
    rendezvous_p: int | None = None,
    *,
    closed: Iterable[int] = (),
    max_states: int = MAX_STATES,
    max_vertices: int = MAX_VERTICES,
) -> OracleResult:
    """Minimum cover length by least-cost search; ``closed`` robots must end at their start."""
    closed = tuple(closed)
    _check_args(tree, starts, rendezvous_p, closed)
    _guard(tree, max_vertices)
    slots = _Slots(starts, closed)
    if rendezvous_p is None or len(starts) == 1:
        return _length_async(tree, slots, max_states)
    return _length_rendezvous(tree, slots, rendezvous_p, max_states)


def oracle_time(tree: Tree, starts: Sequence[int], rendezvous_p: int | None = None, **kw) -> int:
    return solve_time(tree, starts, rendezvous_p, **kw).cost


def oracle_length(tree: Tree, starts: Sequence[int], rendezvous_p: int | None = None, **kw) -> int:
    return solve_length(tree, starts, rendezvous_p, **kw).cost


def best_path_tuple(tree: Tree, starts: Sequence[int], closed: Iterable[int] = ()) -> tuple[int, tuple[Path, ...]]:
    """Exhaustive minimum of the path-tuple cost over paths leaving each start."""
    closed = set(closed)
    _check_args(tree, starts, None, closed)
    options = []
    for r, s in enumerate(starts):
        if r in closed:
            options.append([(s,)])
        else:
            options.append([tree_path(tree, s, x) for x in range(tree.n)])
    masks = [[(len(p) - 1, sum(1 << v for v in p)) for p in opts] for opts in options]
    best = None
    best_idx = None
    for idx in itertools.product(*[range(len(o)) for o in options]):
        total = 0
        mask = 0
        for r, i in enumerate(idx):
            length, m = masks[r][i]
            total += length
            mask |= m
        total += 2 * (tree.n - bin(mask).count("1"))
        if best is None or total < best:
            best, best_idx = total, idx
    paths = tuple(options[r][i] for r, i in enumerate(best_idx))
    assert cost_of_paths(tree, paths) == best
    return best, paths


def oracle_paths_mlcp(tree: Tree, starts: Sequence[int], closed: Iterable[int] = ()) -> int:
    return best_path_tuple(tree, starts, closed)[0]


def check_three_partition(a: Sequence[int], b: int) -> None:
    if not isinstance(b, int) or b < 1:
        raise InvalidInput(f"B must be a positive integer, got {b!r}")
    if len(a) == 0 or len(a) % 3:
        raise InvalidInput(f"|A| must be a positive multiple of 3, got {len(a)}")
    m = len(a) // 3
    for x in a:
        if not (isinstance(x, int) and 4 * x > b and 2 * x < b):
            raise InvalidInput(f"element {x!r} is not strictly between B/4 and B/2 (B={b})")
    if sum(a) != m * b:
        raise InvalidInput(f"sum of A is {sum(a)}, expected m*B = {m * b}")


def three_partition_solve(a: Sequence[int], b: int) -> list[tuple[int, int, int]] | None:
    """Split ``a`` into triples summing to ``b``, or ``None`` when impossible."""
    a = list(a)
    check_three_partition(a, b)
    left = Counter(a)

    def place() -> list[tuple[int, int, int]] | None:
        present = [v for v, c in left.items() if c]
        if not present:
            return []
        x = max(present)
        left[x] -= 1
        for y in sorted((v for v, c in left.items() if c and v <= x), reverse=True):
            z = b - x - y
            if z > y:
                break
            left[y] -= 1
            if left[z] > 0:
                left[z] -= 1
                rest = place()
                if rest is not None:
                    return [(x, y, z)] + rest
                left[z] += 1
            left[y] += 1
        left[x] += 1
        return None

    return place()
