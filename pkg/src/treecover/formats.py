"""Line-oriented instance and strategy files, plus DOT export.

Instance file, one directive per line; ``#`` starts a comment::

    problem mlcp|mtcp|mlcpr|mtcpr
    vertices N            # or: labels L0 L1 ... (ids follow label order)
    k K
    starts S1 ... SK
    p P                   # required for mlcpr/mtcpr, rejected otherwise
    budget B              # optional length (mlcp*) or time (mtcp*) bound
    edge X Y              # N-1 times

Strategy file: one ``walk V1 V2 ...`` line per robot, vertex ids only.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path as FsPath

from .errors import InvalidInput, ParseError
from .structure import decompose_walk
from .tree import Strategy, Tree

PROBLEMS = ("mlcp", "mtcp", "mlcpr", "mtcpr")
RENDEZVOUS = ("mlcpr", "mtcpr")


@dataclass(frozen=True)
class Instance:
    problem: str
    tree: Tree
    starts: tuple[int, ...]
    p: int | None = None
    budget: int | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.problem not in PROBLEMS:
            raise InvalidInput(f"unknown problem {self.problem!r}")
        if not self.starts:
            raise InvalidInput("an instance needs at least one robot")
        for s in self.starts:
            self.tree.check_vertex(s)
        if (self.p is not None) != (self.problem in RENDEZVOUS):
            raise InvalidInput(f"problem {self.problem} {'needs' if self.p is None else 'takes no'} rendezvous period p")
        if self.p is not None and self.p < 1:
            raise InvalidInput(f"rendezvous period must be positive, got {self.p}")
        if self.budget is not None and self.budget < 0:
            raise InvalidInput(f"budget must be non-negative, got {self.budget}")
        if self.labels is not None and len(self.labels) != self.tree.n:
            raise InvalidInput(f"{len(self.labels)} labels for {self.tree.n} vertices")

    @property
    def k(self) -> int:
        return len(self.starts)

    @property
    def rendezvous(self) -> bool:
        return self.problem in RENDEZVOUS

    @property
    def objective(self) -> str:
        return "length" if self.problem.startswith("mlcp") else "time"

    def name(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)


def format_instance(inst: Instance) -> str:
    lines = [f"problem {inst.problem}"]
    if inst.labels is not None:
        lines.append("labels " + " ".join(inst.labels))
    else:
        lines.append(f"vertices {inst.tree.n}")
    lines.append(f"k {inst.k}")
    lines.append("starts " + " ".join(inst.name(s) for s in inst.starts))
    if inst.p is not None:
        lines.append(f"p {inst.p}")
    if inst.budget is not None:
        lines.append(f"budget {inst.budget}")
    lines.extend(f"edge {inst.name(a)} {inst.name(b)}" for a, b in inst.tree.edges)
    return "\n".join(lines) + "\n"


def instance_digest(inst: Instance) -> str:
    return hashlib.sha256(format_instance(inst).encode()).hexdigest()[:16]


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with 1-based columns, comment stripped."""
    text = line.split("#", 1)[0]
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((text[i:j], i + 1))
        i = j
    return out


def _int(token: str, col: int, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", lineno, col) from None


SINGLE = ("problem", "vertices", "labels", "k", "starts", "p", "budget")


def parse_instance(text: str) -> Instance:
    seen: dict[str, int] = {}
    fields: dict[str, list[tuple[str, int]]] = {}
    edge_lines: list[tuple[int, list[tuple[str, int]]]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _tokens(line)
        if not toks:
            continue
        key, col = toks[0]
        args = toks[1:]
        if key == "edge":
            if len(args) != 2:
                raise ParseError("edge takes exactly two vertices", lineno, col)
            edge_lines.append((lineno, args))
            continue
        if key not in SINGLE:
            raise ParseError(f"unknown directive {key!r}", lineno, col)
        if key in seen:
            raise ParseError(f"duplicate {key!r} (first on line {seen[key]})", lineno, col)
        if not args:
            raise ParseError(f"{key!r} needs a value", lineno, col + len(key))
        if key not in ("labels", "starts") and len(args) != 1:
            raise ParseError(f"{key!r} takes one value", lineno, args[1][1])
        if key == "problem" and args[0][0] not in PROBLEMS:
            raise ParseError(f"problem must be one of {', '.join(PROBLEMS)}, got {args[0][0]!r}", lineno, args[0][1])
        if key in ("vertices", "k", "p", "budget"):
            _int(args[0][0], args[0][1], lineno, key)
        seen[key] = lineno
        fields[key] = args

    last = len(text.splitlines()) + 1
    for key in ("problem", "k", "starts"):
        if key not in fields:
            raise ParseError(f"missing {key!r} directive", last)
    problem = fields["problem"][0][0]

    labels = None
    if "labels" in fields:
        labels = tuple(t for t, _ in fields["labels"])
        if len(set(labels)) != len(labels):
            raise ParseError("labels must be distinct", seen["labels"])
        n = len(labels)
        if "vertices" in fields:
            tok, col = fields["vertices"][0]
            if _int(tok, col, seen["vertices"], "vertices") != n:
                raise ParseError(f"vertices disagrees with {n} labels", seen["vertices"], col)
    elif "vertices" in fields:
        tok, col = fields["vertices"][0]
        n = _int(tok, col, seen["vertices"], "vertices")
        if n < 1:
            raise ParseError("vertices must be positive", seen["vertices"], col)
    else:
        raise ParseError("missing 'vertices' or 'labels' directive", last)
    index = {name: i for i, name in enumerate(labels)} if labels else None

    def vertex(token: str, col: int, lineno: int) -> int:
        if index is not None:
            if token not in index:
                raise ParseError(f"unknown vertex label {token!r}", lineno, col)
            return index[token]
        v = _int(token, col, lineno, "vertex")
        if not 0 <= v < n:
            raise ParseError(f"vertex {v} outside 0..{n - 1}", lineno, col)
        return v

    edges = []
    for lineno, args in edge_lines:
        a, b = (vertex(t, c, lineno) for t, c in args)
        edges.append((a, b))
    try:
        tree = Tree(n, tuple(edges))
    except InvalidInput as exc:
        raise ParseError(f"edges do not form a tree: {exc}", edge_lines[-1][0] if edge_lines else last) from None

    tok, col = fields["k"][0]
    k = _int(tok, col, seen["k"], "k")
    starts = tuple(vertex(t, c, seen["starts"]) for t, c in fields["starts"])
    if k != len(starts):
        raise ParseError(f"k is {k} but {len(starts)} starts are listed", seen["starts"])
    p = budget = None
    if "p" in fields:
        tok, col = fields["p"][0]
        p = _int(tok, col, seen["p"], "p")
    if "budget" in fields:
        tok, col = fields["budget"][0]
        budget = _int(tok, col, seen["budget"], "budget")
    try:
        return Instance(problem, tree, starts, p, budget, labels)
    except InvalidInput as exc:
        line = seen.get("p", seen["problem"])
        raise ParseError(str(exc), line) from None


def format_strategy(s: Strategy) -> str:
    return "".join("walk " + " ".join(map(str, w)) + "\n" for w in s.walks)


def parse_strategy(text: str) -> Strategy:
    walks = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _tokens(line)
        if not toks:
            continue
        key, col = toks[0]
        if key != "walk":
            raise ParseError(f"expected 'walk', got {key!r}", lineno, col)
        if len(toks) == 1:
            raise ParseError("a walk needs at least one vertex", lineno, col + len(key))
        walks.append(tuple(_int(t, c, lineno, "vertex") for t, c in toks[1:]))
    if not walks:
        raise ParseError("strategy file contains no walks", 1)
    return Strategy(tuple(walks))


def read_instance(path: str | FsPath) -> Instance:
    return parse_instance(FsPath(path).read_text())


def read_strategy(path: str | FsPath) -> Strategy:
    return parse_strategy(FsPath(path).read_text())


def write_text(path: str | FsPath, text: str) -> None:
    FsPath(path).write_text(text)


PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan")


def to_dot(inst: Instance, strategy: Strategy | None = None) -> str:
    """Graphviz description of the instance tree.

    With a strategy, edges a robot crosses an odd number of times are drawn
    solid in that robot's colour and edges it crosses an even number of times
    dashed; start vertices are boxes.
    """
    lines = ["graph tree {", "  node [shape=circle];"]
    starts = set(inst.starts)
    for v in range(inst.tree.n):
        shape = ", shape=box" if v in starts else ""
        lines.append(f'  {v} [label="{inst.name(v)}"{shape}];')
    style: dict[tuple[int, int], list[str]] = {}
    if strategy is not None:
        for r, w in enumerate(strategy.walks):
            d = decompose_walk(inst.tree, w)
            colour = PALETTE[r % len(PALETTE)]
            for e in sorted(d.path_edges):
                style.setdefault(e, []).append(f"{colour}:solid")
            for e in sorted(d.forest_edges):
                style.setdefault(e, []).append(f"{colour}:dashed")
    for a, b in inst.tree.edges:
        marks = style.get((a, b))
        if not marks:
            attr = ' [color="gray"]' if strategy is not None else ""
        else:
            colours = ":".join(m.split(":")[0] for m in marks)
            dashed = all(m.endswith("dashed") for m in marks)
            attr = f' [color="{colours}", style={"dashed" if dashed else "solid"}, penwidth=2]'
        lines.append(f"  {a} -- {b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
