"""Command-line front end: ``treecover {solve,oracle,verify,gen,witness,bench}``.

Exit codes: 0 success, 1 verification failed, 2 bad command line, 3 parse
error, 4 invalid input or unsupported request, 5 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Sequence

from . import dp, hardness, oracle
from .errors import InvalidInput, ParseError, PreconditionViolation, ResourceLimitExceeded
from .formats import (
    Instance,
    format_instance,
    format_strategy,
    instance_digest,
    read_instance,
    read_strategy,
    to_dot,
    write_text,
)
from .structure import check_edge_directions, verify_structure
from .tree import Strategy, rendezvous_violation, strategy_length, strategy_time, uncovered

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INPUT = 4
EXIT_LIMIT = 5

HARD = {
    "mtcp": "use oracle: MTCP is NP-hard",
    "mtcpr": "use oracle: MTCPR is NP-hard",
    "mlcpr": "use oracle: MLCPR is NP-hard",
}


class Unsupported(InvalidInput):
    pass


@dataclass
class RunReport:
    problem: str
    digest: str
    solver: str
    cost: int | None = None
    wall_ms: float | None = None
    strategy: str | None = None
    extra: dict = field(default_factory=dict)

    def as_dict(self, timing: bool) -> dict:
        out = {"problem": self.problem, "digest": self.digest, "solver": self.solver}
        if self.cost is not None:
            out["cost"] = self.cost
        out.update(self.extra)
        if self.strategy is not None:
            out["strategy"] = self.strategy
        if timing and self.wall_ms is not None:
            out["wall_ms"] = round(self.wall_ms, 3)
        return out


def _emit(args: argparse.Namespace, payload: dict) -> None:
    if args.quiet:
        return
    if args.format == "json":
        print(json.dumps(payload, sort_keys=False))
        return
    for key, value in payload.items():
        if isinstance(value, dict):
            for sub, v in value.items():
                print(f"{key}.{sub}: {v}")
        else:
            print(f"{key}: {value}")


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _partition(text: str) -> list[list[int]]:
    return [_csv_ints(group) for group in text.split(";") if group.strip()]


def _oracle_run(inst: Instance, max_states: int) -> oracle.OracleResult:
    run = oracle.solve_length if inst.objective == "length" else oracle.solve_time
    return run(inst.tree, inst.starts, inst.p, max_states=max_states)


def _dp_run(inst: Instance) -> tuple[int, Strategy]:
    if inst.problem != "mlcp":
        raise Unsupported(HARD[inst.problem])
    distinct = list(dict.fromkeys(inst.starts))
    if len(distinct) == 1:
        sol = dp.one_source(inst.tree, distinct[0], inst.k)[inst.k]
    elif len(distinct) == 2:
        u, v = distinct
        s, t = inst.starts.count(u), inst.starts.count(v)
        sol = dp.TwoSourcesTable(inst.tree, u, v, max(s, t)).solution(s, t)
    else:
        raise Unsupported(
            f"{len(distinct)} distinct start vertices: minimum-length coverage from three or more "
            "start vertices is an open problem with no known polynomial algorithm; use oracle"
        )
    # hand the walks back in the instance's robot order
    pool: dict[int, list] = {}
    for w in sol.strategy.walks:
        pool.setdefault(w[0], []).append(w)
    walks = tuple(pool[s].pop(0) for s in inst.starts)
    return sol.cost, Strategy(walks)


def cmd_solve(args: argparse.Namespace) -> int:
    inst = read_instance(args.instance)
    t0 = time.perf_counter()
    if args.solver == "oracle":
        result = _oracle_run(inst, args.max_states)
        cost, strat = result.cost, result.strategy
    else:
        cost, strat = _dp_run(inst)
    report = RunReport(inst.problem, instance_digest(inst), args.solver, cost, 1000 * (time.perf_counter() - t0))
    return _finish(args, inst, report, strat)


def cmd_oracle(args: argparse.Namespace) -> int:
    inst = read_instance(args.instance)
    t0 = time.perf_counter()
    result = _oracle_run(inst, args.max_states)
    report = RunReport(inst.problem, instance_digest(inst), "oracle", result.cost, 1000 * (time.perf_counter() - t0))
    report.extra["states"] = result.states
    return _finish(args, inst, report, result.strategy)


def _finish(args: argparse.Namespace, inst: Instance, report: RunReport, strat: Strategy) -> int:
    if inst.budget is not None:
        report.extra["budget"] = inst.budget
        report.extra["within_budget"] = "yes" if report.cost <= inst.budget else "no"
    if args.emit_strategy:
        write_text(args.emit_strategy, format_strategy(strat))
        report.strategy = args.emit_strategy
    if args.dot:
        write_text(args.dot, to_dot(inst, strat))
    _emit(args, report.as_dict(args.timing))
    return EXIT_OK


def verify_checks(inst: Instance, strat: Strategy) -> dict[str, str]:
    """Run every applicable check; values are ``pass`` or ``fail: <witness>``."""
    checks: dict[str, str] = {}
    try:
        strat.check(inst.tree)
        checks["walks"] = "pass"
    except InvalidInput as exc:
        checks["walks"] = f"fail: {exc}"
        return checks
    if strat.starts != inst.starts:
        checks["starts"] = f"fail: walks start at {list(strat.starts)}, instance has {list(inst.starts)}"
    else:
        checks["starts"] = "pass"
    missing = uncovered(inst.tree, strat)
    checks["covering"] = "pass" if not missing else "fail: uncovered vertices " + " ".join(inst.name(v) for v in missing)
    if inst.p is not None:
        bad = rendezvous_violation(strat, inst.p)
        checks["rendezvous"] = "pass" if bad is None else f"fail: window of {inst.p} steps broken at step {bad}"
    if inst.budget is not None:
        value = strategy_length(strat) if inst.objective == "length" else strategy_time(strat)
        verdict = "pass" if value <= inst.budget else "fail"
        checks["budget"] = f"{verdict}: {inst.objective} {value} vs budget {inst.budget}"
    if inst.problem == "mlcp" and not missing:
        rep = verify_structure(inst.tree, strat)
        if rep.ok:
            checks["structure"] = "pass"
        else:
            first = rep.failed()[0]
            checks["structure"] = f"fail: {', '.join(rep.failed())}; e.g. {getattr(rep, first)[0]}"
        dirs = check_edge_directions(inst.tree, strat)
        checks["directions"] = "pass" if dirs.ok else f"fail: edges crossed both ways {list(dirs.conflicts)}"
    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    inst = read_instance(args.instance)
    strat = read_strategy(args.strategy)
    checks = verify_checks(inst, strat)
    ok = all(v.startswith("pass") for v in checks.values())
    payload = {"problem": inst.problem, "digest": instance_digest(inst)}
    if checks.get("walks") == "pass":
        payload["length"] = strategy_length(strat)
        payload["time"] = strategy_time(strat)
    payload["checks"] = checks
    payload["result"] = "pass" if ok else "fail"
    if args.dot and checks.get("walks") == "pass":
        write_text(args.dot, to_dot(inst, strat))
    _emit(args, payload)
    return EXIT_OK if ok else EXIT_VERIFY


def _reduction(args: argparse.Namespace) -> tuple[Instance, object]:
    if args.kind == "tcs":
        gen = hardness.gen_tcs(args.a, args.b)
        inst = Instance("mtcp", gen.tree, (gen.start,) * gen.k, budget=gen.budget)
    else:
        gen = hardness.gen_lcsr(args.a, args.b)
        inst = Instance("mlcpr", gen.tree, (gen.start,) * gen.k, p=gen.p, budget=gen.budget)
    return inst, gen


def _witness(args: argparse.Namespace, gen) -> Strategy:
    partition = args.partition
    if partition is None:
        partition = oracle.three_partition_solve(args.a, args.b)
        if partition is None:
            raise InvalidInput("A admits no 3-partition, so there is no witness strategy")
    build = hardness.witness_tcs if args.kind == "tcs" else hardness.witness_lcsr
    return build(gen, partition)


def cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "random":
        tree = hardness.gen_random_tree(args.n, args.seed, args.shape)
        starts = tuple(args.starts) if args.starts else (0,) * args.k
        inst = Instance(args.problem, tree, starts, p=args.p, budget=args.budget)
        gen = None
    else:
        inst, gen = _reduction(args)
    text = format_instance(inst)
    if args.output:
        write_text(args.output, text)
    elif not args.quiet:
        sys.stdout.write(text)
    payload = {"kind": args.kind, "problem": inst.problem, "digest": instance_digest(inst), "vertices": inst.tree.n, "k": inst.k}
    if inst.p is not None:
        payload["p"] = inst.p
    if inst.budget is not None:
        payload["budget"] = inst.budget
    if gen is not None and args.witness:
        write_text(args.witness, format_strategy(_witness(args, gen)))
        payload["witness"] = args.witness
    if args.dot:
        write_text(args.dot, to_dot(inst))
    if args.output:
        _emit(args, payload)
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    inst, gen = _reduction(args)
    strat = _witness(args, gen)
    text = format_strategy(strat)
    if args.output:
        write_text(args.output, text)
        payload = {"kind": args.kind, "digest": instance_digest(inst), "length": strategy_length(strat), "time": strategy_time(strat)}
        _emit(args, payload)
    elif not args.quiet:
        sys.stdout.write(text)
    if args.dot:
        write_text(args.dot, to_dot(inst, strat))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    for n in args.sizes:
        tree = hardness.gen_random_tree(n, args.seed, args.shape)
        t0 = time.perf_counter()
        table = dp.OneSourceTable(tree, 0, args.k)
        ms = 1000 * (time.perf_counter() - t0)
        payload = {"n": n, "k": args.k, "cost": table.cost(args.k)}
        if args.timing:
            payload["wall_ms"] = round(ms, 3)
        _emit(args, payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("kv", "json"), default="kv", help="report layout (key: value lines or one JSON object)")
    common.add_argument("--quiet", action="store_true", help="suppress the report on stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock milliseconds in reports")

    parser = argparse.ArgumentParser(prog="treecover", description="Multi-robot tree coverage solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("instance")
        p.add_argument("--emit-strategy", metavar="PATH")
        p.add_argument("--max-states", type=int, default=oracle.MAX_STATES)
        p.add_argument("--dot", metavar="PATH", help="write the tree with the strategy's edges coloured")

    p = sub.add_parser("solve", parents=[common], help="exact polynomial solver for mlcp with 1 or 2 start vertices")
    solver_opts(p)
    p.add_argument("--solver", choices=("dp", "oracle"), default="dp")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive search for any problem on small trees")
    solver_opts(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="check a strategy file against an instance")
    p.add_argument("instance")
    p.add_argument("strategy")
    p.add_argument("--dot", metavar="PATH")
    p.set_defaults(func=cmd_verify)

    def partition_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--a", type=_csv_ints, required=True, help="3-PARTITION multiset, comma separated")
        p.add_argument("--b", type=int, required=True, help="target triple sum B")
        p.add_argument("--partition", type=_partition, help="triples such as '3,3,3;3,3,3' (searched when omitted)")

    p = sub.add_parser("gen", help="write an instance file")
    gen_sub = p.add_subparsers(dest="kind", required=True)
    for kind in ("tcs", "lcsr", "random"):
        g = gen_sub.add_parser(kind, parents=[common])
        g.add_argument("-o", "--output", metavar="PATH")
        g.add_argument("--dot", metavar="PATH")
        if kind == "random":
            g.add_argument("--n", type=int, required=True)
            g.add_argument("--seed", type=int, default=0)
            g.add_argument("--shape", choices=hardness.SHAPES, default="uniform")
            g.add_argument("--problem", choices=("mlcp", "mtcp", "mlcpr", "mtcpr"), default="mlcp")
            g.add_argument("--k", type=int, default=1)
            g.add_argument("--starts", type=_csv_ints)
            g.add_argument("--p", type=int)
            g.add_argument("--budget", type=int)
        else:
            partition_opts(g)
            g.add_argument("--witness", metavar="PATH", help="also write the yes-witness strategy")
        g.set_defaults(func=cmd_gen, kind=kind)

    p = sub.add_parser("witness", help="write the yes-witness strategy of a reduction instance")
    w_sub = p.add_subparsers(dest="kind", required=True)
    for kind in ("tcs", "lcsr"):
        g = w_sub.add_parser(kind, parents=[common])
        partition_opts(g)
        g.add_argument("-o", "--output", metavar="PATH")
        g.add_argument("--dot", metavar="PATH")
        g.set_defaults(func=cmd_witness, kind=kind)

    p = sub.add_parser("bench", parents=[common], help="time the one-source table on growing trees")
    p.add_argument("--sizes", type=_csv_ints, default=[2000, 4000])
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shape", choices=hardness.SHAPES, default="caterpillar")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidInput, PreconditionViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
