"""Command line front end.

Every command reads one graph (``--input`` or standard input) and writes to
``--output`` or standard output.  ``--json`` switches to a versioned JSON
document; plain output is meant for people and may change.

Exit codes: 0 success, 1 bad input or parameters, 2 internal invariant
breach, 3 a checked property failed (``verify``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .errors import GraphError, InvariantError, NotBipartiteError, ParameterError, ParseError
from .gadgets import bipartite_gadget, check_gadget_equivalence, two_coloring
from .generators import FAMILIES, GeneratorSpec, generate
from .graph import FORMATS, Graph, dumps, load_graph
from .oracle import ORACLE_BOUND, DominationKind, domination_violation, greedy_semitotal_set, solve_exact
from .planar import build_decomposition, decomposition_stats, kernel_bound_check, planar_embedding, test_planarity
from .rules import lift_solution, reduce

SCHEMA_VERSION = 1
ORACLE_BOUND_ENV = "SDSKERNEL_ORACLE_BOUND"
#: the exact solvers are never run above this many vertices
ORACLE_CEILING = 40

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_VERIFY = 0, 1, 2, 3


def _emit(args, text: str) -> None:
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json(payload: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2, sort_keys=True) + "\n"


def _read_graph(args) -> Graph:
    if args.input in (None, "-"):
        return load_graph(sys.stdin.read(), args.format)
    with open(args.input, encoding="utf-8") as fh:
        return load_graph(fh, args.format)


def _read_set(path: str) -> list[int]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        for token in raw.split("#", 1)[0].replace(",", " ").split():
            try:
                out.append(int(token))
            except ValueError:
                raise ParseError(f"expected a vertex id, got {token!r}", lineno) from None
    return out


def oracle_bound(args) -> int:
    if args.oracle_bound is not None:
        bound = args.oracle_bound
    else:
        raw = os.environ.get(ORACLE_BOUND_ENV)
        try:
            bound = ORACLE_BOUND if raw is None else int(raw)
        except ValueError:
            raise ParameterError(f"{ORACLE_BOUND_ENV} must be an integer, got {raw!r}") from None
    if not 0 <= bound <= ORACLE_CEILING:
        raise ParameterError(f"oracle bound must lie in [0, {ORACLE_CEILING}], got {bound}")
    return bound


def _base_set(args, g: Graph) -> tuple[frozenset[int], str]:
    """The set D for decompositions: given, exact minimum sds, or greedy when too large."""
    if args.set is not None:
        d = frozenset(_read_set(args.set))
        g.require(d)
        return d, "given"
    if g.n <= oracle_bound(args):
        sol = solve_exact(g, DominationKind.SEMITOTAL, bound=oracle_bound(args))
        if sol is not None:
            return sol.chosen, "exact"
    d = greedy_semitotal_set(g)
    if d is None:
        raise ParameterError("graph has an isolated vertex, so it has no semitotal dominating set")
    return d, "greedy"


# -- commands --------------------------------------------------------------


def cmd_kernelize(args) -> int:
    g = _read_graph(args)
    reduced, report = reduce(g)
    check = None
    no_instance = False
    if args.k is not None:
        if args.k < 1:
            raise ParameterError("--k must be at least 1")
        if test_planarity(g).planar:
            check = kernel_bound_check(reduced.n, args.k)
            if not check.passed:
                reduced = Graph([0])
                no_instance = True
    if args.json:
        _emit(
            args,
            _json(
                {
                    "command": "kernelize",
                    "graph": dumps(reduced, args.format),
                    "report": report.as_dict(timings=args.timings),
                    "kernel_check": None if check is None else check.as_dict(),
                    "no_instance": no_instance,
                }
            ),
        )
    else:
        _emit(args, dumps(reduced, args.format))
    return EXIT_OK


def solve_graph(g: Graph, kind: DominationKind, bound: int, via_kernel: bool):
    if not via_kernel:
        return solve_exact(g, kind, bound=bound)
    if kind is not DominationKind.SEMITOTAL:
        raise ParameterError("--via-kernel is only sound for semitotal domination")
    reduced, report = reduce(g)
    sol = solve_exact(reduced, kind, bound=bound)
    if sol is None:
        return None
    lifted = lift_solution(report.applications, sol.chosen)
    problem = domination_violation(g, lifted, kind)
    if problem is not None or len(lifted) > sol.size:
        raise InvariantError(f"lifted kernel solution is not optimal on the input: {problem or 'too large'}")
    return type(sol)(kind, lifted, len(lifted))


def cmd_solve(args) -> int:
    g = _read_graph(args)
    kind = DominationKind.parse(args.kind)
    sol = solve_graph(g, kind, oracle_bound(args), args.via_kernel)
    if args.json:
        payload = {"command": "solve", "kind": kind.value, "feasible": sol is not None}
        if sol is not None:
            payload |= {"size": sol.size, "set": sorted(sol.chosen)}
        _emit(args, _json(payload))
    elif sol is None:
        _emit(args, "infeasible\n")
    else:
        _emit(args, f"{sol.size}\n{' '.join(map(str, sorted(sol.chosen)))}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.set is None:
        raise ParameterError("verify needs --set")
    g = _read_graph(args)
    d = _read_set(args.set)
    kind = DominationKind.parse(args.kind)
    problem = domination_violation(g, d, kind)
    if args.json:
        _emit(args, _json({"command": "verify", "kind": kind.value, "valid": problem is None, "reason": problem}))
    else:
        _emit(args, "valid\n" if problem is None else f"invalid: {problem}\n")
    return EXIT_OK if problem is None else EXIT_VERIFY


def _prepare_plane(args) -> tuple[Graph, dict]:
    g = _read_graph(args)
    header: dict = {}
    if args.reduce:
        g, report = reduce(g)
        header["reduction"] = report.as_dict(timings=args.timings)
    return g, header


def cmd_stats(args) -> int:
    g, header = _prepare_plane(args)
    emb = planar_embedding(g)
    d, source = _base_set(args, g)
    dec = build_decomposition(g, emb, d)
    stats = decomposition_stats(g, dec)
    payload = {"command": "stats", "n": g.n, "m": g.m, "base_set": sorted(d), "base_set_source": source}
    payload |= header | {"stats": stats}
    if args.k is not None:
        payload["kernel_check"] = kernel_bound_check(g.n, args.k).as_dict()
    if args.json:
        _emit(args, _json(payload))
    else:
        lines = [f"{name}: {verdict}" for name, verdict in stats["verdicts"].items()]
        if args.k is not None:
            lines.append(f"kernel: {payload['kernel_check']['verdict']}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_decompose(args) -> int:
    g, header = _prepare_plane(args)
    emb = planar_embedding(g)
    d, source = _base_set(args, g)
    dec = build_decomposition(g, emb, d)
    if args.json:
        payload = {"command": "decompose", "base_set_source": source, **header, **dec.as_dict()}
        _emit(args, _json(payload))
    else:
        lines = [f"{r.poles[0]} {r.poles[1]}: {' '.join(map(str, sorted(r.enclosed)))}" for r in dec.regions]
        _emit(args, "".join(line + "\n" for line in lines))
    return EXIT_OK


def cmd_gadget(args) -> int:
    g = _read_graph(args)
    parts = two_coloring(g)
    if parts is None:
        raise NotBipartiteError("input graph is not bipartite")
    out = bipartite_gadget(g, *parts)
    if not args.json:
        _emit(args, dumps(out.graph, args.format))
        return EXIT_OK
    bound = oracle_bound(args)
    report = None
    if max(g.n, out.graph.n) <= bound:
        report = check_gadget_equivalence(g, out, bound=bound).as_dict()
    payload = {
        "command": "gadget",
        "parts": [sorted(parts[0]), sorted(parts[1])],
        "graph": dumps(out.graph, args.format),
        "roles": {str(v): out.roles[v] for v in sorted(out.roles)},
        "equivalence": report,
    }
    _emit(args, _json(payload))
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = GeneratorSpec(args.family, tuple(_number(p) for p in args.parameters), args.seed)
    g = generate(spec)
    _emit(args, dumps(g, args.format))
    return EXIT_OK


def _number(token: str) -> int | float:
    try:
        return int(token)
    except ValueError:
        try:
            return float(token)
        except ValueError:
            raise ParameterError(f"expected a number, got {token!r}") from None


COMMANDS = {
    "kernelize": cmd_kernelize,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "stats": cmd_stats,
    "decompose": cmd_decompose,
    "gadget": cmd_gadget,
    "generate": cmd_generate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="graph file (default: standard input)")
    common.add_argument("--output", "-o", help="output file (default: standard output)")
    common.add_argument("--format", choices=FORMATS, default="edgelist")
    common.add_argument("--json", action="store_true", help="write a versioned JSON document")
    common.add_argument("--oracle-bound", type=int, help=f"exact solver vertex limit (env {ORACLE_BOUND_ENV})")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON reports")

    parser = argparse.ArgumentParser(prog="sdskernel", description="Semitotal domination kernelization toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernelize", parents=[common], help="apply the reduction rules")
    p.add_argument("--k", type=int, help="parameter for the linear size check on planar inputs")

    p = sub.add_parser("solve", parents=[common], help="exact minimum dominating set")
    p.add_argument("--kind", default="sds", help="ds, tds or sds")
    p.add_argument("--via-kernel", action="store_true", help="reduce first, solve the kernel and lift back")

    p = sub.add_parser("verify", parents=[common], help="check a candidate set")
    p.add_argument("--kind", default="sds", help="ds, tds or sds")
    p.add_argument("--set", help="file with the candidate vertex ids")

    for name, text in (("stats", "region decomposition bound report"), ("decompose", "maximal region decomposition")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--set", help="file with the base set D (default: a minimum semitotal dominating set)")
        p.add_argument("--reduce", action="store_true", help="reduce the graph first")
        if name == "stats":
            p.add_argument("--k", type=int, help="also check n <= 358 k")

    sub.add_parser("gadget", parents=[common], help="bipartite hardness gadget")

    p = sub.add_parser("generate", parents=[common], help="seeded graph generator")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("parameters", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
