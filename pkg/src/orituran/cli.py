"""Command-line front end.

Subcommands wrap the library one-to-one: compress (pattern compressibility),
exo (exact extremal values, optionally checked against closed forms),
construct (named extremal graphs as .og text), embed (the bipartite
regularize-and-zoom pipeline), and check-hypothesis (universal containment
sweeps).  Exit codes: 0 success, 1 negative result, 2 parse error, 3 size
cap, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .containment import all_orientations_contain, all_tournaments_contain
from .extremal import (
    BadParamsError,
    BudgetExceededError,
    ExtremalRecord,
    NoFormulaError,
    PatternSpec,
    build_construction,
    oracle_exo,
    verify_against_formula,
)
from .graphs import (
    BipartiteDigraph,
    GraphError,
    InvariantError,
    OrientedGraph,
    ParseError,
    TooLargeError,
    decode,
    decode_undirected,
    encode,
)
from .homomorphism import EmptyPatternError, compressibility
from .regularize import faks_pipeline

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_BUDGET = 4


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", 1) from None


def _load_pattern(args) -> PatternSpec:
    """Pattern from --pattern token or --pattern-file .og text."""
    token = getattr(args, "pattern", None)
    path = getattr(args, "pattern_file", None)
    if (token is None) == (path is None):
        raise BadParamsError("give exactly one of --pattern or --pattern-file")
    if token is not None:
        return PatternSpec.parse(token)
    return PatternSpec.custom(decode(_read_file(path)))


def _bipartite_from_oriented(g: OrientedGraph) -> BipartiteDigraph:
    """Split a one-way oriented pattern into (sources, rest).

    Every vertex must be a pure source or a pure sink; vertices with no arcs
    join the sink side.
    """
    sources = []
    sinks = []
    for v in range(g.n):
        if g.out_degree(v) > 0 and g.in_degree(v) > 0:
            raise BadParamsError(
                f"vertex {v} has both in- and out-arcs; the embedding "
                "pipeline needs every arc to run source side to sink side"
            )
        (sources if g.out_degree(v) > 0 else sinks).append(v)
    if not sources or not sinks:
        raise BadParamsError("pattern needs at least one arc")
    return BipartiteDigraph.from_arcs(sources, sinks, list(g.arcs()))


def _parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo_s, _, hi_s = text.partition("..")
        lo, hi = int(lo_s), int(hi_s)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


# --- subcommand bodies --------------------------------------------------------


def _cmd_compress(args) -> int:
    g = decode(_read_file(args.pattern_file))
    res = compressibility(g)
    if args.json:
        obj = {
            "z": res.value,
            "witness": None if res.witness is None else encode(res.witness),
        }
        print(_dump_json(obj))
        return EXIT_OK
    if res.is_infinite:
        print("z = infinite")
    else:
        print(f"z = {res.value}")
        print("witness tournament (admits no homomorphic image):")
        sys.stdout.write(encode(res.witness))
    return EXIT_OK


def _record_row(rec: ExtremalRecord) -> dict:
    return {
        "n": rec.n,
        "value": rec.value,
        "nodes": rec.nodes,
        "witness": encode(rec.witness),
    }


def _cmd_exo(args) -> int:
    spec = _load_pattern(args)
    ns = _parse_n_range(args.n)
    if args.verify_formula:
        report = verify_against_formula(spec, ns, budget=args.budget, jobs=args.jobs)
        if args.json:
            print(_dump_json(report.to_json_obj()))
        else:
            print(report.to_text())
        return EXIT_OK
    rows = []
    for n in ns:
        rows.append(_record_row(oracle_exo(n, spec, budget=args.budget, jobs=args.jobs)))
    if args.json:
        print(_dump_json({"pattern": spec.token, "rows": rows}))
    else:
        print(f"pattern {spec.token}")
        print(f"{'n':>3} {'value':>7} {'nodes':>10}")
        for row in rows:
            print(f"{row['n']:>3} {row['value']:>7} {row['nodes']:>10}")
    return EXIT_OK


def _cmd_construct(args) -> int:
    pattern = PatternSpec.parse(args.pattern) if args.pattern else None
    g = build_construction(
        args.name, args.n, r=args.r, p=args.p, q=args.q, d=args.d, pattern=pattern
    )
    sys.stdout.write(encode(g))
    return EXIT_OK


def _cmd_embed(args) -> int:
    host = decode(_read_file(args.host))
    spec = _load_pattern(args)
    pattern = _bipartite_from_oriented(spec.graph)
    result = faks_pipeline(host, pattern, args.r, args.seed, t_override=args.t_override)
    print(_dump_json(result.to_json_obj()))
    return EXIT_OK if result.embedding is not None else EXIT_NEGATIVE


def _hypothesis_output(holds: bool, counterexample, as_json: bool) -> int:
    if as_json:
        obj = {
            "holds": holds,
            "counterexample": None if counterexample is None else encode(counterexample),
        }
        print(_dump_json(obj))
    elif holds:
        print("true")
    else:
        print("false, counterexample:")
        sys.stdout.write(encode(counterexample))
    return EXIT_OK if holds else EXIT_NEGATIVE


def _cmd_check(args) -> int:
    spec = _load_pattern(args)
    if args.mode == "all-tournaments":
        holds, cx = all_tournaments_contain(args.k, spec.graph, jobs=args.jobs)
        return _hypothesis_output(holds, cx, args.json)
    n, edges = decode_undirected(_read_file(args.host))
    holds, cx = all_orientations_contain(n, edges, spec.graph)
    return _hypothesis_output(holds, cx, args.json)


# --- parser -------------------------------------------------------------------


def _add_pattern_args(sub, file_only: bool = False) -> None:
    if not file_only:
        sub.add_argument("--pattern", help="named pattern token, e.g. dpath4 or star:1,2")
    sub.add_argument("--pattern-file", help="custom pattern as an .og file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orituran",
        description="oriented Turán numbers: compressibility, exact values, "
        "constructions, and bipartite embedding",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("compress", help="compressibility of an .og pattern")
    p.add_argument("pattern_file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_compress)

    p = subs.add_parser("exo", help="exact extremal arc counts")
    p.add_argument("--n", required=True, help="single order or range a..b")
    _add_pattern_args(p)
    p.add_argument("--verify-formula", action="store_true")
    p.add_argument("--budget", type=int, default=None, help="node budget per worker")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_exo)

    p = subs.add_parser("construct", help="named construction as .og text")
    p.add_argument(
        "name",
        choices=["turan", "cyclepower", "starpartition", "thm32", "prop26", "prop27"],
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--pattern", help="orient a turan construction against this pattern")
    p.set_defaults(func=_cmd_construct)

    p = subs.add_parser("embed", help="extract, regularize, and zoom")
    p.add_argument("--host", required=True, help="host .og file")
    _add_pattern_args(p)
    p.add_argument("--r", type=int, required=True, help="pattern out-degree bound")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--t-override", type=int, default=None, dest="t_override")
    p.set_defaults(func=_cmd_embed)

    p = subs.add_parser("check-hypothesis", help="universal containment sweeps")
    p.add_argument("mode", choices=["all-tournaments", "all-orientations"])
    p.add_argument("--k", type=int, help="tournament order (all-tournaments)")
    p.add_argument("--host", help="undirected host .og file (all-orientations)")
    _add_pattern_args(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    return parser


def _exit_code_for(exc: Exception) -> int:
    if isinstance(exc, TooLargeError):
        return EXIT_CAP
    if isinstance(exc, InvariantError) and "cap" in str(exc):
        return EXIT_CAP
    return EXIT_PARSE


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, matching the parse-error code
        return EXIT_PARSE if exc.code else EXIT_OK
    if args.command == "check-hypothesis":
        if args.mode == "all-tournaments" and args.k is None:
            print("error: all-tournaments needs --k", file=sys.stderr)
            return EXIT_PARSE
        if args.mode == "all-orientations" and args.host is None:
            print("error: all-orientations needs --host", file=sys.stderr)
            return EXIT_PARSE
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exhausted: certified lower bound {exc.lower_bound}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, EmptyPatternError, GraphError) as exc:
        code = _exit_code_for(exc)
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
