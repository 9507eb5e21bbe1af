"""Command line surface: moments, cumulants, compressions, verification.

Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .compress import (SameVertexError, diagonal_compress,
                       off_diagonal_compress, projection_compress)
from .cumulants import cumulant_table, moment_table
from .expr import FourierExpr, expr_from_document, expr_to_document
from .graph import DirectedGraph, GraphError, load_graph
from .verify import run_checks
from .words import Model

MAX_ORDER = 10
MAX_DEPTH = 8


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as err:
        raise UsageError(f"cannot read {path!r}: {err.strerror}") from err
    except json.JSONDecodeError as err:
        raise UsageError(f"cannot parse {path!r}: {err}") from err


def _load_graph(path: str) -> DirectedGraph:
    return load_graph(_read_json(path))


def _load_elements(graph: DirectedGraph,
                   paths: Sequence[str]) -> list[tuple[str, FourierExpr]]:
    out = []
    for p in paths:
        try:
            out.append((p, expr_from_document(graph, _read_json(p))))
        except (GraphError, ValueError, KeyError, TypeError) as err:
            raise UsageError(f"bad element file {p!r}: {err}") from err
    return out


def _models(flag: str) -> list[Model]:
    if flag == "both":
        return [Model.CK, Model.TOEPLITZ]
    return [Model(flag)]


def _table_command(kind: str, args: argparse.Namespace) -> int:
    if not 1 <= args.n_max <= MAX_ORDER:
        raise UsageError(f"--n-max must lie in 1..{MAX_ORDER}")
    graph = _load_graph(args.graph)
    elements = _load_elements(graph, args.element)
    fn = moment_table if kind == "moments" else cumulant_table
    blocks = []
    for path, a in elements:
        for model in _models(args.model):
            blocks.append((path, model, fn(a, args.n_max, model)))
    if args.format == "json":
        payload = [{
            "element": path,
            "model": model.value,
            "kind": kind,
            "values": [{"n": i + 1,
                        "value": {v: {"re": str(c.re), "im": str(c.im)}
                                  for v, c in d.items()}}
                       for i, d in enumerate(table)],
        } for path, model, table in blocks]
        print(json.dumps(payload, indent=2))
        return 0
    label = "E(a^n)" if kind == "moments" else "k_n(a,...,a)"
    for path, model, table in blocks:
        print(f"# {path}  model={model.value}  {label}")
        for i, d in enumerate(table):
            print(f"n={i + 1}  {d.text()}")
    return 0


def _compress_command(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    (_, a), = _load_elements(graph, [args.element])
    try:
        if args.kind == "diag":
            if not args.vertices:
                raise UsageError("diag compression needs at least one vertex")
            result = {"element": expr_to_document(
                diagonal_compress(a, args.vertices))}
        elif args.kind == "offdiag":
            if len(args.vertices) != 2:
                raise UsageError("offdiag compression needs exactly two vertices")
            result = {"element": expr_to_document(
                off_diagonal_compress(a, *args.vertices))}
        else:
            if not args.vertices:
                raise UsageError("proj compression needs at least one vertex")
            split = projection_compress(a, args.vertices)
            result = {
                "element": expr_to_document(split.full),
                "diag": expr_to_document(split.diagonal),
                "offdiag": expr_to_document(split.off_diagonal),
            }
    except (GraphError, SameVertexError, ValueError) as err:
        raise UsageError(str(err)) from err
    if args.format == "json":
        body = result if args.kind == "proj" else result["element"]
        print(json.dumps(body, indent=2))
    else:
        for name, doc in result.items():
            expr = expr_from_document(graph, doc)
            print(f"{name}: {expr.text()}")
    return 0


def _verify_command(args: argparse.Namespace) -> int:
    if not 1 <= args.n_max <= MAX_ORDER:
        raise UsageError(f"--n-max must lie in 1..{MAX_ORDER}")
    if not 1 <= args.depth <= MAX_DEPTH:
        raise UsageError(f"--depth must lie in 1..{MAX_DEPTH}")
    graph = _load_graph(args.graph) if args.graph else None
    results = run_checks(user_graph=graph, models=_models(args.model),
                         n_max=args.n_max, depth=args.depth)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed and not r.info]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphfp",
        description="Exact moments, cumulants and compressions of "
                    "generator expansions over a finite directed graph.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, element_required=True):
        p.add_argument("-g", "--graph", required=True,
                       help="graph JSON file")
        p.add_argument("--model", choices=["ck", "toeplitz", "both"],
                       default="ck",
                       help="reduction model (default ck: full "
                            "creation/annihilation matches collapse to the "
                            "source projection; toeplitz keeps them, which "
                            "matches the concrete shift action)")
        p.add_argument("--format", choices=["text", "json"], default="text")

    for kind in ("moments", "cumulants"):
        p = sub.add_parser(kind, help=f"print the {kind} table of elements")
        common(p)
        p.add_argument("-a", "--element", action="append", required=True,
                       help="element JSON file (repeatable)")
        p.add_argument("-n", "--n-max", type=int, default=4)
        p.set_defaults(func=lambda a, k=kind: _table_command(k, a))

    p = sub.add_parser("compress", help="compress an element by vertices")
    p.add_argument("kind", choices=["diag", "offdiag", "proj"])
    common(p)
    p.add_argument("-a", "--element", required=True,
                   help="element JSON file")
    p.add_argument("-V", "--vertex", dest="vertices", action="append",
                   default=[], help="vertex id (repeatable; offdiag takes "
                                    "exactly two, in order)")
    p.set_defaults(func=_compress_command)

    p = sub.add_parser("verify",
                       help="run the built-in exact theorem checks")
    p.add_argument("-g", "--graph", help="optional extra graph JSON file")
    p.add_argument("--model", choices=["ck", "toeplitz", "both"],
                   default="ck")
    p.add_argument("-n", "--n-max", type=int, default=4)
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=_verify_command)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except GraphError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entry() -> None:  # console-script hook
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
