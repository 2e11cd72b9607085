"""Command-line interface.

Exit codes: 0 success, 1 domain error (invariant violation, unrealizable
conversion, limit exceeded, unsupported combination), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import enumeration, export, io
from .errors import HeckeError, InvalidCutSet, ValidationError
from .geometry import TOL, SpecialPolygon, develop_tree, polygon_residual
from .model import QBoidGraph, TreeDiagram, cycle_rank
from .perms import (
    PermutationPair,
    dessin_genus,
    graph_to_perms,
    make_pair,
    orbifold_invariants,
    perms_to_graph,
)
from .treeops import enumerate_cut_sets, graph_to_tree, tree_to_graph

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2


class UsageError(HeckeError):
    code = "Unsupported"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise io.ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, kind: str | None = None):
    doc = io.load_document(_read(path))
    if kind is not None and doc["kind"] != kind:
        raise io.ParseError(f"expected a {kind} document, found {doc['kind']}")
    return io.from_document(doc)


def _as_graph(obj) -> QBoidGraph:
    if isinstance(obj, QBoidGraph):
        return obj
    if isinstance(obj, PermutationPair):
        return perms_to_graph(obj)
    if isinstance(obj, TreeDiagram):
        return tree_to_graph(obj)
    raise UsageError(f"cannot convert a {io.kind_of(obj)} to a graph")


def _as_tree(obj, cut_index: int = 0) -> TreeDiagram:
    if isinstance(obj, TreeDiagram):
        return obj
    graph = _as_graph(obj)
    cuts = enumerate_cut_sets(graph)
    if not 0 <= cut_index < len(cuts):
        raise InvalidCutSet(f"cut-set index {cut_index} out of range (graph has {len(cuts)} cut sets)")
    return graph_to_tree(graph, cuts[cut_index])


def convert(obj, to: str, cut_index: int = 0):
    if to == "graph":
        return _as_graph(obj)
    if to == "pair":
        return obj if isinstance(obj, PermutationPair) else graph_to_perms(_as_graph(obj))
    if to == "tree":
        return _as_tree(obj, cut_index)
    raise UsageError(f"unknown target {to}")


def invariants_table(obj) -> dict[str, int]:
    graph = _as_graph(obj)
    pair = graph_to_perms(graph)
    inv = orbifold_invariants(pair)
    return {
        "index": inv.index,
        "e2": inv.e2,
        "eq": inv.eq,
        "cusps": inv.cusps,
        "genus": inv.genus,
        "dessin_genus": dessin_genus(pair),
        "cycle_rank": cycle_rank(graph),
    }


# -- commands ------------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        obj = _load(args.path, args.kind)
    except ValidationError as exc:
        if args.json:
            print(json.dumps({"ok": False, "violations": [{"code": v.code, "message": v.message} for v in exc.violations]}))
        else:
            for v in exc.violations:
                print(v)
        return EXIT_DOMAIN
    if isinstance(obj, SpecialPolygon):
        residual = polygon_residual(obj)
        if residual > TOL:
            print(f"NumericalFailure: pairing residual {residual:.3g}")
            return EXIT_DOMAIN
    if args.json:
        print(json.dumps({"ok": True, "kind": io.kind_of(obj)}))
    elif not args.quiet:
        print("OK")
    return EXIT_OK


def cmd_convert(args) -> int:
    obj = _load(args.path, args.source)
    sys.stdout.write(io.serialize(convert(obj, args.to, args.cut_set)))
    return EXIT_OK


def cmd_invariants(args) -> int:
    if args.path is not None:
        obj = _load(args.path)
    elif args.q is not None and args.sigma2 is not None and args.sigmaq is not None:
        if args.n is None:
            raise UsageError("--n is required with cycle notation")
        obj = make_pair(args.q, args.sigma2, args.sigmaq, args.n)
    else:
        raise UsageError("give a document path or --q/--n/--sigma2/--sigmaq")
    table = invariants_table(obj)
    if args.json:
        print(json.dumps(table))
    else:
        width = max(map(len, table))
        for k, v in table.items():
            print(f"{k:<{width}}  {v}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    report = enumeration.all_classes(args.q, args.n, limit=args.limit, workers=args.workers)
    if not args.count_only:
        for c in report.classes:
            print(io.serialize(c, compact=True))
    doc = {
        "format_version": io.FORMAT_VERSION,
        "kind": "report",
        "payload": io.report_payload(report, include_classes=False),
    }
    if args.json or not args.quiet:
        print(json.dumps(doc, separators=(",", ":")))
    return EXIT_OK if doc["payload"]["hall"] == "consistent" else EXIT_DOMAIN


def cmd_export(args) -> int:
    obj = _load(args.path)
    kind = io.kind_of(obj)
    if args.format == "dot":
        if kind == "tree":
            out = export.tree_to_dot(obj)
        elif kind in ("graph", "pair"):
            out = export.graph_to_dot(_as_graph(obj))
        else:
            raise UsageError(f"cannot export a {kind} as dot")
    else:
        if kind == "polygon":
            poly = obj
        elif kind in ("tree", "graph", "pair"):
            poly = develop_tree(_as_tree(obj))
        else:
            raise UsageError(f"cannot export a {kind} as {args.format}")
        out = export.polygon_to_svg(poly) if args.format == "svg" else io.serialize(poly)
    sys.stdout.write(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(add_help=False)
    top.add_argument("--json", action="store_true", help="machine-readable output")
    top.add_argument("--quiet", action="store_true", help="suppress informational output")
    # repeated on subcommands so the flags work on either side; SUPPRESS keeps the top-level value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="heckeboid",
        parents=[top],
        description="q-boid graphs, tree diagrams and permutation pairs for Hecke groups H_q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    kinds = ("graph", "tree", "pair", "polygon", "report")

    p = sub.add_parser("validate", parents=[common], help="check a document against its invariants")
    p.add_argument("path")
    p.add_argument("--kind", choices=kinds)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("convert", parents=[common], help="convert between graph, tree and pair")
    p.add_argument("path")
    p.add_argument("--from", dest="source", choices=("graph", "tree", "pair"))
    p.add_argument("--to", required=True, choices=("graph", "tree", "pair"))
    p.add_argument("--cut-set", type=int, default=0, help="index into the sorted list of cut sets")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("invariants", parents=[common], help="index, elliptic points, cusps, genus")
    p.add_argument("path", nargs="?")
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--sigma2", help='cycle notation, e.g. "(1 2)(3 4)"')
    p.add_argument("--sigmaq", help='cycle notation, e.g. "(1 2 3 4)"')
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("enumerate", parents=[common], help="one pair per isomorphism class")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--limit", type=int, default=enumeration.DEFAULT_LIMIT)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("export", parents=[common], help="render as Graphviz DOT, SVG or polygon JSON")
    p.add_argument("path")
    p.add_argument("--format", required=True, choices=("dot", "svg", "json"))
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io.ParseError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE
    except HeckeError as exc:
        if isinstance(exc, ValidationError):
            for v in exc.violations:
                print(v, file=sys.stderr)
        else:
            print(str(exc), file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
