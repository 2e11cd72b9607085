"""JSON documents: ``{"format_version": "1", "kind": ..., "payload": ...}``."""

from __future__ import annotations

import json
from typing import Any

from .enumeration import EnumerationReport, hall_transitive_count
from .errors import HeckeError
from .geometry import INF, MoebiusMap, Side, SpecialPolygon
from .model import QBoidGraph, TreeDiagram, graph_to_raw, tree_to_raw, validate_graph, validate_tree
from .perms import PermutationPair, make_pair

FORMAT_VERSION = "1"
KINDS = ("graph", "tree", "pair", "polygon", "report")


class ParseError(HeckeError):
    """Malformed document: bad JSON, wrong version, or missing/ill-typed fields."""

    code = "ParseError"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


# -- payloads ----------------------------------------------------------------

def pair_payload(pair: PermutationPair) -> dict[str, Any]:
    return {"q": pair.q, "n": pair.n, "sigma2": list(pair.sigma2), "sigmaq": list(pair.sigmaq)}


def _point(z):
    return "inf" if z is INF else [z.real, z.imag]


def _unpoint(obj):
    if obj == "inf":
        return INF
    x, y = obj
    return complex(float(x), float(y))


def polygon_payload(poly: SpecialPolygon) -> dict[str, Any]:
    return {
        "q": poly.q,
        "vertices": [_point(z) for z in poly.vertices],
        "sides": [
            {
                "start": s.start,
                "end": s.end,
                "kind": s.kind,
                "partner": s.partner,
                "anchor": _point(s.anchor),
                "terminal": s.terminal,
            }
            for s in poly.sides
        ],
        "pairings": [list(m.entries()) for m in poly.pairings],
        "tree_edges": [[_point(a), _point(b)] for a, b in poly.tree_edges],
    }


def _polygon_from_payload(p: dict[str, Any]) -> SpecialPolygon:
    return SpecialPolygon(
        q=int(p["q"]),
        vertices=tuple(_unpoint(z) for z in p["vertices"]),
        sides=tuple(
            Side(int(s["start"]), int(s["end"]), str(s["kind"]), int(s["partner"]), _unpoint(s["anchor"]), str(s["terminal"]))
            for s in p["sides"]
        ),
        pairings=tuple(MoebiusMap(*map(float, m)) for m in p["pairings"]),
        tree_edges=tuple((_unpoint(a), _unpoint(b)) for a, b in p.get("tree_edges", [])),
    )


def report_payload(report: EnumerationReport, include_classes: bool = True) -> dict[str, Any]:
    hall = hall_transitive_count(report.q, report.n)
    out = {
        "q": report.q,
        "n": report.n,
        "class_count": report.class_count,
        "transitive_pair_count": report.transitive_pair_count,
        "all_pair_count": report.all_pair_count,
        "subgroup_count": report.subgroup_count,
        "hall_transitive_count": hall,
        "hall": "consistent" if hall == report.transitive_pair_count else "inconsistent",
    }
    if include_classes:
        out["classes"] = [pair_payload(c) for c in report.classes]
    return out


def _report_from_payload(p: dict[str, Any]) -> EnumerationReport:
    classes = tuple(
        make_pair(c["q"], c["sigma2"], c["sigmaq"], c.get("n")) for c in p.get("classes", [])
    )
    return EnumerationReport(
        q=int(p["q"]),
        n=int(p["n"]),
        classes=classes,
        class_count=int(p["class_count"]),
        transitive_pair_count=int(p["transitive_pair_count"]),
        all_pair_count=int(p["all_pair_count"]),
        subgroup_count=int(p["subgroup_count"]),
    )


def kind_of(obj) -> str:
    if isinstance(obj, QBoidGraph):
        return "graph"
    if isinstance(obj, TreeDiagram):
        return "tree"
    if isinstance(obj, PermutationPair):
        return "pair"
    if isinstance(obj, SpecialPolygon):
        return "polygon"
    if isinstance(obj, EnumerationReport):
        return "report"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def payload(obj) -> dict[str, Any]:
    kind = kind_of(obj)
    if kind == "graph":
        return graph_to_raw(obj)
    if kind == "tree":
        return tree_to_raw(obj)
    if kind == "pair":
        return pair_payload(obj)
    if kind == "polygon":
        return polygon_payload(obj)
    return report_payload(obj)


def to_document(obj) -> dict[str, Any]:
    return {"format_version": FORMAT_VERSION, "kind": kind_of(obj), "payload": payload(obj)}


def serialize(obj, compact: bool = False) -> str:
    doc = to_document(obj)
    if compact:
        return json.dumps(doc, separators=(",", ":"))
    return json.dumps(doc, indent=2) + "\n"


def load_document(text: str) -> dict[str, Any]:
    """Parse and shape-check a document without validating the payload."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported or missing format_version {doc.get('format_version')!r}")
    if doc.get("kind") not in KINDS:
        raise ParseError(f"unknown kind {doc.get('kind')!r}")
    if not isinstance(doc.get("payload"), dict):
        raise ParseError("payload must be an object")
    return doc


def from_document(doc: dict[str, Any]):
    """Build a validated object; raises ValidationError for invariant violations."""
    kind, p = doc["kind"], doc["payload"]
    try:
        if kind == "graph":
            return validate_graph(p)
        if kind == "tree":
            return validate_tree(p)
        if kind == "pair":
            return make_pair(p["q"], p["sigma2"], p["sigmaq"], p.get("n"))
        if kind == "polygon":
            return _polygon_from_payload(p)
        return _report_from_payload(p)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed {kind} payload: {exc!r}") from None


def parse(text: str):
    return from_document(load_document(text))
