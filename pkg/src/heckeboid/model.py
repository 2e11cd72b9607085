"""Bipartite q-boid graphs and tree diagrams.

Both types are plain frozen dataclasses.  Construct them through
:func:`validate_graph` and :func:`validate_tree`, which check every
structural invariant and normalize the representation so that equal
objects compare equal.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Mapping

from .errors import BadQ, ValidationError, Violation


@dataclass(frozen=True)
class HeckeSignature:
    """The Hecke group H_q; ``q`` is the order of the elliptic generator G."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or isinstance(self.q, bool) or self.q < 3:
            raise BadQ(f"q must be an integer >= 3, got {self.q!r}")


def rotate_to_min(cycle):
    """Rotate a cyclic sequence so that it starts at its least element."""
    cycle = tuple(cycle)
    if not cycle:
        return cycle
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


@dataclass(frozen=True)
class QBoidGraph:
    """A connected bipartite ribbon graph on edge labels ``1..n``.

    ``black`` holds the incidence sets of the V0 vertices (sorted labels).
    ``white`` holds the V1 vertices; a q-valent white vertex is stored in its
    counter-clockwise rotation order, rotated to start at its least label.
    Both vertex lists are sorted by least label.
    """

    signature: HeckeSignature
    n: int
    black: tuple[tuple[int, ...], ...]
    white: tuple[tuple[int, ...], ...]

    @property
    def q(self) -> int:
        return self.signature.q

    @property
    def rotations(self) -> dict[int, tuple[int, ...]]:
        return {i: w for i, w in enumerate(self.white) if len(w) == self.q}

    @property
    def vertex_count(self) -> int:
        return len(self.black) + len(self.white)

    def black_of(self) -> dict[int, int]:
        """Map edge label -> index of its black endpoint."""
        return {e: i for i, b in enumerate(self.black) for e in b}

    def white_of(self) -> dict[int, int]:
        return {e: i for i, w in enumerate(self.white) for e in w}


@dataclass(frozen=True)
class TreeDiagram:
    """A plane tree with q-valent internal vertices and red/blue terminals.

    ``edges[k]`` is the pair of endpoints of the edge labelled ``k + 1``.
    ``rotations`` gives the counter-clockwise edge order at each internal
    vertex.  ``sigma`` is the involution on the red vertices, fixed points
    included.
    """

    signature: HeckeSignature
    edges: tuple[tuple[str, str], ...]
    rotations: Mapping[str, tuple[int, ...]] = field(hash=False)
    red: frozenset[str]
    blue: frozenset[str]
    sigma: Mapping[str, str] = field(hash=False)

    @property
    def q(self) -> int:
        return self.signature.q

    @property
    def vertices(self) -> list[str]:
        seen = {}
        for u, v in self.edges:
            seen.setdefault(u, None)
            seen.setdefault(v, None)
        return list(seen)

    @property
    def internal(self) -> frozenset[str]:
        return frozenset(self.rotations)

    def incident(self) -> dict[str, list[int]]:
        inc: dict[str, list[int]] = {}
        for k, (u, v) in enumerate(self.edges, start=1):
            inc.setdefault(u, []).append(k)
            inc.setdefault(v, []).append(k)
        return inc

    def other_end(self, label: int, vertex: str) -> str:
        u, v = self.edges[label - 1]
        return v if u == vertex else u

    def sigma_orbits(self) -> list[tuple[str, ...]]:
        """Orbits of sigma, as sorted tuples, sorted."""
        return sorted({tuple(sorted({r, self.sigma[r]})) for r in self.red})


def _signature(raw: Mapping[str, Any], violations: list[Violation]):
    try:
        return HeckeSignature(raw["q"])
    except KeyError:
        violations.append(Violation("BadQ", "missing q"))
    except BadQ as exc:
        violations.append(Violation("BadQ", str(exc)))
    return None


def _label_list(obj, what, violations):
    if not isinstance(obj, (list, tuple)) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in obj
    ):
        violations.append(Violation("Malformed", f"{what} must be a list of integer labels"))
        return None
    return list(obj)


def validate_graph(candidate: Mapping[str, Any]) -> QBoidGraph:
    """Validate a raw graph description and return a normalized QBoidGraph.

    ``candidate`` has the keys ``q``, ``edges`` (the edge count n), ``black``
    and ``white`` (lists of incidence lists) and ``rotations`` (white vertex
    index -> counter-clockwise label list, required for q-valent vertices).
    Raises :class:`ValidationError` listing every violated invariant.
    """
    violations: list[Violation] = []
    sig = _signature(candidate, violations)
    n = candidate.get("edges")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        violations.append(Violation("Empty", f"edge count must be a positive integer, got {n!r}"))
        raise ValidationError(violations)
    q = sig.q if sig else None

    black = [_label_list(b, f"black vertex {i}", violations) for i, b in enumerate(candidate.get("black", []))]
    white = [_label_list(w, f"white vertex {i}", violations) for i, w in enumerate(candidate.get("white", []))]
    if violations:
        raise ValidationError(violations)

    labels = set(range(1, n + 1))
    for color, verts in (("black", black), ("white", white)):
        seen = Counter(e for v in verts for e in v)
        for e in sorted(set(seen) - labels):
            violations.append(Violation("DanglingEdge", f"{color} vertex uses unknown label {e}"))
        for e in sorted(labels - set(seen)):
            violations.append(Violation("DanglingEdge", f"edge {e} has no {color} endpoint"))
        for e, c in sorted(seen.items()):
            if c > 1 and e in labels:
                violations.append(
                    Violation("NotBipartite", f"edge {e} joins two {color} vertices")
                )

    for i, b in enumerate(black):
        if len(b) not in (1, 2):
            violations.append(Violation("BadValence", f"black vertex {i} has valence {len(b)}, expected 1 or 2"))
    for i, w in enumerate(white):
        if q is not None and len(w) not in (1, q):
            violations.append(Violation("BadValence", f"white vertex {i} has valence {len(w)}, expected 1 or {q}"))

    raw_rot = candidate.get("rotations") or {}
    rotations: dict[int, list[int]] = {}
    for key, rot in raw_rot.items():
        try:
            idx = int(key)
        except (TypeError, ValueError):
            violations.append(Violation("BadRotation", f"rotation key {key!r} is not a white vertex index"))
            continue
        if not 0 <= idx < len(white):
            violations.append(Violation("BadRotation", f"rotation given for unknown white vertex {idx}"))
            continue
        rot = _label_list(rot, f"rotation at white vertex {idx}", violations)
        if rot is None:
            continue
        if len(rot) != len(set(rot)) or sorted(rot) != sorted(white[idx]):
            violations.append(
                Violation("BadRotation", f"rotation {rot} at white vertex {idx} does not match incidence {sorted(white[idx])}")
            )
            continue
        rotations[idx] = rot
    for i, w in enumerate(white):
        if q is not None and len(w) == q and i not in rotations:
            violations.append(Violation("BadRotation", f"white vertex {i} of valence {q} has no rotation"))

    if violations:
        raise ValidationError(violations)

    # connectivity: union black and white endpoints of every edge
    parent = list(range(len(black) + len(white)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    b_of = {e: i for i, b in enumerate(black) for e in b}
    w_of = {e: i for i, w in enumerate(white) for e in w}
    for e in labels:
        parent[find(b_of[e])] = find(len(black) + w_of[e])
    if len({find(x) for x in range(len(parent))}) != 1:
        raise ValidationError([Violation("Disconnected", "the underlying graph is not connected")])

    whites = [rotate_to_min(rotations.get(i, w)) for i, w in enumerate(white)]
    return QBoidGraph(
        signature=sig,
        n=n,
        black=tuple(sorted(tuple(sorted(b)) for b in black)),
        white=tuple(sorted(whites)),
    )


def graph_to_raw(graph: QBoidGraph) -> dict[str, Any]:
    """Inverse of :func:`validate_graph`; the JSON payload of a graph."""
    return {
        "q": graph.q,
        "edges": graph.n,
        "black": [list(b) for b in graph.black],
        "white": [list(w) for w in graph.white],
        "rotations": {str(i): list(w) for i, w in graph.rotations.items()},
    }


def cycle_rank(graph: QBoidGraph) -> int:
    """First Betti number E - V + 1 of the (connected) graph."""
    return graph.n - graph.vertex_count + 1


def validate_tree(candidate: Mapping[str, Any]) -> TreeDiagram:
    """Validate a raw tree diagram description.

    ``candidate`` has ``q``, ``edges`` (list of endpoint-name pairs; edge
    ``k`` is ``edges[k-1]``), ``rotations`` (internal vertex -> label list),
    ``red``, ``blue`` (vertex name lists) and ``sigma`` (list of two-element
    orbits; red vertices not mentioned are fixed).
    """
    violations: list[Violation] = []
    sig = _signature(candidate, violations)
    q = sig.q if sig else None

    raw_edges = candidate.get("edges") or []
    if not raw_edges:
        violations.append(Violation("Empty", "a tree diagram needs at least one edge"))
        raise ValidationError(violations)
    edges = []
    for k, e in enumerate(raw_edges, start=1):
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            violations.append(Violation("Malformed", f"edge {k} must be a pair of vertex names"))
            continue
        u, v = str(e[0]), str(e[1])
        if u == v:
            violations.append(Violation("NotATree", f"edge {k} is a loop at {u}"))
        edges.append((u, v))
    if violations:
        raise ValidationError(violations)

    inc: dict[str, list[int]] = {}
    for k, (u, v) in enumerate(edges, start=1):
        inc.setdefault(u, []).append(k)
        inc.setdefault(v, []).append(k)
    vertices = list(inc)

    # acyclic + connected  <=>  connected with |E| = |V| - 1
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    components = len({find(v) for v in vertices})
    if components != 1:
        violations.append(Violation("NotATree", f"graph has {components} components"))
    if len(edges) != len(vertices) - components:
        violations.append(Violation("NotATree", "graph contains a cycle"))

    terminals = {v for v in vertices if len(inc[v]) == 1}
    for v in vertices:
        if q is not None and len(inc[v]) not in (1, q):
            violations.append(Violation("BadInternalValence", f"vertex {v} has valence {len(inc[v])}, expected 1 or {q}"))

    raw_rot = candidate.get("rotations") or {}
    rotations = {}
    for v, rot in raw_rot.items():
        v = str(v)
        if v not in inc or len(inc[v]) == 1:
            violations.append(Violation("BadRotation", f"rotation given at non-internal vertex {v}"))
            continue
        if not isinstance(rot, (list, tuple)) or sorted(rot) != sorted(inc[v]) or len(set(rot)) != len(rot):
            violations.append(Violation("BadRotation", f"rotation {rot} at {v} does not match incident edges {sorted(inc[v])}"))
            continue
        rotations[v] = rotate_to_min(int(x) for x in rot)
    for v in vertices:
        if q is not None and len(inc[v]) == q and v not in rotations:
            violations.append(Violation("BadRotation", f"internal vertex {v} has no rotation"))

    red = {str(v) for v in candidate.get("red") or []}
    blue = {str(v) for v in candidate.get("blue") or []}
    for v in sorted(red & blue):
        violations.append(Violation("BadPartition", f"vertex {v} is both red and blue"))
    for v in sorted((red | blue) - terminals):
        violations.append(Violation("BadPartition", f"vertex {v} is colored but not terminal"))
    for v in sorted(terminals - red - blue):
        violations.append(Violation("BadPartition", f"terminal {v} is neither red nor blue"))

    sigma = {v: v for v in red}
    for orbit in candidate.get("sigma") or []:
        orbit = [str(x) for x in orbit] if isinstance(orbit, (list, tuple)) else None
        if not orbit or len(orbit) not in (1, 2):
            violations.append(Violation("BadInvolution", f"sigma orbit {orbit} must have one or two elements"))
            continue
        if any(x not in red for x in orbit):
            violations.append(Violation("BadInvolution", f"sigma orbit {orbit} leaves the red vertices"))
            continue
        a, b = orbit[0], orbit[-1]
        if (sigma[a] != a and sigma[a] != b) or (sigma[b] != b and sigma[b] != a):
            violations.append(Violation("BadInvolution", f"sigma orbit {orbit} conflicts with another orbit"))
            continue
        sigma[a], sigma[b] = b, a

    if violations:
        raise ValidationError(violations)
    return TreeDiagram(
        signature=sig,
        edges=tuple(edges),
        rotations=dict(sorted(rotations.items())),
        red=frozenset(red),
        blue=frozenset(blue),
        sigma=dict(sorted(sigma.items())),
    )


def tree_to_raw(tree: TreeDiagram) -> dict[str, Any]:
    return {
        "q": tree.q,
        "edges": [list(e) for e in tree.edges],
        "rotations": {v: list(r) for v, r in tree.rotations.items()},
        "red": sorted(tree.red),
        "blue": sorted(tree.blue),
        "sigma": [list(o) for o in tree.sigma_orbits() if len(o) == 2],
    }
