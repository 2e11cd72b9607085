"""Conversions between tree diagrams and q-boid graphs.

A tree diagram becomes a graph by gluing each red vertex to its sigma-partner
and subdividing every edge whose two ends are odd (internal or blue).  In the
other direction a graph is cut open at ``cycle_rank`` valence-2 black vertices
and the remaining valence-2 black vertices are smoothed away.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .errors import InvalidCutSet, NotRealizable
from .model import (
    HeckeSignature,
    QBoidGraph,
    TreeDiagram,
    cycle_rank,
    validate_graph,
    validate_tree,
)
from .perms import PermutationPair, canonical_form


@dataclass(frozen=True)
class CutSet:
    """Indices (into ``graph.black``) of the valence-2 black vertices to cut."""

    vertices: frozenset[int]

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertices))


@dataclass(frozen=True)
class Conversion:
    """A conversion result together with the edge-label correspondence."""

    result: object
    # output label -> tuple of input labels it came from
    label_map: dict


def _is_odd(tree: TreeDiagram, v: str) -> bool:
    return v in tree.rotations or v in tree.blue


def tree_to_graph_with_map(tree: TreeDiagram) -> Conversion:
    for k, (u, v) in enumerate(tree.edges, start=1):
        if u in tree.red and v in tree.red:
            raise NotRealizable(f"edge {k} joins two red vertices; its endpoints would both be black")

    black: list[list[int]] = []
    red_black: dict[str, int] = {}
    for orbit in tree.sigma_orbits():
        for r in orbit:
            red_black[r] = len(black)
        black.append([])

    # graph label of the half of tree edge k at vertex v
    half: dict[tuple[int, str], int] = {}
    label_map: dict[int, tuple[int, ...]] = {}
    n = 0
    for k, (u, v) in enumerate(tree.edges, start=1):
        if _is_odd(tree, u) and _is_odd(tree, v):
            mid = len(black)
            black.append([])
            for end in (u, v):
                n += 1
                half[(k, end)] = n
                black[mid].append(n)
                label_map[n] = (k,)
        else:
            n += 1
            red, odd = (u, v) if u in tree.red else (v, u)
            half[(k, odd)] = n
            black[red_black[red]].append(n)
            label_map[n] = (k,)

    white = []
    rotations = {}
    for v in tree.vertices:
        if v in tree.rotations:
            rotations[len(white)] = [half[(k, v)] for k in tree.rotations[v]]
            white.append(rotations[len(white)])
        elif v in tree.blue:
            (k,) = [k for k, e in enumerate(tree.edges, start=1) if v in e]
            white.append([half[(k, v)]])

    graph = validate_graph({"q": tree.q, "edges": n, "black": black, "white": white, "rotations": rotations})
    return Conversion(graph, label_map)


def tree_to_graph(tree: TreeDiagram) -> QBoidGraph:
    return tree_to_graph_with_map(tree).result


def _cut_is_tree(graph: QBoidGraph, cut: frozenset[int]) -> bool:
    """Connectivity after splitting each cut vertex into one vertex per edge."""
    nb = len(graph.black)
    parent = list(range(nb + len(graph.white) + graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    white_of = graph.white_of()
    for i, b in enumerate(graph.black):
        for e in b:
            node = nb + len(graph.white) + e - 1 if i in cut else i
            parent[find(node)] = find(nb + white_of[e])
    used = {find(i) for i in range(nb) if i not in cut}
    used |= {find(nb + i) for i in range(len(graph.white))}
    used |= {find(nb + len(graph.white) + e - 1) for i in cut for e in graph.black[i]}
    return len(used) == 1


def check_cut_set(graph: QBoidGraph, cuts: CutSet) -> None:
    r = cycle_rank(graph)
    if len(cuts.vertices) != r:
        raise InvalidCutSet(f"cut set has {len(cuts.vertices)} vertices, cycle rank is {r}")
    for i in cuts.vertices:
        if not 0 <= i < len(graph.black) or len(graph.black[i]) != 2:
            raise InvalidCutSet(f"black vertex {i} is not a valence-2 black vertex")
    if not _cut_is_tree(graph, cuts.vertices):
        raise InvalidCutSet("cutting at these vertices does not leave a tree")


def enumerate_cut_sets(graph: QBoidGraph) -> list[CutSet]:
    """Every valid cut set, lexicographically ordered."""
    r = cycle_rank(graph)
    candidates = [i for i, b in enumerate(graph.black) if len(b) == 2]
    return [
        CutSet(frozenset(c))
        for c in combinations(candidates, r)
        if _cut_is_tree(graph, frozenset(c))
    ]


def graph_to_tree_with_map(graph: QBoidGraph, cuts: CutSet) -> Conversion:
    check_cut_set(graph, cuts)
    white_of = graph.white_of()
    black_of = graph.black_of()
    q = graph.q

    def white_name(i):
        return f"w{i}"

    edges: list[tuple[str, str]] = []
    label_map: dict[int, tuple[int, ...]] = {}
    tree_label: dict[int, int] = {}  # graph label -> tree label
    red: list[str] = []
    sigma: list[list[str]] = []
    for e in range(1, graph.n + 1):
        if e in tree_label:
            continue
        j = black_of[e]
        b = graph.black[j]
        w = white_name(white_of[e])
        if len(b) == 1 or j in cuts.vertices:
            r = f"r{e}"
            red.append(r)
            edges.append((r, w))
            tree_label[e] = len(edges)
            label_map[len(edges)] = (e,)
            if len(b) == 2 and e == b[0]:
                sigma.append([r, f"r{b[1]}"])
        else:
            other = b[1] if b[0] == e else b[0]
            edges.append((w, white_name(white_of[other])))
            tree_label[e] = tree_label[other] = len(edges)
            label_map[len(edges)] = (e, other)

    rotations = {}
    blue = []
    for i, wv in enumerate(graph.white):
        if len(wv) == q:
            rotations[white_name(i)] = [tree_label[e] for e in wv]
        else:
            blue.append(white_name(i))
    tree = validate_tree({
        "q": q, "edges": edges, "rotations": rotations,
        "red": red, "blue": blue, "sigma": sigma,
    })
    return Conversion(tree, label_map)


def graph_to_tree(graph: QBoidGraph, cuts: CutSet | None = None) -> TreeDiagram:
    """Cut the graph open into a tree diagram; ``cuts`` defaults to the least valid cut set."""
    if cuts is None:
        cuts = enumerate_cut_sets(graph)[0]
    return graph_to_tree_with_map(graph, cuts).result


# -- small tree diagrams -----------------------------------------------------

def _prufer_trees(k: int):
    if k == 1:
        yield []
        return
    if k == 2:
        yield [(0, 1)]
        return
    for seq in product(range(k), repeat=k - 2):
        degree = [1] * k
        for x in seq:
            degree[x] += 1
        edges = []
        seq = list(seq)
        for x in seq:
            leaf = min(i for i in range(k) if degree[i] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [i for i in range(k) if degree[i] == 1]
        edges.append((u, v))
        yield edges


def _shape_key(q: int, edges, rotations) -> tuple:
    """Canonical key of an uncolored plane tree via its dart permutations."""
    darts = {}
    for k in range(1, len(edges) + 1):
        darts[(k, 0)] = 2 * k - 1
        darts[(k, 1)] = 2 * k
    m = 2 * len(edges)
    alpha = [0] * m
    for k in range(1, len(edges) + 1):
        alpha[2 * k - 2], alpha[2 * k - 1] = 2 * k, 2 * k - 1
    rot = list(range(1, m + 1))
    for v, labels in rotations.items():
        ds = [darts[(k, 0 if edges[k - 1][0] == v else 1)] for k in labels]
        for a, b in zip(ds, ds[1:] + ds[:1]):
            rot[a - 1] = b
    c = canonical_form(PermutationPair(HeckeSignature(q), tuple(alpha), tuple(rot)))
    return c.sigma2, c.sigmaq


def plane_tree_shapes(q: int, internal: int):
    """Uncolored plane trees with ``internal`` q-valent vertices, one per isomorphism class.

    Yields ``(edges, rotations, terminals)`` with internal vertices named
    ``v0..`` and terminals ``t0..``.
    """
    if internal == 0:
        yield [("t0", "t1")], {}, ["t0", "t1"]
        return
    seen = set()
    for skeleton in _prufer_trees(internal):
        nbrs = {i: [] for i in range(internal)}
        for a, b in skeleton:
            nbrs[a].append(b)
            nbrs[b].append(a)
        if any(len(x) > q for x in nbrs.values()):
            continue
        # per vertex: cyclic arrangements of skeleton neighbours among q slots
        choices = []
        for i in range(internal):
            opts = set()
            for slots in permutations(range(q), len(nbrs[i])):
                if nbrs[i] and slots[0] != 0:
                    continue
                arr = [None] * q
                for nb, s in zip(nbrs[i], slots):
                    arr[s] = nb
                opts.add(tuple(arr))
            choices.append(sorted(opts, key=repr))
        for combo in product(*choices):
            edges: list[tuple[str, str]] = []
            label = {}
            for a, b in skeleton:
                edges.append((f"v{a}", f"v{b}"))
                label[(a, b)] = label[(b, a)] = len(edges)
            terminals = []
            rotations = {}
            for i, arr in enumerate(combo):
                rot = []
                for slot in arr:
                    if slot is None:
                        t = f"t{len(terminals)}"
                        terminals.append(t)
                        edges.append((f"v{i}", t))
                        rot.append(len(edges))
                    else:
                        rot.append(label[(i, slot)])
                rotations[f"v{i}"] = rot
            key = _shape_key(q, edges, rotations)
            if key in seen:
                continue
            seen.add(key)
            yield edges, rotations, terminals


def _partial_involutions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _partial_involutions(rest):
        yield [[first]] + sub
    for j, other in enumerate(rest):
        for sub in _partial_involutions(rest[:j] + rest[j + 1:]):
            yield [[first, other]] + sub


def enumerate_tree_diagrams(q: int, max_internal: int):
    """All colorings and involutions on every plane tree shape with at most ``max_internal`` internal vertices.

    Shapes are deduplicated up to isomorphism; colorings are not.
    """
    for k in range(max_internal + 1):
        for edges, rotations, terminals in plane_tree_shapes(q, k):
            for colors in product((0, 1), repeat=len(terminals)):
                red = [t for t, c in zip(terminals, colors) if c == 0]
                blue = [t for t, c in zip(terminals, colors) if c == 1]
                for orbits in _partial_involutions(red):
                    yield validate_tree({
                        "q": q, "edges": edges, "rotations": rotations,
                        "red": red, "blue": blue,
                        "sigma": [o for o in orbits if len(o) == 2],
                    })


def is_realizable(tree: TreeDiagram) -> bool:
    return not any(u in tree.red and v in tree.red for u, v in tree.edges)
