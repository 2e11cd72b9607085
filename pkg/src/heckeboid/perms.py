"""Monodromy pairs (sigma2, sigmaq) of q-boid graphs.

Permutations of ``{1..n}`` are tuples ``p`` with ``p[i - 1]`` the image of
``i``.  The Hecke group acts on edge labels on the right: ``K`` acts by
``sigma2`` and ``G`` by ``sigmaq``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    BadBasepoint,
    InternalInvariantViolation,
    LimitExceeded,
    SignatureMismatch,
    ValidationError,
    Violation,
)
from .model import HeckeSignature, QBoidGraph, validate_graph

Perm = tuple[int, ...]


# -- permutation helpers -----------------------------------------------------

def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(p: Perm, r: Perm) -> Perm:
    """``p o r``: apply ``r`` first, then ``p``."""
    return tuple(p[x - 1] for x in r)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p, start=1):
        inv[x - 1] = i
    return tuple(inv)


def conjugate(p: Perm, tau: Perm) -> Perm:
    """``tau o p o tau^-1``, i.e. ``p`` with its points renamed by ``tau``."""
    out = [0] * len(p)
    for i, x in enumerate(p, start=1):
        out[tau[i - 1] - 1] = tau[x - 1]
    return tuple(out)


def cycles(p: Perm, singletons: bool = True) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its least point, sorted by that point."""
    seen = [False] * len(p)
    out = []
    for i in range(1, len(p) + 1):
        if seen[i - 1]:
            continue
        cyc = []
        x = i
        while not seen[x - 1]:
            seen[x - 1] = True
            cyc.append(x)
            x = p[x - 1]
        if singletons or len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> list[int]:
    return sorted(len(c) for c in cycles(p))


def from_cycles(cycs: Iterable[Sequence[int]], n: int) -> Perm:
    img = list(range(1, n + 1))
    seen = set()
    for c in cycs:
        for x in c:
            if not 1 <= x <= n or x in seen:
                raise ValueError(f"bad point {x} in cycles {cycs!r}")
            seen.add(x)
        for a, b in zip(c, tuple(c[1:]) + tuple(c[:1])):
            img[a - 1] = b
    return tuple(img)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Perm:
    """Parse cycle notation such as ``"(1 2)(3 4)"`` or ``"(1,2,3)"``; ``"()"`` or ``"id"`` is the identity."""
    text = text.strip()
    if text in ("", "id", "()"):
        return identity(n)
    if _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"not in cycle notation: {text!r}")
    cycs = [[int(x) for x in re.split(r"[\s,]+", body.strip()) if x] for body in _CYCLE_RE.findall(text)]
    return from_cycles(cycs, n)


def format_cycles(p: Perm) -> str:
    cycs = cycles(p, singletons=False)
    if not cycs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


def is_transitive(perms: Sequence[Perm]) -> bool:
    n = len(perms[0])
    seen = {1}
    stack = [1]
    while stack:
        x = stack.pop()
        for p in perms:
            y = p[x - 1]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


# -- pairs -------------------------------------------------------------------

@dataclass(frozen=True)
class PermutationPair:
    signature: HeckeSignature
    sigma2: Perm
    sigmaq: Perm

    @property
    def q(self) -> int:
        return self.signature.q

    @property
    def n(self) -> int:
        return len(self.sigma2)

    def __str__(self) -> str:
        return f"q={self.q} sigma2={format_cycles(self.sigma2)} sigmaq={format_cycles(self.sigmaq)}"


def pair_violations(q: int, sigma2: Sequence[int], sigmaq: Sequence[int]) -> list[Violation]:
    out = []
    n = len(sigma2)
    if n < 1:
        return [Violation("Empty", "a pair needs at least one point")]
    for name, p in (("sigma2", sigma2), ("sigmaq", sigmaq)):
        if len(p) != n or sorted(p) != list(range(1, n + 1)):
            out.append(Violation("NotAPermutation", f"{name} is not a permutation of 1..{n}"))
    if out:
        return out
    if any(c not in (1, 2) for c in cycle_type(tuple(sigma2))):
        out.append(Violation("BadValence", f"sigma2 has cycle type {cycle_type(tuple(sigma2))}, parts must be 1 or 2"))
    if any(c not in (1, q) for c in cycle_type(tuple(sigmaq))):
        out.append(Violation("BadValence", f"sigmaq has cycle type {cycle_type(tuple(sigmaq))}, parts must be 1 or {q}"))
    if not is_transitive([tuple(sigma2), tuple(sigmaq)]):
        out.append(Violation("Disconnected", "the pair does not act transitively"))
    return out


def make_pair(q: int, sigma2, sigmaq, n: int | None = None) -> PermutationPair:
    """Build a validated pair from image arrays or cycle-notation strings."""
    sig = HeckeSignature(q)
    if isinstance(sigma2, str) or isinstance(sigmaq, str):
        if n is None:
            raise ValueError("n is required when a permutation is given in cycle notation")
    if isinstance(sigma2, str):
        sigma2 = parse_cycles(sigma2, n)
    if isinstance(sigmaq, str):
        sigmaq = parse_cycles(sigmaq, n)
    sigma2, sigmaq = tuple(sigma2), tuple(sigmaq)
    if n is not None and len(sigma2) != n:
        raise ValidationError([Violation("NotAPermutation", f"sigma2 has {len(sigma2)} points, expected {n}")])
    violations = pair_violations(q, sigma2, sigmaq)
    if violations:
        raise ValidationError(violations)
    return PermutationPair(sig, sigma2, sigmaq)


def graph_to_perms(graph: QBoidGraph) -> PermutationPair:
    """Read sigma2 from the black vertices and sigmaq from the white rotations."""
    sigma2 = from_cycles(graph.black, graph.n)
    sigmaq = from_cycles(graph.white, graph.n)
    return PermutationPair(graph.signature, sigma2, sigmaq)


def perms_to_graph(pair: PermutationPair) -> QBoidGraph:
    """Black vertices are the cycles of sigma2, white vertices those of sigmaq."""
    white = cycles(pair.sigmaq)
    return validate_graph({
        "q": pair.q,
        "edges": pair.n,
        "black": cycles(pair.sigma2),
        "white": white,
        "rotations": {i: list(w) for i, w in enumerate(white) if len(w) == pair.q},
    })


def _as_pair(obj) -> PermutationPair:
    return graph_to_perms(obj) if isinstance(obj, QBoidGraph) else obj


def face_permutation(pair: PermutationPair) -> Perm:
    """sigma2 o sigmaq (sigmaq applied first)."""
    return compose(pair.sigma2, pair.sigmaq)


def faces(pair: PermutationPair) -> list[tuple[int, ...]]:
    return cycles(face_permutation(pair))


# -- invariants --------------------------------------------------------------

@dataclass(frozen=True)
class OrbifoldInvariants:
    index: int
    e2: int
    eq: int
    cusps: int
    genus: int


def orbifold_invariants(pair: PermutationPair) -> OrbifoldInvariants:
    """Index, elliptic class counts, cusp count and genus of the quotient orbifold.

    The genus is solved from
    ``2 - 2g = -n(q-2)/(2q) + f + e2/2 + eq(q-1)/q``.
    """
    pair = _as_pair(pair)
    n, q = pair.n, pair.q
    e2 = sum(1 for i, x in enumerate(pair.sigma2, start=1) if i == x)
    eq = sum(1 for i, x in enumerate(pair.sigmaq, start=1) if i == x)
    f = len(faces(pair))
    euler = Fraction(-n * (q - 2), 2 * q) + f + Fraction(e2, 2) + Fraction(eq * (q - 1), q)
    genus = (2 - euler) / 2
    if genus.denominator != 1 or genus < 0:
        raise InternalInvariantViolation(f"orbifold genus {genus} for {pair}")
    return OrbifoldInvariants(index=n, e2=e2, eq=eq, cusps=f, genus=int(genus))


def dessin_genus(pair: PermutationPair) -> int:
    """Genus of the surface carrying the graph's rotation system (V - E + F = 2 - 2g)."""
    pair = _as_pair(pair)
    chi = len(cycles(pair.sigma2)) + len(cycles(pair.sigmaq)) + len(faces(pair)) - pair.n
    if chi % 2 or chi > 2:
        raise InternalInvariantViolation(f"Euler characteristic {chi} for {pair}")
    return (2 - chi) // 2


# -- isomorphism and canonical forms ----------------------------------------

def _bfs_relabel(s2: Sequence[int], sq: Sequence[int], start: int) -> list[int] | None:
    """Relabel points in BFS order from ``start``, following sigmaq then sigma2.

    Returns ``new`` with ``new[x - 1]`` the new label of ``x`` or None when the
    action is not transitive.
    """
    n = len(s2)
    new = [0] * n
    new[start - 1] = 1
    order = [start]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for p in (sq, s2):
            y = p[x - 1]
            if not new[y - 1]:
                order.append(y)
                new[y - 1] = len(order)
    return new if len(order) == n else None


def _relabelled(pair: PermutationPair, new: Sequence[int]) -> tuple[Perm, Perm]:
    return conjugate(pair.sigma2, tuple(new)), conjugate(pair.sigmaq, tuple(new))


def canonical_labellings(pair: PermutationPair):
    """Yield ``(key, relabelling)`` for every start label."""
    for start in range(1, pair.n + 1):
        new = _bfs_relabel(pair.sigma2, pair.sigmaq, start)
        if new is None:
            raise InternalInvariantViolation(f"intransitive pair {pair}")
        yield _relabelled(pair, new), new


def canonical_form(pair: PermutationPair) -> PermutationPair:
    """The least BFS relabelling of the pair; equal forms <=> isomorphic pairs."""
    pair = _as_pair(pair)
    key, _ = min(canonical_labellings(pair), key=lambda kv: kv[0])
    return PermutationPair(pair.signature, *key)


def automorphism_count(pair: PermutationPair) -> int:
    """Order of the centralizer of the pair in Sym(n)."""
    pair = _as_pair(pair)
    keys = [k for k, _ in canonical_labellings(pair)]
    best = min(keys)
    return sum(1 for k in keys if k == best)


def _check_signature(p1: PermutationPair, p2: PermutationPair):
    if p1.q != p2.q or p1.n != p2.n:
        raise SignatureMismatch(f"(q={p1.q}, n={p1.n}) vs (q={p2.q}, n={p2.n})")


def isomorphism(g1, g2) -> Perm | None:
    """A relabelling ``tau`` with ``tau sigma(g1) tau^-1 = sigma(g2)`` for both generators, or None.

    Accepts graphs or pairs.  Transitivity means ``tau`` is fixed by the image
    of label 1, so each of the n candidates is propagated and checked.
    """
    p1, p2 = _as_pair(g1), _as_pair(g2)
    _check_signature(p1, p2)
    n = p1.n
    for target in range(1, n + 1):
        tau = [0] * n
        tau[0] = target
        stack = [1]
        ok = True
        while stack and ok:
            x = stack.pop()
            for a, b in ((p1.sigma2, p2.sigma2), (p1.sigmaq, p2.sigmaq)):
                y, ty = a[x - 1], b[tau[x - 1] - 1]
                if tau[y - 1] == 0:
                    tau[y - 1] = ty
                    stack.append(y)
                elif tau[y - 1] != ty:
                    ok = False
                    break
        if ok and sorted(tau) == list(range(1, n + 1)):
            tau = tuple(tau)
            if conjugate(p1.sigma2, tau) == p2.sigma2 and conjugate(p1.sigmaq, tau) == p2.sigmaq:
                return tau
    return None


def are_isomorphic(g1, g2) -> bool:
    return isomorphism(g1, g2) is not None


# -- subgroup generators ----------------------------------------------------

LETTERS = ("K", "K^-1", "G", "G^-1")
_INVERSE = {"K": "K^-1", "K^-1": "K", "G": "G^-1", "G^-1": "G"}

Word = tuple[str, ...]


def free_reduce(word: Iterable[str]) -> Word:
    out: list[str] = []
    for x in word:
        if out and out[-1] == _INVERSE[x]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word: Sequence[str]) -> Word:
    return tuple(_INVERSE[x] for x in reversed(word))


def act(pair: PermutationPair, point: int, word: Sequence[str]) -> int:
    """Right action of a word on a label."""
    s2, sq = pair.sigma2, pair.sigmaq
    sq_inv = inverse(sq)
    for x in word:
        if x in ("K", "K^-1"):
            point = s2[point - 1]
        elif x == "G":
            point = sq[point - 1]
        elif x == "G^-1":
            point = sq_inv[point - 1]
        else:
            raise ValueError(f"unknown letter {x!r}")
    return point


def format_word(word: Sequence[str]) -> str:
    return " ".join(word) if word else "1"


def subgroup_generators(pair: PermutationPair, basepoint: int = 1) -> list[Word]:
    """Schreier generators of the stabilizer of ``basepoint``.

    A BFS spanning tree of the Schreier graph gives transversal words
    ``u_x`` with ``basepoint . u_x = x``; each non-tree edge ``x --s--> y``
    contributes ``u_x s u_y^-1``.
    """
    pair = _as_pair(pair)
    if not isinstance(basepoint, int) or not 1 <= basepoint <= pair.n:
        raise BadBasepoint(f"basepoint {basepoint!r} not in 1..{pair.n}")
    gens = (("K", pair.sigma2), ("G", pair.sigmaq))
    transversal: dict[int, Word] = {basepoint: ()}
    tree_edges = set()
    queue = deque([basepoint])
    while queue:
        x = queue.popleft()
        for s, p in gens:
            y = p[x - 1]
            if y not in transversal:
                transversal[y] = transversal[x] + (s,)
                tree_edges.add((x, s))
                queue.append(y)
    out: list[Word] = []
    seen = set()
    for x in sorted(transversal, key=lambda v: (len(transversal[v]), transversal[v])):
        for s, p in gens:
            if (x, s) in tree_edges:
                continue
            w = free_reduce(transversal[x] + (s,) + invert_word(transversal[p[x - 1]]))
            if w and w not in seen:
                seen.add(w)
                out.append(w)
    return out


def coset_count(q: int, words: Sequence[Sequence[str]], max_cosets: int = 100_000) -> int:
    """Index of the subgroup generated by ``words`` in <K, G | K^2, G^q>.

    Plain HLT Todd-Coxeter enumeration with coincidence processing.
    """
    col = {"K": 0, "K^-1": 1, "G": 2, "G^-1": 3}
    inv = (1, 0, 3, 2)
    relators = [[0, 0], [2] * q]
    subgens = [[col[x] for x in w] for w in words if w]

    table: list[list[int | None]] = [[None] * 4]
    parent = [0]

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def merge(k, l, queue):
        a, b = rep(k), rep(l)
        if a != b:
            a, b = min(a, b), max(a, b)
            parent[b] = a
            queue.append(b)

    def coincidence(a, b):
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(4):
                d = table[g][x]
                if d is None:
                    continue
                table[d][inv[x]] = None
                mu, nu = rep(g), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x], queue)
                elif table[nu][inv[x]] is not None:
                    merge(mu, table[nu][inv[x]], queue)
                else:
                    table[mu][x] = nu
                    table[nu][inv[x]] = mu

    def define(a, x):
        if len(table) >= max_cosets:
            raise LimitExceeded(f"coset enumeration exceeded {max_cosets} cosets")
        b = len(table)
        table.append([None] * 4)
        parent.append(b)
        table[a][x] = b
        table[b][inv[x]] = a

    def scan_and_fill(a, w):
        f, b = a, a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    coincidence(f, a)
                return
            while j >= i and table[b][inv[w[j]]] is not None:
                b = table[b][inv[w[j]]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][inv[w[i]]] = f
                return
            define(f, w[i])

    for w in subgens:
        scan_and_fill(0, w)
    a = 0
    while a < len(table):
        for r in relators:
            if parent[a] != a:
                break
            scan_and_fill(a, r)
        if parent[a] == a:
            for x in range(4):
                if table[a][x] is None:
                    define(a, x)
        a += 1
    return sum(1 for c in range(len(table)) if parent[c] == c)
