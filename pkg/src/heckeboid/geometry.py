"""Hyperbolic realization in the upper half-plane.

Points are Python complex numbers, with the point at infinity represented
by the :data:`INF` singleton.  Real boundary points are complex numbers with
zero imaginary part.
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass

from .errors import BadCenter, BadQ, NotRealizable, NumericalFailure
from .model import TreeDiagram
from .treeops import is_realizable

TOL = 1e-9


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(z) -> bool:
    return z is INF


def chordal(z, w) -> float:
    """Chordal distance on the Riemann sphere; handles INF."""
    if z is INF and w is INF:
        return 0.0
    if z is INF:
        z, w = w, z
    if w is INF:
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1.0 + abs(z) ** 2) * (1.0 + abs(w) ** 2))


def hyperbolic_distance(z: complex, w: complex) -> float:
    return math.acosh(1.0 + abs(z - w) ** 2 / (2.0 * z.imag * w.imag))


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (a z + b) / (c z + d) with real entries and ad - bc > 0."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if not self.det() > 0:
            raise ValueError(f"determinant must be positive, got {self.det()}")

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        """Composition: ``(self @ other)(z) == self(other(z))``."""
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h).normalized()

    def __call__(self, z):
        a, b, c, d = self.a, self.b, self.c, self.d
        scale = max(abs(a), abs(b), abs(c), abs(d))
        if z is INF:
            if abs(c) <= 1e-14 * scale:
                return INF
            return complex(a / c)
        num = a * z + b
        den = c * z + d
        if abs(den) <= 1e-14 * (abs(c) * abs(z) + abs(d)):
            return INF
        w = num / den
        return complex(w.real, 0.0) if z.imag == 0 else w

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a).normalized()

    def power(self, k: int) -> "MoebiusMap":
        base = self if k >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(k)):
            out = out @ base
        return out

    def normalized(self) -> "MoebiusMap":
        """Scale to determinant 1."""
        s = math.sqrt(self.det())
        return MoebiusMap(self.a / s, self.b / s, self.c / s, self.d / s)

    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def projective_key(self) -> tuple[float, float, float, float]:
        """Entries divided by the largest-magnitude entry (sign included)."""
        e = self.entries()
        big = max(e, key=abs)
        return tuple(x / big for x in e)

    def distance(self, other: "MoebiusMap") -> float:
        """Max-norm residual between projectively normalized matrices."""
        k1, k2 = self.projective_key(), other.projective_key()
        return max(abs(x - y) for x, y in zip(k1, k2))

    def equals(self, other: "MoebiusMap", tol: float = TOL) -> bool:
        return self.distance(other) < tol

    def trace(self) -> float:
        """Trace after normalizing to determinant 1 (defined up to sign)."""
        m = self.normalized()
        return m.a + m.d


IDENTITY = MoebiusMap(1.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class HeckeGenerators:
    q: int
    lam: float
    K: MoebiusMap
    G: MoebiusMap


def _check_q(q):
    if not isinstance(q, int) or q < 3:
        raise BadQ(f"q must be an integer >= 3, got {q!r}")


def hecke_generators(q: int) -> HeckeGenerators:
    """K(z) = -1/z and G(z) = -1/(z + lambda) with lambda = 2 cos(pi/q)."""
    _check_q(q)
    lam = 2.0 * math.cos(math.pi / q)
    return HeckeGenerators(q, lam, MoebiusMap(0.0, -1.0, 1.0, 0.0), MoebiusMap(0.0, -1.0, 1.0, lam))


def rotation_about(center: complex, angle: float) -> MoebiusMap:
    """Elliptic map fixing ``center`` whose derivative there is ``exp(i angle)``."""
    center = complex(center) if center is not INF else center
    if center is INF or not center.imag > 0 or not math.isfinite(abs(center)):
        raise BadCenter(f"rotation center {center!r} is not in the open upper half-plane")
    x, y = center.real, center.imag
    c, s = math.cos(angle / 2.0), math.sin(angle / 2.0)
    # A R_i A^-1 with A(z) = y z + x and R_i = [[c, s], [-s, c]]
    A = MoebiusMap(y, x, 0.0, 1.0)
    return A @ MoebiusMap(c, s, -s, c) @ A.inverse()


def rho(q: int) -> complex:
    return cmath.exp(1j * math.pi / q)


def f_edge(q: int) -> tuple[tuple[complex, complex], float]:
    """Endpoints (i, e^{i pi/q}) and hyperbolic length arccosh(1/sin(pi/q))."""
    _check_q(q)
    return (1j, rho(q)), math.acosh(1.0 / math.sin(math.pi / q))


def fundamental_area(q: int) -> float:
    """Area of a fundamental domain of H_q (two copies of the (pi/2, pi/q, 0) triangle)."""
    return math.pi * (1.0 - 2.0 / q)


# -- special polygons ------------------------------------------------------

EVEN, ODD, FREE = "even", "odd", "free"


@dataclass(frozen=True)
class Side:
    start: int
    end: int
    kind: str
    partner: int
    # the even point on an even/free side, the odd vertex on an odd side
    anchor: complex
    terminal: str


@dataclass(frozen=True)
class SpecialPolygon:
    q: int
    vertices: tuple
    sides: tuple[Side, ...]
    pairings: tuple[MoebiusMap, ...]
    # developed f-edges as (even point, odd point), for drawing
    tree_edges: tuple[tuple[complex, complex], ...] = ()

    def side_endpoints(self, k: int):
        s = self.sides[k]
        return self.vertices[s.start], self.vertices[s.end]

    def kind_counts(self) -> dict[str, int]:
        """Number of sides of each kind."""
        out = {EVEN: 0, ODD: 0, FREE: 0}
        for s in self.sides:
            out[s.kind] += 1
        return out


def _subdivide(tree: TreeDiagram):
    """f-edges of the subdivided tree as ``(even, odd)`` node pairs.

    Returns the f-edge list and, for each tree edge label and endpoint, the
    index of the f-edge adjacent to that endpoint.
    """
    odd = set(tree.rotations) | set(tree.blue)
    fedges = []
    at = {}
    for k, (u, v) in enumerate(tree.edges, start=1):
        if u in odd and v in odd:
            mid = f"mid{k}"
            at[(k, u)] = len(fedges)
            fedges.append((mid, u))
            at[(k, v)] = len(fedges)
            fedges.append((mid, v))
        else:
            even, o = (u, v) if v in odd else (v, u)
            at[(k, u)] = at[(k, v)] = len(fedges)
            fedges.append((even, o))
    return fedges, at


def default_start(tree: TreeDiagram) -> str:
    return min(tree.red) if tree.red else min(tree.blue)


def develop_tree(tree: TreeDiagram, start: str | None = None) -> SpecialPolygon:
    """Develop a tree diagram along the f-edges of the H_q tessellation.

    Each f-edge gets the element ``g`` of H_q carrying the base f-edge
    ``[i, rho]`` onto it (even end to ``g(i)``).  Around an internal vertex
    the next edge in counter-clockwise order gets ``g R``, with ``R`` the
    rotation by 2 pi/q about rho; across a subdivision point it gets ``g K``.
    """
    if not is_realizable(tree):
        raise NotRealizable("tree has an edge joining two red vertices")
    q = tree.q
    start = default_start(tree) if start is None else start
    if start not in tree.red and start not in tree.blue:
        raise ValueError(f"start {start!r} is not a terminal vertex")
    K = hecke_generators(q).K
    R = rotation_about(rho(q), 2.0 * math.pi / q)

    fedges, at = _subdivide(tree)
    by_node: dict[str, list[int]] = {}
    for idx, (e, o) in enumerate(fedges):
        by_node.setdefault(e, []).append(idx)
        by_node.setdefault(o, []).append(idx)
    # counter-clockwise f-edge order around each internal vertex
    ring = {v: [at[(k, v)] for k in rot] for v, rot in tree.rotations.items()}

    maps: dict[int, MoebiusMap] = {by_node[start][0]: IDENTITY}
    queue = deque(maps)
    while queue:
        idx = queue.popleft()
        g = maps[idx]
        even, odd = fedges[idx]
        if odd in ring:
            cyc = ring[odd]
            j = cyc.index(idx)
            for step in range(1, q):
                nxt = cyc[(j + step) % q]
                if nxt not in maps:
                    maps[nxt] = g @ R.power(step)
                    queue.append(nxt)
        for nxt in by_node[even]:
            if nxt not in maps:
                maps[nxt] = g @ K
                queue.append(nxt)
    if len(maps) != len(fedges):
        raise NumericalFailure("development did not reach every edge")

    # boundary sides, oriented so that the polygon lies to their left
    raw = []  # (p_start, p_end, kind, anchor, terminal, pairing-partner terminal)
    fedge_of = {v: by_node[v][0] for v in tree.red | tree.blue}
    for v in sorted(tree.red):
        g = maps[fedge_of[v]]
        w = tree.sigma[v]
        kind = EVEN if w == v else FREE
        raw.append((g(INF), g(0j), kind, g(1j), v, "line"))
    for v in sorted(tree.blue):
        g = maps[fedge_of[v]]
        p = g(rho(q))
        raw.append((g(0j), p, ODD, p, v, "in"))
        raw.append((p, g(INF), ODD, p, v, "out"))

    # chain sides end-to-start; the polygon boundary is a simple closed curve
    vertices: list = []

    def vindex(z):
        for i, w in enumerate(vertices):
            if chordal(z, w) < 1e-7:
                return i
        vertices.append(z)
        return len(vertices) - 1

    indexed = [(vindex(r[0]), vindex(r[1])) + r[2:] for r in raw]
    starts = {s[0]: i for i, s in enumerate(indexed)}
    if len(starts) != len(indexed):
        raise NumericalFailure("boundary sides do not form a simple cycle")
    order = [0]
    while len(order) < len(indexed):
        nxt = starts.get(indexed[order[-1]][1])
        if nxt is None or nxt in order:
            raise NumericalFailure("boundary sides do not close up")
        order.append(nxt)
    if indexed[order[-1]][1] != indexed[order[0]][0]:
        raise NumericalFailure("boundary does not close")

    # renumber vertices in boundary order
    vmap = {indexed[i][0]: j for j, i in enumerate(order)}
    vertices = tuple(vertices[indexed[i][0]] for i in order)
    pos = {(indexed[i][4], indexed[i][5]): j for j, i in enumerate(order)}

    sides = []
    pairings = []
    for i in order:
        s, e, kind, anchor, v, role = indexed[i]
        g = maps[fedge_of[v]]
        if kind == EVEN:
            partner = pos[(v, "line")]
            pairing = g @ K @ g.inverse()
        elif kind == FREE:
            w = tree.sigma[v]
            partner = pos[(w, "line")]
            pairing = maps[fedge_of[w]] @ K @ g.inverse()
        elif role == "in":
            partner = pos[(v, "out")]
            pairing = g @ R.power(-1) @ g.inverse()
        else:
            partner = pos[(v, "in")]
            pairing = g @ R @ g.inverse()
        sides.append(Side(vmap[s], vmap[e], kind, partner, anchor, v))
        pairings.append(pairing)

    tree_edges = tuple((maps[i](1j), maps[i](rho(q))) for i in range(len(fedges)))
    poly = SpecialPolygon(q, vertices, tuple(sides), tuple(pairings), tree_edges)
    residual = polygon_residual(poly)
    if residual > TOL:
        raise NumericalFailure(f"pairing residual {residual:.3g} exceeds {TOL}")
    return poly


def polygon_residual(poly: SpecialPolygon) -> float:
    """Worst violation of the side-pairing invariants (chordal / angle units)."""
    worst = 0.0
    for k, side in enumerate(poly.sides):
        j = side.partner
        if poly.sides[j].partner != k:
            return math.inf
        M = poly.pairings[k]
        s, e = poly.side_endpoints(k)
        ps, pe = poly.side_endpoints(j)
        worst = max(worst, chordal(M(s), pe), chordal(M(e), ps))
        if side.kind == EVEN:
            worst = max(worst, abs(M(side.anchor) - side.anchor))
        if side.kind == ODD and k < j:
            tip = side.end if _is_interior(poly.vertices[side.end]) else side.start
            a = interior_angle(poly, tip)
            worst = max(worst, abs(a - 2 * math.pi / poly.q))
    return worst


def _is_interior(z) -> bool:
    return z is not INF and z.imag > 1e-12


def tangent(z: complex, w) -> complex:
    """Unit tangent at finite ``z`` of the geodesic running toward ``w``."""
    if w is INF:
        return 1j
    if abs(w.real - z.real) < 1e-12 * (1 + abs(z)):
        return 1j if w.imag > z.imag else -1j
    c = (abs(z) ** 2 - abs(w) ** 2) / (2.0 * (z.real - w.real))
    d = 1j * (z - c)
    if (d.real > 0) != (w.real > z.real):
        d = -d
    return d / abs(d)


def interior_angle(poly: SpecialPolygon, vertex: int) -> float:
    """Interior angle at a polygon vertex; zero at ideal vertices."""
    z = poly.vertices[vertex]
    if z is INF or abs(z.imag) < 1e-12:
        return 0.0
    n = len(poly.vertices)
    prev_pt = poly.vertices[(vertex - 1) % n]
    next_pt = poly.vertices[(vertex + 1) % n]
    out_dir = tangent(z, next_pt)
    in_dir = tangent(z, prev_pt)
    # counter-clockwise boundary: interior sweeps from the outgoing to the incoming direction
    return (cmath.phase(in_dir / out_dir)) % (2 * math.pi)


def polygon_area(poly: SpecialPolygon) -> float:
    """Gauss-Bonnet: (k - 2) pi minus the sum of interior angles."""
    k = len(poly.vertices)
    return (k - 2) * math.pi - sum(interior_angle(poly, i) for i in range(k))


# -- congruence ------------------------------------------------------------

def _to_standard(z1, z2, z3):
    """Complex 2x2 matrix sending z1, z2, z3 to 0, 1, INF."""
    if z1 is INF:
        return ((0, z2 - z3), (1, -z3))
    if z2 is INF:
        return ((1, -z1), (1, -z3))
    if z3 is INF:
        return ((1, -z1), (0, z2 - z1))
    return ((z2 - z3, -z1 * (z2 - z3)), (z2 - z1, -z3 * (z2 - z1)))


def _apply_complex(m, z):
    (a, b), (c, d) = m
    if z is INF:
        return INF if abs(c) < 1e-14 else a / c
    den = c * z + d
    return INF if abs(den) < 1e-14 else (a * z + b) / den


def _mat_mul(m, n):
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _mat_inv(m):
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))


def find_congruence(p1: SpecialPolygon, p2: SpecialPolygon, tol: float = 1e-7):
    """A complex Moebius matrix carrying p1's vertex cycle onto p2's, or None.

    Tries every cyclic shift; the map is fixed by three consecutive vertices.
    """
    v1, v2 = p1.vertices, p2.vertices
    n = len(v1)
    if n != len(v2) or n < 3:
        return None
    src = _to_standard(v1[0], v1[1], v1[2])
    for shift in range(n):
        dst = _to_standard(v2[shift], v2[(shift + 1) % n], v2[(shift + 2) % n])
        m = _mat_mul(_mat_inv(dst), src)
        if all(chordal(_apply_complex(m, v1[i]), v2[(i + shift) % n]) < tol for i in range(n)):
            return m
    return None
