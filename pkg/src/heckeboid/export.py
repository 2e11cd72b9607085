"""Graphviz DOT and SVG renderings."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .geometry import EVEN, FREE, INF, ODD, SpecialPolygon
from .model import QBoidGraph, TreeDiagram


def graph_to_dot(graph: QBoidGraph) -> str:
    """Black (V0) vertices filled, white (V1) hollow.

    Edges are listed per white vertex in counter-clockwise order and carry
    their position in that rotation as the ``rot`` attribute.
    """
    black_of = graph.black_of()
    lines = [
        "graph qboid {",
        f'  label="q={graph.q}, n={graph.n}";',
        '  node [shape=circle, width=0.2, fixedsize=true, label=""];',
    ]
    for i in range(len(graph.black)):
        lines.append(f"  b{i} [style=filled, fillcolor=black];")
    for i in range(len(graph.white)):
        lines.append(f"  w{i} [style=solid, fillcolor=white];")
    for i, w in enumerate(graph.white):
        for pos, e in enumerate(w):
            lines.append(f'  b{black_of[e]} -- w{i} [label="{e}", rot={pos}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_dot(tree: TreeDiagram) -> str:
    """Red terminals hollow, blue terminals shaded; sigma-paired reds share a numeric label."""
    pair_label = {}
    for k, orbit in enumerate((o for o in tree.sigma_orbits() if len(o) == 2), start=1):
        for r in orbit:
            pair_label[r] = str(k)
    lines = [
        "graph tree_diagram {",
        f'  label="q={tree.q}";',
        '  node [shape=circle, width=0.25, fixedsize=true, label=""];',
    ]
    for v in tree.vertices:
        name = escape(v)
        if v in tree.rotations:
            lines.append(f'  "{name}" [shape=point, width=0.1];')
        elif v in tree.red:
            lines.append(f'  "{name}" [color=red, style=solid, label="{pair_label.get(v, "")}"];')
        else:
            lines.append(f'  "{name}" [color=blue, style=filled, fillcolor=blue];')
    for k, (u, v) in enumerate(tree.edges, start=1):
        rot = ",".join(
            f"{x}:{tree.rotations[x].index(k)}" for x in (u, v) if x in tree.rotations
        )
        extra = f', rot="{rot}"' if rot else ""
        lines.append(f'  "{escape(u)}" -- "{escape(v)}" [label="{k}"{extra}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- SVG -----------------------------------------------------------------------

_STYLE = {
    EVEN: 'stroke="black" stroke-width="2"',
    ODD: 'stroke="#1f5fbf" stroke-width="2" stroke-dasharray="6 3"',
    FREE: 'stroke="#c0392b" stroke-width="2"',
}


class _Frame:
    """Maps the upper half-plane box onto SVG pixel coordinates (y flipped)."""

    def __init__(self, xmin, xmax, ymax, width=600):
        self.xmin, self.xmax, self.ymax = xmin, xmax, ymax
        self.scale = width / (xmax - xmin)
        self.width = width
        self.height = ymax * self.scale

    def __call__(self, z):
        return (z.real - self.xmin) * self.scale, (self.ymax - z.imag) * self.scale


def _finite(z):
    return z is not INF


def _arc_top(a, b):
    """Highest point reached by the geodesic between finite a and b."""
    if abs(a.real - b.real) < 1e-12:
        return max(a.imag, b.imag)
    c = (abs(a) ** 2 - abs(b) ** 2) / (2 * (a.real - b.real))
    r = abs(a - c)
    if min(a.real, b.real) <= c <= max(a.real, b.real):
        return r
    return max(a.imag, b.imag)


def _geodesic_path(frame, a, b, top):
    """SVG path data for the geodesic from a to b; INF is clipped at ``top``."""
    if a is INF:
        x, y = frame(b)
        _, ytop = frame(complex(b.real, top))
        return f"M {x:.3f} {ytop:.3f} L {x:.3f} {y:.3f}"
    x0, y0 = frame(a)
    if b is INF:
        _, ytop = frame(complex(a.real, top))
        return f"M {x0:.3f} {y0:.3f} L {x0:.3f} {ytop:.3f}"
    x1, y1 = frame(b)
    if abs(a.real - b.real) < 1e-12:
        return f"M {x0:.3f} {y0:.3f} L {x1:.3f} {y1:.3f}"
    c = (abs(a) ** 2 - abs(b) ** 2) / (2 * (a.real - b.real))
    r = abs(a - c) * frame.scale
    sweep = 1 if b.real > a.real else 0
    return f"M {x0:.3f} {y0:.3f} A {r:.3f} {r:.3f} 0 0 {sweep} {x1:.3f} {y1:.3f}"


def polygon_to_svg(poly: SpecialPolygon, width: int = 600) -> str:
    """Sides as circular arcs or vertical segments, styled by kind and labelled by pairing."""
    pts = [z for z in poly.vertices if _finite(z)]
    pts += [p for e in poly.tree_edges for p in e]
    pts += [s.anchor for s in poly.sides]
    xs = [z.real for z in pts]
    xmid, half = (max(xs) + min(xs)) / 2, max((max(xs) - min(xs)) / 2, 0.5)
    top = max([z.imag for z in pts] + [
        _arc_top(*poly.side_endpoints(k)) for k in range(len(poly.sides))
        if all(_finite(z) for z in poly.side_endpoints(k))
    ])
    xmin, xmax, ymax = xmid - 1.2 * half, xmid + 1.2 * half, 1.2 * top
    frame = _Frame(xmin, xmax, ymax, width)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{frame.width:.0f}" height="{frame.height:.0f}" '
        f'viewBox="0 0 {frame.width:.3f} {frame.height:.3f}">',
        '  <defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="6" markerHeight="6" '
        'orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>',
        f'  <line x1="0" y1="{frame.height:.3f}" x2="{frame.width:.3f}" y2="{frame.height:.3f}" stroke="#888"/>',
    ]
    for a, b in poly.tree_edges:
        out.append(f'  <path d="{_geodesic_path(frame, a, b, top)}" fill="none" stroke="#999" stroke-width="1"/>')

    names = {}
    count = 0
    for k, s in enumerate(poly.sides):
        if k not in names:
            tag = chr(ord("a") + count % 26) + (str(count // 26) if count >= 26 else "")
            count += 1
            names[k] = tag
            if s.partner != k:
                names[s.partner] = tag + "'"
    for k, s in enumerate(poly.sides):
        a, b = poly.side_endpoints(k)
        marker = ' marker-end="url(#arrow)"' if b is INF else (' marker-start="url(#arrow)"' if a is INF else "")
        out.append(
            f'  <path d="{_geodesic_path(frame, a, b, ymax * 0.98)}" fill="none" {_STYLE[s.kind]}{marker}>'
            f"<title>side {k} ({s.kind}) paired with {s.partner}</title></path>"
        )
        lx, ly = frame(s.anchor) if s.kind != ODD else _odd_label_point(frame, a, b, ymax)
        out.append(f'  <text x="{lx + 4:.3f}" y="{ly - 4:.3f}" font-size="12">{escape(names[k])}</text>')
    for z in poly.vertices:
        if _finite(z) and z.imag > 0:
            x, y = frame(z)
            out.append(f'  <circle cx="{x:.3f}" cy="{y:.3f}" r="3" fill="white" stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _odd_label_point(frame, a, b, ymax):
    tip = a if _finite(a) and a.imag > 0 else b
    other = b if tip is a else a
    if other is INF:
        return frame(complex(tip.real, min(tip.imag * 1.5, ymax * 0.9)))
    return frame((tip + other) / 2 + 0.05j * math.fabs(tip.imag))
