"""
Deterministic SVG drawings of maps and mobiles in the flat torus.

Vertices sit on a grid read off a breadth-first spanning tree: the row is
the tree depth and the column the rank inside that row.  An edge is drawn
as a segment from its tail to the copy of its head shifted by the edge's
homology label, together with the translate ending at the head, and
everything is clipped to the unit square.  Planar inputs have zero labels.
"""
from __future__ import annotations

import math
from collections import defaultdict
from typing import Sequence

from .maps import CombMap, MapError, homology_basis, spanning_tree
from .mobile import Mobile

MARGIN = 20


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def layout(m: CombMap) -> tuple[list[tuple[float, float]], list[tuple[int, int]]]:
    """Unit-square vertex positions and per-dart translation labels."""
    g = m.genus()
    if g > 1:
        raise MapError(f"cannot draw a map of genus {g}")
    parent = spanning_tree(m, 0, "bfs")
    depth = [0] * m.num_vertices()
    order = sorted(range(m.num_vertices()), key=lambda v: _depth(m, parent, v, depth))
    rows: dict[int, list[int]] = defaultdict(list)
    for v in order:
        rows[depth[v]].append(v)
    nrows = max(rows) + 1
    pos = [(0.0, 0.0)] * m.num_vertices()
    for r, vs in rows.items():
        for i, v in enumerate(vs):
            pos[v] = ((i + 0.5) / len(vs), (r + 0.5) / nrows)
    if g == 1:
        labels = list(homology_basis(m).labels)
    else:
        labels = [(0, 0)] * m.n
    return pos, labels


def _depth(m: CombMap, parent, v, depth) -> tuple[int, int]:
    k, u = 0, v
    while parent[u] >= 0:
        u = m.head(parent[u])
        k += 1
    depth[v] = k
    return k, v


class _Canvas:
    def __init__(self, size: int):
        self.size = size
        self.inner = size - 2 * MARGIN
        self.parts: list[str] = []

    def xy(self, p) -> tuple[str, str]:
        return _fmt(MARGIN + p[0] * self.inner), _fmt(MARGIN + p[1] * self.inner)

    def header(self, torus: bool) -> None:
        s = self.size
        self.parts += [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">',
            "<defs>",
            f'<clipPath id="domain"><rect x="{MARGIN}" y="{MARGIN}" width="{self.inner}" height="{self.inner}"/>'
            "</clipPath>",
            "</defs>",
            f'<rect x="0" y="0" width="{s}" height="{s}" fill="white"/>',
        ]
        if torus:
            self.parts.append(f'<rect x="{MARGIN}" y="{MARGIN}" width="{self.inner}" height="{self.inner}" '
                              'fill="none" stroke="#999" stroke-dasharray="6 4"/>')
        self.parts.append('<g clip-path="url(#domain)">')

    def segment(self, a, b, bend: float, color: str, start_arrow: bool, end_arrow: bool) -> None:
        mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
        dx, dy = b[0] - a[0], b[1] - a[1]
        ln = math.hypot(dx, dy) or 1.0
        c = (mx - dy / ln * bend, my + dx / ln * bend)
        (x1, y1), (cx, cy), (x2, y2) = self.xy(a), self.xy(c), self.xy(b)
        self.parts.append(f'<path d="M{x1},{y1} Q{cx},{cy} {x2},{y2}" fill="none" '
                          f'stroke="{color}" stroke-width="1.5"/>')
        if end_arrow:
            self.arrowhead(a, c, b, 0.6, 1)
        if start_arrow:
            self.arrowhead(a, c, b, 0.4, -1)

    def arrowhead(self, a, c, b, t: float, sign: int) -> None:
        """Triangle on the quadratic curve a-c-b at parameter t, pointing forward (1) or back (-1)."""
        u = 1 - t
        px = u * u * a[0] + 2 * u * t * c[0] + t * t * b[0]
        py = u * u * a[1] + 2 * u * t * c[1] + t * t * b[1]
        tx = 2 * u * (c[0] - a[0]) + 2 * t * (b[0] - c[0])
        ty = 2 * u * (c[1] - a[1]) + 2 * t * (b[1] - c[1])
        ln = math.hypot(tx, ty) or 1.0
        tx, ty = sign * tx / ln, sign * ty / ln
        x, y = MARGIN + px * self.inner, MARGIN + py * self.inner
        pts = [(x + 6 * tx, y + 6 * ty), (x - 4 * tx - 4 * ty, y - 4 * ty + 4 * tx),
               (x - 4 * tx + 4 * ty, y - 4 * ty - 4 * tx)]
        self.parts.append('<polygon class="arrow" points="' + " ".join(f"{_fmt(p)},{_fmt(q)}" for p, q in pts)
                          + '" fill="#333"/>')

    def text(self, p, s: str, size: int = 10, color: str = "#06c") -> None:
        x, y = self.xy(p)
        self.parts.append(f'<text x="{x}" y="{y}" font-size="{size}" fill="{color}" '
                          f'text-anchor="middle" dominant-baseline="middle">{s}</text>')

    def vertex(self, p, fill: str, square: bool, label: str) -> None:
        x, y = (float(t) for t in self.xy(p))
        if square:
            self.parts.append(f'<rect x="{_fmt(x - 5)}" y="{_fmt(y - 5)}" width="10" height="10" '
                              f'fill="{fill}" stroke="black"/>')
        else:
            self.parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" fill="{fill}" stroke="black"/>')
        if label:
            self.parts.append(f'<text x="{_fmt(x + 7)}" y="{_fmt(y - 7)}" font-size="9">{label}</text>')

    def finish(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _draw_edges(cv: _Canvas, m: CombMap, pos, labels, weights, root_dart, dart_weight_text=True):
    groups: dict[tuple, int] = defaultdict(int)
    for x, y in m.edges():
        u, v = m.tail(x), m.head(x)
        lab = labels[x]
        key = (u, v, lab) if (u, v) <= (v, u) else (v, u, (-lab[0], -lab[1]))
        k = groups[key]
        groups[key] += 1
        bend = 0.0 if k == 0 else (0.06 * ((k + 1) // 2)) * (1 if k % 2 else -1)
        color = "#c00" if root_dart in (x, y) else "#333"
        fwd = weights is not None and weights[x] > 0
        bwd = weights is not None and weights[y] > 0
        a = pos[u]
        b = (pos[v][0] + lab[0], pos[v][1] + lab[1])
        copies = [(0.0, 0.0)] if lab == (0, 0) else [(0.0, 0.0), (-lab[0], -lab[1])]
        for sx, sy in copies:
            pa, pb = (a[0] + sx, a[1] + sy), (b[0] + sx, b[1] + sy)
            cv.segment(pa, pb, bend, color, bwd, fwd)
            if weights is not None and dart_weight_text:
                for t, d in ((0.25, x), (0.75, y)):
                    cv.text((pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])), str(weights[d]))


def render_map(m: CombMap, weights: Sequence[int] | None = None, size: int = 400) -> str:
    """SVG of a map of genus at most 1, with optional dart weights as arrows and labels."""
    if weights is not None and len(weights) != m.n:
        raise MapError("one weight per dart is required")
    pos, labels = layout(m)
    cv = _Canvas(size)
    cv.header(m.genus() == 1)
    _draw_edges(cv, m, pos, labels, weights, m.root)
    cv.parts.append("</g>")
    for v, p in enumerate(pos):
        cv.vertex(p, "white", False, str(v))
    return cv.finish()


def render_mobile(mob: Mobile, size: int = 400) -> str:
    """SVG of a mobile: white and black vertices, weighted edges and buds drawn as arrows."""
    nv = len(mob.vertices)
    if not mob.edges():
        pos = [(0.5, 0.5)] * nv
        labels: list = []
        skel, keep = None, []
    else:
        skel, keep = mob.skeleton()
        spos, slab = layout(skel)
        pos = [(0.5, 0.5)] * nv
        for i, d in enumerate(keep):
            pos[mob.vertex_of[d]] = spos[skel.vertex_of[i]]
        labels = slab
    cv = _Canvas(size)
    cv.header(skel is not None and skel.genus() == 1)
    if skel is not None:
        w = [mob.weight[d] for d in keep]
        _draw_edges(cv, skel, _vertex_positions(skel, keep, mob, pos), labels, w, None)
    for v, cyc in enumerate(mob.vertices):
        for j, d in enumerate(cyc):
            if mob.is_bud(d):
                ang = -2 * math.pi * j / len(cyc)
                p = pos[v]
                q = (p[0] + 0.06 * math.cos(ang), p[1] + 0.06 * math.sin(ang))
                cv.segment(p, q, 0.0, "#080", False, True)
    cv.parts.append("</g>")
    for v, cyc in enumerate(mob.vertices):
        fill = "white" if mob.vertex_color(v) == "w" else "black"
        cv.vertex(pos[v], fill, mob.square[cyc[0]], "")
    return cv.finish()


def _vertex_positions(skel: CombMap, keep, mob: Mobile, pos) -> list:
    out = [(0.5, 0.5)] * skel.num_vertices()
    for i, d in enumerate(keep):
        out[skel.vertex_of[i]] = pos[mob.vertex_of[d]]
    return out
