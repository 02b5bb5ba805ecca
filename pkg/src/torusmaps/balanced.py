"""
Canonical balanced orientations of toroidal maps.

For a toroidal d-angulation of essential girth d, the minimal balanced
d/(d-2)-orientation is built constructively: orientations biased towards
each direction of two shortest basis cycles are computed by max-flow on the
annulus obtained by cutting along the cycle, combined with non-negative
integer coefficients so that both basis scores vanish, minimised, and
divided back.

For maps with larger faces the canonical Z-orientation is found by
exhaustive search, keeping the orientations that are right biorientations
whose mobile is balanced.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bijection import phi_plus
from .maps import (CombMap, HomotopyBasis, MapError, cut_along_cycle, essential_girth,
                   homology_basis, is_cycle, shortest_cycle_in_class)
from .mobile import check_family
from .orientation import (OrientationSpec, WeightedBiorientation, edge_weight, enumerate_orientations,
                          find_alpha_beta, gamma_score, is_minimal, is_right_biorientation,
                          minimize, vertex_weight, z_half_spec, z_spec)


def reverse_walk(m: CombMap, walk) -> tuple[int, ...]:
    return tuple(m.alpha[x] for x in reversed(walk))


def _check_dd2(m: CombMap, w: WeightedBiorientation, d: int, scale: int = 1):
    for v in range(m.num_vertices()):
        if vertex_weight(m, w, v) != scale * d:
            raise MapError("vertex weight check failed")
    for x, _ in m.edges():
        if edge_weight(m, w, x) != scale * (d - 2):
            raise MapError("edge weight check failed")


def biased_orientation(m: CombMap, cycle, d: int, basis: HomotopyBasis | None = None) -> WeightedBiorientation:
    """d/(d-2)-orientation with score ``2*len(cycle)`` on a shortest non-contractible cycle.

    Every half-edge hanging off the left side of the cycle gets weight 0.
    """
    b = basis or homology_basis(m)
    if len(shortest_cycle_in_class(m, cycle, b)) != len(cycle):
        raise MapError("cycle is not shortest in its class")
    ann = cut_along_cycle(m, cycle, b)
    a = ann.map
    vt = [0 if ann.outer_vertex[v] else d for v in range(a.num_vertices())]
    et = [0 if x >= m.n else d - 2 for x in range(a.n)]
    spec = OrientationSpec(vertex=vt, edge=[et[min(x, a.alpha[x])] for x in range(a.n)])
    flow = find_alpha_beta(a, spec)
    w = WeightedBiorientation(tuple(flow[x] for x in range(m.n)))
    _check_dd2(m, w, d)
    return w


@dataclass(frozen=True)
class BiasedQuadruple:
    b1: tuple[int, ...]
    b2: tuple[int, ...]
    d1: WeightedBiorientation
    d2: WeightedBiorientation
    d3: WeightedBiorientation
    d4: WeightedBiorientation
    a: int
    b: int
    c: int
    dd: int

    @property
    def k1(self) -> int:
        return len(self.b1)

    @property
    def k2(self) -> int:
        return len(self.b2)


def biased_quadruple(m: CombMap, b1, b2, d: int, basis: HomotopyBasis | None = None) -> BiasedQuadruple:
    bs = basis or homology_basis(m)
    r1, r2 = reverse_walk(m, b1), reverse_walk(m, b2)
    d1 = biased_orientation(m, b1, d, bs)
    d2 = biased_orientation(m, r1, d, bs)
    d3 = biased_orientation(m, b2, d, bs)
    d4 = biased_orientation(m, r2, d, bs)
    k1, k2 = len(b1), len(b2)
    g = lambda w, c: gamma_score(m, w, c, bs)
    if (g(d1, b1), g(d2, b1), g(d3, b2), g(d4, b2)) != (2 * k1, -2 * k1, 2 * k2, -2 * k2):
        raise MapError("biased orientations have unexpected scores")
    q = BiasedQuadruple(tuple(b1), tuple(b2), d1, d2, d3, d4,
                        g(d1, b2), g(d2, b2), g(d3, b1), g(d4, b1))
    for s in (q.a, q.b):
        if abs(s) > 2 * k2:
            raise MapError("score out of range")
    for s in (q.c, q.dd):
        if abs(s) > 2 * k1:
            raise MapError("score out of range")
    return q


def combination_coefficients(q: BiasedQuadruple) -> tuple[int, int, int, int]:
    """Non-negative coefficients of (w1, w2, w3, w4) cancelling both basis scores."""
    k1, k2 = q.k1, q.k2
    k = 2 * k1 * k2
    a, b, c, dd = q.a, q.b, q.c, q.dd
    if a + b < 0:
        return ((2 * k + b * c) * k2, (2 * k - a * c) * k2, -(a + b) * k, 0)
    if a + b == 0:
        return (1, 1, 0, 0)
    return ((2 * k - b * dd) * k2, (2 * k + a * dd) * k2, 0, (a + b) * k)


def combine_biased(m: CombMap, q: BiasedQuadruple, d: int,
                   basis: HomotopyBasis | None = None) -> tuple[WeightedBiorientation, int]:
    """The combined orientation and its multiplier ``s`` (vertex weight s*d, edge weight s*(d-2))."""
    coef = combination_coefficients(q)
    if any(c < 0 for c in coef):
        raise MapError("negative combination coefficient")
    s = sum(coef)
    ws = (q.d1, q.d2, q.d3, q.d4)
    w = WeightedBiorientation(tuple(sum(c * x[i] for c, x in zip(coef, ws)) for i in range(m.n)))
    _check_dd2(m, w, d, s)
    bs = basis or homology_basis(m)
    if gamma_score(m, w, q.b1, bs) != 0 or gamma_score(m, w, q.b2, bs) != 0:
        raise MapError("combination does not cancel the basis scores")
    return w, s


def balanced_dd2(m: CombMap, d: int, order: str = "bfs", root_vertex: int = 0) -> WeightedBiorientation:
    """The minimal balanced d/(d-2)-orientation of a face-rooted d-toroidal map."""
    if m.root is None:
        raise MapError("map must be face-rooted")
    if any(len(f) != d for f in m.faces):
        raise MapError("map is not a d-angulation")
    if essential_girth(m) != d:
        raise MapError("essential girth differs from d")
    bs = homology_basis(m, root_vertex, order)
    b1 = shortest_cycle_in_class(m, bs.b1, bs)
    b2 = shortest_cycle_in_class(m, bs.b2, bs)
    if not (is_cycle(m, b1) and is_cycle(m, b2)):
        raise MapError("shortest basis walks are not simple cycles")
    q = biased_quadruple(m, b1, b2, d, bs)
    w, s = combine_biased(m, q, d, bs)
    w0 = minimize(m, w)
    if gamma_score(m, w0, b1, bs) != 0 or gamma_score(m, w0, b2, bs) != 0:
        raise MapError("minimisation changed a basis score")
    out = w0.scaled(1, s)
    _check_dd2(m, out, d)
    if not is_minimal(m, out):
        raise MapError("divided orientation is not minimal")
    return out


def combined_minimal(m: CombMap, d: int) -> tuple[WeightedBiorientation, int]:
    """Minimised combination before division, with its multiplier."""
    bs = homology_basis(m)
    b1 = shortest_cycle_in_class(m, bs.b1, bs)
    b2 = shortest_cycle_in_class(m, bs.b2, bs)
    q = biased_quadruple(m, b1, b2, d, bs)
    w, s = combine_biased(m, q, d, bs)
    return minimize(m, w), s


def halve_bipartite(m: CombMap, w: WeightedBiorientation) -> WeightedBiorientation:
    """Halve an all-even orientation; odd weights certify a non-bipartite map."""
    if any(x % 2 for x in w.weights):
        raise MapError("orientation has odd weights, the map is not bipartite")
    return w.scaled(1, 2)


def canonical_Z_orientation(m: CombMap, d: int) -> WeightedBiorientation | None:
    """The unique Z-orientation in the right-biorientation class with balanced mobile, if any."""
    if m.root is None:
        raise MapError("map must be face-rooted")
    if m.face_degree(m.root_face) != d or any(len(f) < d for f in m.faces):
        raise MapError("root face must have degree d and other faces at least d")
    return _unique_hit(m, z_spec(d), lambda mob: check_family(mob, "V_bal", d))


def canonical_Z_half_orientation(m: CombMap, b: int) -> WeightedBiorientation | None:
    """Bipartite variant with weights in [-1, b] and halved targets."""
    if m.root is None:
        raise MapError("map must be face-rooted")
    d = 2 * b
    if m.face_degree(m.root_face) != d or any(len(f) < d or len(f) % 2 for f in m.faces):
        raise MapError("faces must be even of degree at least 2b")
    return _unique_hit(m, z_half_spec(b), lambda mob: check_family(mob, "hatV_bal", b))


def _unique_hit(m: CombMap, spec: OrientationSpec, accept) -> WeightedBiorientation | None:
    hits = []
    for w in enumerate_orientations(m, spec):
        if not is_right_biorientation(m, w):
            continue
        if accept(phi_plus(m, w, check=False)):
            hits.append(w)
            if len(hits) > 1:
                raise MapError("two canonical orientations found")
    return hits[0] if hits else None


def balanced_candidates(m: CombMap, d: int, mode: str = "exhaustive"):
    """All d/(d-2)-orientations that are balanced, with their minimality and membership flags."""
    from .orientation import dd2_spec, is_balanced
    bs = homology_basis(m)
    out = []
    for w in enumerate_orientations(m, dd2_spec(d)):
        if is_balanced(m, w, mode, bs):
            out.append((w, is_minimal(m, w), is_right_biorientation(m, w)))
    return out
