"""
Exhaustive generation of small rooted maps and mobiles.

Rooted maps are produced by gluing polygons in a canonical root-first
order: the root face receives labels ``0..k-1``; then darts are visited in
label order and each unpaired dart is either paired with a later labelled
dart or with the first dart of a freshly opened face.  Every rooted map
(root dart ``0``) arises exactly once.

Mobiles are produced by the same procedure on vertex stars, then decorated
with weights and buds and deduplicated by canonical code.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .maps import (CombMap, MapError, d_angles, essential_girth, root_contour_is_maximal)
from .mobile import BUD, Mobile, check_family


DART_CAP = 40
DART_CAP_ENV = "TORUSMAPS_DART_CAP"


def dart_cap() -> int:
    """The configured dart cap; the environment variable overrides the default."""
    raw = os.environ.get(DART_CAP_ENV)
    if raw is None:
        return DART_CAP
    try:
        return int(raw)
    except ValueError:
        raise MapError(f"{DART_CAP_ENV} must be an integer, got {raw!r}") from None


def _check_cap(darts: int):
    cap = dart_cap()
    if darts > cap:
        raise MapError(f"dart count {darts} exceeds the cap {cap}")


def _glue(total: int, degrees: Sequence[int], root_degrees: Sequence[int],
          max_vertices: int | None = None, genus: int | None = None) -> Iterator[tuple[list[int], list[int]]]:
    """Yield (alpha, cycle_next) for every rooted polygon gluing on ``total`` darts.

    ``cycle_next`` is the polygon successor.  Optional pruning keeps only
    gluings whose closed cycles of ``alpha∘next`` can still fit the vertex
    budget implied by ``genus``.
    """
    alpha = [-1] * total
    nxt = [-1] * total
    # chains of the induced permutation p(y) = next(alpha(y)), tracked for pruning
    succ = [-1] * total
    chain_start = list(range(total))  # valid for chain ends
    chain_end = list(range(total))    # valid for chain starts
    state = {"closed": 0, "faces": 0}
    edges = total // 2

    def vertex_budget():
        if genus is None:
            return None
        # faces only grow, so vertices = E - F + 2 - 2g is bounded above
        bound = edges - state["faces"] + 2 - 2 * genus
        if max_vertices is not None:
            bound = min(bound, max_vertices)
        return bound

    def link(y):
        # adds y -> next(alpha(y)); returns undo record
        s = nxt[alpha[y]]
        succ[y] = s
        st = chain_start[y]
        en = chain_end[s]
        if st == s:
            state["closed"] += 1
            return (y, None)
        old = (chain_end[st], chain_start[en])
        chain_end[st] = en
        chain_start[en] = st
        return (y, (st, en, old))

    def unlink(rec):
        y, info = rec
        succ[y] = -1
        if info is None:
            state["closed"] -= 1
            return
        st, en, (oe, os) = info
        chain_end[st] = oe
        chain_start[en] = os

    def open_face(start, k):
        for i in range(k):
            nxt[start + i] = start + (i + 1) % k
        state["faces"] += 1

    def close_face(start, k):
        for i in range(k):
            nxt[start + i] = -1
        state["faces"] -= 1

    def pair(a, b):
        alpha[a], alpha[b] = b, a
        recs = [link(a)]
        if b != a:
            recs.append(link(b))
        return recs

    def unpair(a, b, recs):
        for r in reversed(recs):
            unlink(r)
        alpha[a] = alpha[b] = -1

    def ok():
        b = vertex_budget()
        return b is None or state["closed"] <= b

    def rec(i, labelled):
        while i < labelled and alpha[i] >= 0:
            i += 1
        if i == labelled:
            if labelled == total:
                yield alpha, nxt
            return
        # pair with a later labelled dart
        for j in range(i + 1, labelled):
            if alpha[j] < 0:
                recs = pair(i, j)
                if ok():
                    yield from rec(i + 1, labelled)
                unpair(i, j, recs)
        # or open a new face
        for k in degrees:
            if labelled + k > total:
                continue
            open_face(labelled, k)
            recs = pair(i, labelled)
            if ok():
                yield from rec(i + 1, labelled + k)
            unpair(i, labelled, recs)
            close_face(labelled, k)

    for k in root_degrees:
        if k > total:
            continue
        open_face(0, k)
        yield from rec(0, k)
        close_face(0, k)


@dataclass(frozen=True)
class GenSpec:
    """What to generate.

    ``face_degrees`` lists allowed non-root face degrees; ``root_degrees``
    defaults to the same.  ``edges`` is an exact edge count or a range.
    """

    edges: int | tuple[int, int]
    face_degrees: Sequence[int]
    root_degrees: Sequence[int] | None = None
    genus: int = 1
    vertices: int | None = None
    max_vertices: int | None = None
    rooting: str = "corner"
    filter: Callable[[CombMap], bool] | None = None


def generate_maps(spec: GenSpec) -> Iterator[CombMap]:
    """Every rooted (or face-rooted) map matching ``spec`` exactly once."""
    lo, hi = (spec.edges, spec.edges) if isinstance(spec.edges, int) else spec.edges
    seen = set()
    for e in range(lo, hi + 1):
        _check_cap(2 * e)
        degs = sorted(set(k for k in spec.face_degrees if 1 <= k <= 2 * e))
        rdegs = sorted(set(k for k in (spec.root_degrees or spec.face_degrees) if 1 <= k <= 2 * e))
        vmax = spec.vertices if spec.vertices is not None else spec.max_vertices
        for alpha, nxt in _glue(2 * e, degs, rdegs, vmax, spec.genus):
            try:
                m = CombMap.from_faces(tuple(alpha), tuple(nxt), root=0, rooting="corner")
            except MapError:
                continue
            if m.genus() != spec.genus:
                continue
            nv = m.num_vertices()
            if spec.vertices is not None and nv != spec.vertices:
                continue
            if spec.max_vertices is not None and nv > spec.max_vertices:
                continue
            if spec.filter is not None and not spec.filter(m):
                continue
            if spec.rooting == "face":
                code = m.with_root(0, "face").canonical_code()
                if code in seen:
                    continue
                seen.add(code)
                yield m.with_root(0, "face")
            else:
                yield m


def count_maps(spec: GenSpec) -> int:
    return sum(1 for _ in generate_maps(spec))


# family predicates -------------------------------------------------------------


def is_d_toroidal(m: CombMap, d: int) -> bool:
    return m.genus() == 1 and all(len(f) == d for f in m.faces) and essential_girth(m) == d


def in_M(m: CombMap, d: int) -> bool:
    return (m.genus() == 1 and m.face_degree(m.root_face) == d
            and essential_girth(m) == d)


def in_L(m: CombMap, d: int) -> bool:
    return in_M(m, d) and root_contour_is_maximal(m, d)


def in_F(m: CombMap, d: int) -> bool:
    return all(len(f) == d for f in m.faces) and in_L(m, d)


def triangulation_spec(n: int, rooting: str = "corner", filter=None) -> GenSpec:
    return GenSpec(edges=3 * n, face_degrees=[3], vertices=n, rooting=rooting, filter=filter)


def quadrangulation_spec(n: int, rooting: str = "corner", filter=None) -> GenSpec:
    return GenSpec(edges=2 * n, face_degrees=[4], vertices=n, rooting=rooting, filter=filter)


def d_angulation_spec(d: int, n: int, rooting: str = "face", filter=None) -> GenSpec:
    if (d * n) % (d - 2):
        raise MapError("no toroidal d-angulation with this vertex count")
    e = d * n // (d - 2)
    return GenSpec(edges=e, face_degrees=[d], vertices=n, rooting=rooting, filter=filter)


def large_face_spec(d: int, max_vertices: int, max_edges: int | None = None,
                    rooting: str = "face", filter=None) -> GenSpec:
    """Root face of degree d and other faces of degree at least d."""
    if max_edges is None:
        if d < 3:
            raise MapError("an edge bound is needed for d < 3")
        max_edges = d * max_vertices // (d - 2)
    degs = list(range(d, 2 * max_edges + 1))
    return GenSpec(edges=(1, max_edges), face_degrees=degs, root_degrees=[d],
                   max_vertices=max_vertices, rooting=rooting, filter=filter)


# mobiles ----------------------------------------------------------------------


def _glue_stars(total: int, n_white: int, white_degrees, black_degrees,
                allowed: set[str], max_black: int) -> Iterator[tuple[list[int], list[int], list[str]]]:
    """Rooted gluings of coloured vertex stars (root at a white star)."""
    alpha = [-1] * total
    nxt = [-1] * total
    color = [""] * total
    count = {"w": 0, "b": 0}

    def open_star(start, k, c):
        for i in range(k):
            nxt[start + i] = start + (i + 1) % k
            color[start + i] = c
        count[c] += 1

    def close_star(start, k):
        c = color[start]
        for i in range(k):
            nxt[start + i] = -1
            color[start + i] = ""
        count[c] -= 1

    def can_pair(a, b):
        return "".join(sorted(color[a] + color[b])) in allowed

    def rec(i, labelled):
        while i < labelled and alpha[i] >= 0:
            i += 1
        if i == labelled:
            if labelled == total and count["w"] == n_white:
                yield alpha, nxt, color
            return
        for j in range(i + 1, labelled):
            if alpha[j] < 0 and can_pair(i, j):
                alpha[i], alpha[j] = j, i
                yield from rec(i + 1, labelled)
                alpha[i] = alpha[j] = -1
        for c, degs, cap in (("w", white_degrees, n_white), ("b", black_degrees, max_black)):
            if count[c] >= cap:
                continue
            for k in degs:
                if labelled + k > total:
                    continue
                open_star(labelled, k, c)
                if can_pair(i, labelled):
                    alpha[i], alpha[labelled] = labelled, i
                    yield from rec(i + 1, labelled + k)
                    alpha[i] = alpha[labelled] = -1
                close_star(labelled, k)

    for k in white_degrees:
        if k <= total:
            open_star(0, k, "w")
            yield from rec(0, k)
            close_star(0, k)


@dataclass(frozen=True)
class MobileFamily:
    """Weight rules of a mobile family, parameterised by d (U, V) or b (hat)."""

    tag: str
    param: int

    @property
    def base(self) -> str:
        return self.tag.removesuffix("_bal")

    @property
    def vertex_weight(self) -> int:
        return self.param

    @property
    def edge_weight(self) -> int:
        return self.param - 2 if self.base in ("U", "V") else self.param - 1

    def end_weights(self, colors: str) -> list[tuple[int, int]]:
        """Admissible (first, second) end weights for an edge with these end colours."""
        ew = self.edge_weight
        if colors == "bw":
            return [(y, x) for x, y in self.end_weights("wb")]
        if self.base in ("U", "hatU"):
            lo_w, lo_b, hi = 1, 0, self.param
            black_range = [0]
        else:
            lo_b = -2 if self.base == "V" else -1
            hi = self.param
            black_range = list(range(lo_b, 1))
            lo_w = 1
        out = []
        if colors == "ww":
            for a in range(lo_w, hi + 1):
                if lo_w <= ew - a <= hi:
                    out.append((a, ew - a))
        elif colors == "wb":
            for bb in black_range:
                if lo_w <= ew - bb <= hi:
                    out.append((ew - bb, bb))
        elif colors == "bb":
            for a in black_range:
                if (ew - a) in black_range:
                    out.append((a, ew - a))
        return out

    def bud_count(self, nonbud_degree: int, black_weight: int) -> int | None:
        if self.base == "U":
            return self.param - nonbud_degree
        if self.base == "hatU":
            return 2 * self.param - nonbud_degree
        if self.base == "V":
            # degree i carries weight d - i
            return self.param - black_weight - nonbud_degree
        # hat V: degree 2i carries weight b - i
        return 2 * (self.param - black_weight) - nonbud_degree


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cut + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def generate_mobiles(tag: str, param: int, n_white: int, max_edges: int | None = None) -> Iterator[Mobile]:
    """Every mobile of the family with ``n_white`` white vertices, once each.

    ``max_edges`` caps the edge count for families where it is not implied.
    """
    fam = MobileFamily(tag, param)
    base = fam.base
    ew = fam.edge_weight
    allowed = {c for c in ("bw", "ww", "bb") if fam.end_weights(c[::-1] if c == "bw" else c)}
    white_deg = list(range(1, fam.vertex_weight + 1))
    if base == "U":
        if (2 * n_white) % (param - 2):
            return
        nb = 2 * n_white // (param - 2) - 1
        black_deg = list(range(1, param + 1))
        edge_counts = [n_white + nb + 1]
        max_black = nb
    elif base == "hatU":
        if n_white % (param - 1):
            return
        nb = n_white // (param - 1) - 1
        black_deg = list(range(1, 2 * param + 1))
        edge_counts = [n_white + nb + 1]
        max_black = nb
    else:
        cap = max_edges if max_edges is not None else n_white * fam.vertex_weight
        edge_counts = list(range(1, cap + 1))
        max_black = cap
        black_deg = list(range(1, 2 * cap + 1))
    seen = set()
    for e in edge_counts:
        _check_cap(2 * e)
        nb_target = e - 1 - n_white
        if nb_target < 0:
            continue
        if base in ("U", "hatU") and nb_target != max_black:
            continue
        for alpha, nxt, color in _glue_stars(2 * e, n_white, white_deg, black_deg, allowed,
                                             nb_target):
            sigma = tuple(nxt)
            try:
                skel = CombMap(tuple(alpha), sigma)
            except MapError:
                continue
            if skel.num_faces() != 1 or skel.genus() != 1:
                continue
            if sum(1 for v in skel.vertices if color[v[0]] == "b") != nb_target:
                continue
            for mob in _decorate(skel, list(color), fam):
                code = mob.canonical_code()
                if code in seen:
                    continue
                seen.add(code)
                if check_family(mob, tag, param):
                    yield mob.relabel_canonical()


def _decorate(skel: CombMap, color: list[str], fam: MobileFamily) -> Iterator[Mobile]:
    edges = skel.edges()
    choices = []
    for d, a in edges:
        cols = color[d] + color[a]
        choices.append(fam.end_weights(cols))
    verts = skel.vertices
    for combo in itertools.product(*choices):
        wt = [0] * skel.n
        for (d, a), (x, y) in zip(edges, combo):
            wt[d], wt[a] = x, y
        good = True
        bud_counts = []
        for v in verts:
            s = sum(wt[x] for x in v)
            if color[v[0]] == "w":
                if s != fam.vertex_weight:
                    good = False
                    break
            else:
                nb = fam.bud_count(len(v), s)
                if nb is None or nb < 0:
                    good = False
                    break
                bud_counts.append((v, nb))
        if not good:
            continue
        per_vertex = [list(_compositions(nb, len(v))) for v, nb in bud_counts]
        for dist in itertools.product(*per_vertex):
            yield _assemble(skel, color, wt, bud_counts, dist)


def _assemble(skel, color, wt, bud_counts, dist) -> Mobile:
    n = skel.n
    extra = sum(sum(c) for c in dist)
    total = n + extra
    sigma = list(skel.sigma) + [0] * extra
    alpha = list(skel.alpha) + [BUD] * extra
    col = list(color) + ["b"] * extra
    weight = list(wt) + [0] * extra
    nxt = n
    for (v, _), counts in zip(bud_counts, dist):
        for x, c in zip(v, counts):
            # c buds in the corner right after x
            after = skel.sigma[x]
            prev = x
            for _ in range(c):
                sigma[prev] = nxt
                prev = nxt
                nxt += 1
            sigma[prev] = after
    return Mobile(tuple(sigma[:total]), tuple(alpha), tuple(col), tuple(weight))
