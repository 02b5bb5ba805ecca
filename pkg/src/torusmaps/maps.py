r"""
Combinatorial maps on orientable surfaces.

A map is stored as a pair of permutations on the darts ``0..n-1``:

* ``alpha`` pairs each dart with the opposite half of its edge,
* ``sigma`` sends a dart to the next dart counterclockwise around its tail.

A dart is traversed from its tail to its head.  The face of a dart is the
face lying on its left; the boundary of that face is traced, counterclockwise,
by ``d -> sigma^{-1}(alpha(d))``.  The face on the right of ``d`` is the face
of ``alpha(d)``.  Every left/right notion in the package derives from this.

>>> m = CombMap.from_cycles(6, [(0, 1), (2, 3), (4, 5)], [(0, 2, 4, 1, 3, 5)])
>>> m.num_vertices(), m.num_edges(), m.num_faces(), m.genus()
(1, 3, 2, 1)
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class MapError(ValueError):
    """Raised on malformed map data or violated preconditions."""


def _orbits(perm: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    label = [-1] * len(perm)
    cycles: list[list[int]] = []
    for start in range(len(perm)):
        if label[start] >= 0:
            continue
        cyc = []
        x = start
        while label[x] < 0:
            label[x] = len(cycles)
            cyc.append(x)
            x = perm[x]
        cycles.append(cyc)
    return label, cycles


def _inverse(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


@dataclass(frozen=True, eq=False)
class CombMap:
    """Rotation system with an optional root dart.

    ``root`` marks a dart; its face is the root face.  ``rooting`` is
    ``"face"`` when only the face matters and ``"corner"`` when the dart
    itself (equivalently the corner of the root face at its tail) is marked.
    """

    alpha: tuple[int, ...]
    sigma: tuple[int, ...]
    root: int | None = None
    rooting: str = "face"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.alpha)
        if len(self.sigma) != n:
            raise MapError("alpha and sigma act on different dart sets")
        if n == 0 or n % 2:
            raise MapError("dart count must be positive and even")
        if sorted(self.sigma) != list(range(n)):
            raise MapError("sigma is not a permutation")
        for d, a in enumerate(self.alpha):
            if not 0 <= a < n or a == d or self.alpha[a] != d:
                raise MapError(f"alpha is not a fixed-point-free involution at dart {d}")
        if self.root is not None and not 0 <= self.root < n:
            raise MapError("root dart out of range")
        if self.rooting not in ("face", "corner"):
            raise MapError("rooting must be 'face' or 'corner'")
        seen = {0}
        todo = [0]
        while todo:
            x = todo.pop()
            for y in (self.alpha[x], self.sigma[x]):
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        if len(seen) != n:
            raise MapError("map is not connected")

    def _key(self) -> tuple:
        return (self.alpha, self.sigma, self.root, self.rooting)

    def __eq__(self, other) -> bool:
        return isinstance(other, CombMap) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    # construction -------------------------------------------------------

    @classmethod
    def from_cycles(cls, dart_count: int, alpha_pairs: Iterable[Sequence[int]],
                    sigma_cycles: Iterable[Sequence[int]], root: int | None = None,
                    rooting: str = "face") -> "CombMap":
        alpha = [-1] * dart_count
        for a, b in alpha_pairs:
            if alpha[a] >= 0 or alpha[b] >= 0:
                raise MapError("a dart appears in two alpha pairs")
            alpha[a], alpha[b] = b, a
        if -1 in alpha:
            raise MapError("alpha pairs do not cover every dart")
        sigma = [-1] * dart_count
        for cyc in sigma_cycles:
            for i, x in enumerate(cyc):
                if sigma[x] >= 0:
                    raise MapError("a dart appears in two sigma cycles")
                sigma[x] = cyc[(i + 1) % len(cyc)]
        if -1 in sigma:
            raise MapError("sigma cycles do not cover every dart")
        return cls(tuple(alpha), tuple(sigma), root, rooting)

    @classmethod
    def from_faces(cls, alpha: Sequence[int], face_next: Sequence[int],
                   root: int | None = None, rooting: str = "face") -> "CombMap":
        """Build from alpha and the face successor ``d -> sigma^{-1}(alpha(d))``."""
        sigma_inv = [face_next[alpha[x]] for x in range(len(alpha))]
        return cls(tuple(alpha), _inverse(sigma_inv), root, rooting)

    def with_root(self, root: int | None, rooting: str | None = None) -> "CombMap":
        return CombMap(self.alpha, self.sigma, root, rooting or self.rooting)

    # basic structure ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.alpha)

    @cached_property
    def sigma_inv(self) -> tuple[int, ...]:
        return _inverse(self.sigma)

    @cached_property
    def face_next(self) -> tuple[int, ...]:
        si = self.sigma_inv
        return tuple(si[self.alpha[d]] for d in range(self.n))

    @cached_property
    def _vertex_data(self):
        return _orbits(self.sigma)

    @cached_property
    def _face_data(self):
        return _orbits(self.face_next)

    @property
    def vertex_of(self) -> list[int]:
        return self._vertex_data[0]

    @property
    def vertices(self) -> list[list[int]]:
        """Vertices as ccw dart cycles."""
        return self._vertex_data[1]

    @property
    def face_of(self) -> list[int]:
        """Face on the left of each dart."""
        return self._face_data[0]

    @property
    def faces(self) -> list[list[int]]:
        """Faces as boundary dart cycles, face on the left."""
        return self._face_data[1]

    def face_right(self, d: int) -> int:
        return self.face_of[self.alpha[d]]

    def tail(self, d: int) -> int:
        return self.vertex_of[d]

    def head(self, d: int) -> int:
        return self.vertex_of[self.alpha[d]]

    def edge_id(self, d: int) -> int:
        return min(d, self.alpha[d])

    def edges(self) -> list[tuple[int, int]]:
        return [(d, self.alpha[d]) for d in range(self.n) if d < self.alpha[d]]

    def num_vertices(self) -> int:
        return len(self.vertices)

    def num_edges(self) -> int:
        return self.n // 2

    def num_faces(self) -> int:
        return len(self.faces)

    def genus(self) -> int:
        chi = self.num_vertices() - self.num_edges() + self.num_faces()
        if chi % 2 or chi > 2:
            raise MapError("Euler characteristic is not that of an orientable surface")
        return (2 - chi) // 2

    def vertex_degree(self, v: int) -> int:
        return len(self.vertices[v])

    def face_degree(self, f: int) -> int:
        return len(self.faces[f])

    @property
    def root_face(self) -> int | None:
        return None if self.root is None else self.face_of[self.root]

    def root_contour(self) -> list[int]:
        """Root-face contour traversed with the root face on its right."""
        if self.root is None:
            raise MapError("map has no root")
        cyc = self.faces[self.root_face]
        return [self.alpha[x] for x in reversed(cyc)]

    def dual(self) -> "CombMap":
        """Dual map on the same darts: dart ``d`` crosses ``d`` from its right face to its left face."""
        sigma = tuple(self.alpha[self.sigma_inv[d]] for d in range(self.n))
        return CombMap(self.alpha, sigma)

    def is_bipartite(self) -> bool:
        color = [-1] * self.num_vertices()
        color[0] = 0
        todo = [0]
        while todo:
            v = todo.pop()
            for d in self.vertices[v]:
                w = self.head(d)
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    todo.append(w)
                elif color[w] == color[v]:
                    return False
        return True

    # text format ------------------------------------------------------------

    def to_text(self, weights: Sequence[int] | None = None) -> str:
        pairs = " ".join(f"{a}-{b}" for a, b in self.edges())
        cycles = sorted(self.vertices, key=min)
        cyc_txt = "".join("(" + " ".join(map(str, _rotate_min(c))) + ")" for c in cycles)
        lines = [f"darts: {self.n}", f"alpha: {pairs}", f"sigma: {cyc_txt}"]
        if self.root is not None:
            key = "root_corner" if self.rooting == "corner" else "root_face"
            lines.append(f"{key}: {self.root}")
        if weights is not None:
            lines.append("weights: " + " ".join(f"{d}={w}" for d, w in enumerate(weights)))
        return "\n".join(lines) + "\n"

    # canonical forms --------------------------------------------------------

    def code_from(self, start: int) -> tuple:
        """Relabelling-invariant code of the map seen from ``start``."""
        return _canonical_code(self.alpha, self.sigma, start)

    def canonical_code(self, decorate=None) -> tuple:
        """Code invariant under relabelling, honouring the rooting.

        ``decorate`` optionally maps a dart to extra data that must be
        preserved (e.g. orientation weights).
        """
        if self.root is not None and self.rooting == "corner":
            starts = [self.root]
        elif self.root is not None:
            starts = self.faces[self.root_face]
        else:
            starts = range(self.n)
        return min(_canonical_code(self.alpha, self.sigma, s, decorate) for s in starts)


def build_map(dart_count: int, alpha_pairs: Iterable[Sequence[int]], sigma_cycles: Iterable[Sequence[int]],
              root: int | None = None, rooting: str = "face") -> CombMap:
    """Map from edge pairs and counterclockwise vertex rotations."""
    return CombMap.from_cycles(dart_count, alpha_pairs, sigma_cycles, root, rooting)


def _rotate_min(cyc: Sequence[int]) -> list[int]:
    i = cyc.index(min(cyc))
    return list(cyc[i:]) + list(cyc[:i])


def _canonical_code(alpha, sigma, start, decorate=None) -> tuple:
    label = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in (alpha[x], sigma[x]):
            if y not in label:
                label[y] = len(order)
                order.append(y)
    if decorate is None:
        return tuple((label[alpha[x]], label[sigma[x]]) for x in order)
    return tuple((label[alpha[x]], label[sigma[x]], decorate(x)) for x in order)


def parse_map(text: str) -> tuple[CombMap, list[int] | None]:
    """Parse the line-oriented map format; returns the map and optional dart weights."""
    n = None
    pairs: list[tuple[int, int]] = []
    cycles: list[list[int]] = []
    root = None
    rooting = "face"
    weights = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise MapError(f"unrecognised line: {raw!r}")
        key, val = (s.strip() for s in line.split(":", 1))
        try:
            if key == "darts":
                n = int(val)
            elif key == "alpha":
                for tok in val.split():
                    a, b = tok.split("-")
                    pairs.append((int(a), int(b)))
            elif key == "sigma":
                body = val.replace(" ", ",")
                for chunk in body.split(")"):
                    chunk = chunk.strip(",").lstrip("(").strip(",")
                    if chunk:
                        cycles.append([int(t) for t in chunk.split(",") if t])
            elif key in ("root_face", "root_corner"):
                if root is None or key == "root_corner":
                    root = int(val)
                if key == "root_corner":
                    rooting = "corner"
            elif key == "weights":
                entries = {}
                for tok in val.split():
                    d, w = tok.split("=")
                    entries[int(d)] = int(w)
                weights = entries
            else:
                raise MapError(f"unknown key {key!r}")
        except (TypeError, ValueError) as exc:
            if isinstance(exc, MapError):
                raise
            raise MapError(f"cannot parse line: {raw!r}") from exc
    if n is None:
        raise MapError("missing 'darts:' line")
    m = CombMap.from_cycles(n, pairs, cycles, root, rooting)
    wlist = None
    if weights is not None:
        if sorted(weights) != list(range(n)):
            raise MapError("weights must list every dart exactly once")
        wlist = [weights[d] for d in range(n)]
    return m, wlist


# ---------------------------------------------------------------------------
# girth, homology and the universal cover


def girth(m: CombMap) -> int:
    """Length of a shortest cycle of the underlying graph."""
    for d in range(m.n):
        if m.tail(d) == m.head(d):
            return 1
    seen_pairs = set()
    for d in range(m.n):
        key = (m.tail(d), m.head(d))
        if key in seen_pairs:
            return 2
        seen_pairs.add(key)
    best = None
    for r in range(m.num_vertices()):
        dist = {r: 0}
        parent_edge = {r: -1}
        q = deque([r])
        while q:
            u = q.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for d in m.vertices[u]:
                w = m.head(d)
                e = m.edge_id(d)
                if e == parent_edge[u]:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent_edge[w] = e
                    q.append(w)
                else:
                    c = dist[u] + dist[w] + 1
                    if best is None or c < best:
                        best = c
    return best if best is not None else 0


@dataclass(frozen=True)
class HomotopyBasis:
    """Two directed cycles spanning the homology of a torus, plus dart labels.

    ``labels[d]`` is the homology vector contributed by traversing ``d``;
    a closed walk's class is the sum of its labels.
    """

    b1: tuple[int, ...]
    b2: tuple[int, ...]
    labels: tuple[tuple[int, int], ...]
    tree_parent: tuple[int, ...]


def _require_torus(m: CombMap):
    if m.genus() != 1:
        raise MapError("operation requires a toroidal map")


def spanning_tree(m: CombMap, root_vertex: int = 0, order: str = "bfs") -> list[int]:
    """Parent dart of each vertex (dart pointing to the parent), -1 at the root."""
    parent = [-2] * m.num_vertices()
    parent[root_vertex] = -1
    todo = deque([root_vertex])
    while todo:
        v = todo.popleft() if order == "bfs" else todo.pop()
        for d in m.vertices[v]:
            w = m.head(d)
            if parent[w] == -2:
                parent[w] = m.alpha[d]
                todo.append(w)
    return parent


def homology_basis(m: CombMap, root_vertex: int = 0, order: str = "bfs") -> HomotopyBasis:
    """Tree/cotree homology basis of a toroidal map."""
    _require_torus(m)
    parent = spanning_tree(m, root_vertex, order)
    tree_edges = {m.edge_id(p) for p in parent if p >= 0}
    nf = m.num_faces()
    fparent = [-2] * nf
    fparent[0] = -1
    forder = [0]
    q = deque([0])
    cotree = set()
    while q:
        f = q.popleft()
        for x in m.faces[f]:
            e = m.edge_id(x)
            if e in tree_edges:
                continue
            g = m.face_right(x)
            if fparent[g] == -2:
                fparent[g] = x  # dart of the cotree edge lying in g's neighbour f
                cotree.add(e)
                forder.append(g)
                q.append(g)
    leftover = [d for d in range(m.n) if d < m.alpha[d] and d not in tree_edges and d not in cotree]
    if len(leftover) != 2:
        raise MapError("tree/cotree leftover is not two edges")
    labels: list[tuple[int, int] | None] = [None] * m.n
    for d in range(m.n):
        e = m.edge_id(d)
        if e in tree_edges:
            labels[d] = (0, 0)
    unit = [(1, 0), (0, 1)]
    for e, u in zip(leftover, unit):
        labels[e] = u
        labels[m.alpha[e]] = (-u[0], -u[1])
    # peel the cotree from its leaves so every face boundary sums to zero
    for g in reversed(forder[1:]):
        x = fparent[g]
        y = m.alpha[x]  # y has face g on its left
        sx = sy = 0
        for z in m.faces[g]:
            if z == y:
                continue
            lz = labels[z]
            if lz is None:
                raise MapError("cotree peeling met an unlabelled dart")
            sx += lz[0]
            sy += lz[1]
        labels[y] = (-sx, -sy)
        labels[x] = (sx, sy)
    lab = tuple(labels)  # type: ignore[arg-type]
    b1 = _fundamental_cycle(m, parent, leftover[0])
    b2 = _fundamental_cycle(m, parent, leftover[1])
    return HomotopyBasis(tuple(b1), tuple(b2), lab, tuple(parent))


def _tree_path_up(m: CombMap, parent, v) -> list[int]:
    """Vertices from v up to the tree root."""
    out = [v]
    while parent[v] >= 0:
        v = m.head(parent[v])
        out.append(v)
    return out


def _fundamental_cycle(m: CombMap, parent, e: int) -> list[int]:
    """Directed cycle: dart ``e`` followed by the tree path back to its tail."""
    u, w = m.tail(e), m.head(e)
    up_w = _tree_path_up(m, parent, w)
    up_u = _tree_path_up(m, parent, u)
    common = set(up_w) & set(up_u)
    lca = next(x for x in up_w if x in common)
    walk = [e]
    v = w
    while v != lca:
        walk.append(parent[v])
        v = m.head(parent[v])
    down = []
    v = u
    while v != lca:
        down.append(m.alpha[parent[v]])
        v = m.head(parent[v])
    walk.extend(reversed(down))
    return walk


def homology_vector(m: CombMap, basis: HomotopyBasis, walk: Sequence[int]) -> tuple[int, int]:
    check_closed_walk(m, walk)
    x = y = 0
    for d in walk:
        a, b = basis.labels[d]
        x += a
        y += b
    return (x, y)


def check_closed_walk(m: CombMap, walk: Sequence[int]) -> None:
    if not walk:
        raise MapError("empty walk")
    for i, d in enumerate(walk):
        nxt = walk[(i + 1) % len(walk)]
        if m.head(d) != m.tail(nxt):
            raise MapError("walk is not closed or not consecutive")


def is_non_repetitive(walk: Sequence[int]) -> bool:
    return len(set(walk)) == len(walk)


def is_cycle(m: CombMap, walk: Sequence[int]) -> bool:
    check_closed_walk(m, walk)
    return len({m.tail(d) for d in walk}) == len(walk)


def essential_girth(m: CombMap) -> int:
    """Girth of the universal cover, by BFS over (vertex, offset) states."""
    _require_torus(m)
    basis = homology_basis(m)
    lab = basis.labels
    best = min(len(f) for f in m.faces)
    for r in range(m.num_vertices()):
        start = (r, 0, 0)
        dist = {start: 0}
        pedge = {start: -1}
        q = deque([start])
        while q:
            s = q.popleft()
            ds = dist[s]
            if 2 * ds >= best:
                break
            v, ox, oy = s
            for d in m.vertices[v]:
                e = m.edge_id(d)
                if e == pedge[s]:
                    continue
                t = (m.head(d), ox + lab[d][0], oy + lab[d][1])
                if t == s:
                    best = min(best, 1)
                    continue
                if t not in dist:
                    dist[t] = ds + 1
                    pedge[t] = e
                    q.append(t)
                else:
                    best = min(best, ds + dist[t] + 1)
    return best


def shortest_contractible_walk_length(m: CombMap, limit: int | None = None) -> int:
    """Shortest non-repetitive null-homologous closed walk with a disk on its right."""
    _require_torus(m)
    cap = limit if limit is not None else min(len(f) for f in m.faces)
    for k in range(1, cap + 1):
        if next(iter(contractible_walks(m, k)), None) is not None:
            return k
    raise MapError("no contractible walk found below the cap")


# ---------------------------------------------------------------------------
# regions and d-angles


def enclosed_region(m: CombMap, walk: Sequence[int], basis: HomotopyBasis | None = None) -> frozenset:
    """Faces strictly on the right of a contractible closed walk.

    Raises ``MapError`` when the walk is repetitive, not null-homologous, or
    when its right side is not an open disk.
    """
    check_closed_walk(m, walk)
    if not is_non_repetitive(walk):
        raise MapError("walk is repetitive")
    if m.genus() == 1:
        b = basis or homology_basis(m)
        if homology_vector(m, b, walk) != (0, 0):
            raise MapError("walk is not null-homologous")
    region = _right_region(m, walk)
    if region is None:
        raise MapError("right side of the walk is not a disk")
    return region


def _right_region(m: CombMap, walk: Sequence[int]) -> frozenset | None:
    D = set(walk)
    k = len(walk)
    alpha, sigma = m.alpha, m.sigma
    for i, x in enumerate(walk):
        a = alpha[x]
        y = sigma[a]
        while y not in D and y != a:
            y = sigma[y]
        if y != walk[(i + 1) % k]:
            return None
    face_of = m.face_of
    start = face_of[alpha[walk[0]]]
    region = {start}
    todo = [start]
    while todo:
        f = todo.pop()
        for z in m.faces[f]:
            y = alpha[z]  # y has f on its right
            if y in D:
                continue
            g = face_of[y]
            if g not in region:
                region.add(g)
                todo.append(g)
    for x in D:
        if face_of[alpha[x]] not in region:
            return None
        if alpha[x] not in D and face_of[x] in region:
            return None
    edges_in = 0
    inner_darts = set()
    for f in region:
        for z in m.faces[f]:
            if z not in D and alpha[z] not in D:
                inner_darts.add(z)
    for z in inner_darts:
        if alpha[z] not in inner_darts:
            return None
        if z < alpha[z]:
            edges_in += 1
    walk_vertices = {m.tail(x) for x in D}
    verts_in = 0
    touched = {m.tail(z) for z in inner_darts}
    for v in touched:
        if v in walk_vertices:
            continue
        if all(z in inner_darts for z in m.vertices[v]):
            verts_in += 1
        else:
            return None
    if verts_in - edges_in + len(region) != 1:
        return None
    return frozenset(region)


def contractible_walks(m: CombMap, length: int, basis: HomotopyBasis | None = None):
    """Yield ``(walk, interior_faces)`` for contractible closed walks of a given length.

    Walks are reported once, starting at their smallest dart.
    """
    b = basis or homology_basis(m)
    lab = b.labels
    alpha, sigma = m.alpha, m.sigma
    for s in range(m.n):
        walk = [s]
        used = {s}
        target = m.tail(s)

        def extend(hx, hy):
            last = walk[-1]
            a = alpha[last]
            if len(walk) == length:
                if m.vertex_of[a] == target and hx == 0 and hy == 0:
                    reg = _right_region(m, walk)
                    if reg is not None:
                        yield tuple(walk), reg
                return
            y = sigma[a]
            while True:
                if y > s and y not in used:
                    walk.append(y)
                    used.add(y)
                    yield from extend(hx + lab[y][0], hy + lab[y][1])
                    walk.pop()
                    used.discard(y)
                if y == a:
                    break
                y = sigma[y]

        yield from extend(lab[s][0], lab[s][1])


@dataclass(frozen=True)
class DAngle:
    walk: tuple[int, ...]
    interior: frozenset
    maximal: bool


def d_angles(m: CombMap, d: int, basis: HomotopyBasis | None = None) -> list[DAngle]:
    """All contractible closed walks of length ``d`` with their interiors."""
    found = list(contractible_walks(m, d, basis))
    out = []
    for w, reg in found:
        maximal = not any(reg < other for _, other in found)
        out.append(DAngle(w, reg, maximal))
    return out


def root_d_angle(m: CombMap, d: int, angles: list[DAngle] | None = None) -> DAngle:
    """The unique maximal d-angle whose interior contains the root face."""
    if m.root is None:
        raise MapError("map is not rooted")
    f0 = m.root_face
    if m.face_degree(f0) != d:
        raise MapError("root face degree differs from d")
    angles = angles if angles is not None else d_angles(m, d)
    cands = [a for a in angles if a.maximal and f0 in a.interior]
    if len(cands) != 1:
        raise MapError("expected exactly one maximal d-angle around the root face")
    return cands[0]


def root_contour_is_maximal(m: CombMap, d: int, angles: list[DAngle] | None = None) -> bool:
    f0 = m.root_face
    angles = angles if angles is not None else d_angles(m, d)
    return not any(f0 in a.interior and len(a.interior) > 1 for a in angles)


# ---------------------------------------------------------------------------
# cutting


@dataclass(frozen=True)
class Annulus:
    """Planar map obtained by cutting a torus along a non-contractible cycle.

    ``origin[d]`` is the torus dart a planar dart comes from.  Darts of the
    outer copy of the cycle (on its left side) have ``outer[d]`` set.
    """

    map: CombMap
    origin: tuple[int, ...]
    outer_vertex: tuple[bool, ...]
    outer_face: int
    special_face: int
    cycle: tuple[int, ...]


def cut_along_cycle(m: CombMap, cycle: Sequence[int], basis: HomotopyBasis | None = None) -> Annulus:
    """Cut a toroidal map open along a directed non-contractible cycle.

    The copy of the cycle keeping the half-edges of its right side bounds the
    special face; the other copy bounds the outer face.
    """
    _require_torus(m)
    if not is_cycle(m, cycle):
        raise MapError("not a cycle")
    b = basis or homology_basis(m)
    if homology_vector(m, b, cycle) == (0, 0):
        raise MapError("cycle is contractible")
    n = m.n
    k = len(cycle)
    alpha = list(m.alpha) + [0] * (2 * k)
    sigma = list(m.sigma) + [0] * (2 * k)
    origin = list(range(n)) + [0] * (2 * k)
    cl = [n + 2 * i for i in range(k)]           # left copy of c_i
    inl = [n + 2 * ((i - 1) % k) + 1 for i in range(k)]  # left copy of alpha(c_{i-1})
    for i, c in enumerate(cycle):
        inc = m.alpha[cycle[i - 1]]
        origin[cl[i]] = c
        origin[inl[i]] = inc
        alpha[cl[i]] = n + 2 * i + 1
        alpha[n + 2 * i + 1] = cl[i]
        first_left = m.sigma[c]
        if first_left == inc:
            sigma[cl[i]] = inl[i]
        else:
            sigma[cl[i]] = first_left
            last_left = m.sigma_inv[inc]
            sigma[last_left] = inl[i]
        sigma[inl[i]] = cl[i]
        sigma[c] = inc
    am = CombMap(tuple(alpha), tuple(sigma))
    if am.genus() != 0:
        raise MapError("cut did not produce a planar map")
    outer = [False] * am.num_vertices()
    for i in range(k):
        outer[am.vertex_of[cl[i]]] = True
    return Annulus(am, tuple(origin), tuple(outer), am.face_of[inl[0]],
                   am.face_of[cycle[0]], tuple(cycle))


def glue_annulus(ann: Annulus) -> CombMap:
    """Inverse of :func:`cut_along_cycle`."""
    a = ann.map
    n = min(d for d in range(a.n) if ann.origin[d] != d) if any(ann.origin[d] != d for d in range(a.n)) else a.n
    sigma = list(a.sigma[:n])
    for i, c in enumerate(ann.cycle):
        cl = n + 2 * i
        inl = n + 2 * ((i - 1) % len(ann.cycle)) + 1
        inc = ann.origin[inl]
        after = a.sigma[cl]
        sigma[c] = inc if after == inl else after
        if after != inl:
            last_left = a.sigma_inv[inl]
            sigma[last_left] = inc
    return CombMap(a.alpha[:n], tuple(sigma))


@dataclass(frozen=True)
class RootCut:
    """Both sides of a map cut along its root d-angle.

    ``torus`` is corner-rooted in the face replacing the disk side.  ``disk``
    is planar, corner-rooted in the old root face, with ``outer`` the face
    replacing the torus side.
    """

    torus: CombMap
    disk: CombMap
    outer: int


def _first_vertex_on_face(m: CombMap, f: int) -> int:
    # left-to-right depth-first search from the root corner
    targets = {m.tail(x) for x in m.faces[f]}
    start = m.tail(m.root)
    if start in targets:
        return start
    seen = {start}

    def around(x):
        y = x
        while True:
            yield y
            y = m.sigma[y]
            if y == x:
                return

    stack = [around(m.root)]
    while stack:
        x = next(stack[-1], None)
        if x is None:
            stack.pop()
            continue
        u = m.head(x)
        if u in seen:
            continue
        if u in targets:
            return u
        seen.add(u)
        stack.append(around(m.sigma[m.alpha[x]]))
    raise MapError("outer face unreachable from the root")


def cut_at_root_d_angle(m: CombMap, d: int, angles: list[DAngle] | None = None) -> RootCut:
    """Split a rooted map along the maximal d-angle around its root face."""
    if m.root is None:
        raise MapError("map is not rooted")
    if m.genus() != 1 or essential_girth(m) != d:
        raise MapError("map is not toroidal of essential girth d")
    ang = root_d_angle(m, d, angles)
    walk, interior = ang.walk, ang.interior
    face_of, alpha, fn = m.face_of, m.alpha, m.face_next
    for c in walk:
        if face_of[c] in interior or face_of[alpha[c]] not in interior:
            raise MapError("d-angle does not separate its interior")
    k = len(walk)
    pos_in = {alpha[c]: i for i, c in enumerate(walk)}
    pos_out = {c: i for i, c in enumerate(walk)}

    inner = [x for x in range(m.n) if face_of[x] in interior]
    ia = {x: j for j, x in enumerate(inner)}
    na = [len(inner) + i for i in range(k)]
    a_alpha = [0] * (len(inner) + k)
    a_next = [0] * (len(inner) + k)
    for x in inner:
        if x in pos_in:
            i = pos_in[x]
            a_alpha[ia[x]], a_alpha[na[i]] = na[i], ia[x]
        elif alpha[x] in ia:
            a_alpha[ia[x]] = ia[alpha[x]]
        else:
            raise MapError("interior edge leaves the disk")
        a_next[ia[x]] = ia[fn[x]]
    for i in range(k):
        a_next[na[i]] = na[(i + 1) % k]
    disk = CombMap.from_faces(a_alpha, a_next, root=ia[m.root], rooting="corner")
    if disk.genus() != 0:
        raise MapError("disk side is not planar")
    outer = disk.face_of[na[0]]

    rest = [x for x in range(m.n) if face_of[x] not in interior]
    il = {x: j for j, x in enumerate(rest)}
    kl = [len(rest) + i for i in range(k)]
    l_alpha = [0] * (len(rest) + k)
    l_next = [0] * (len(rest) + k)
    for x in rest:
        if x in pos_out:
            i = pos_out[x]
            l_alpha[il[x]], l_alpha[kl[i]] = kl[i], il[x]
        else:
            l_alpha[il[x]] = il[alpha[x]]
        l_next[il[x]] = il[fn[x]]
    for i in range(k):
        l_next[kl[i]] = kl[(i - 1) % k]
    v = _first_vertex_on_face(disk, outer)
    i = next(i for i in range(k) if disk.tail(na[i]) == v)
    torus = CombMap.from_faces(l_alpha, l_next, root=kl[(i - 1) % k], rooting="corner")
    return RootCut(torus, disk, outer)


def glue_root_d_angle(cut: RootCut) -> CombMap:
    """Inverse of :func:`cut_at_root_d_angle`."""
    L, A, f1 = cut.torus, cut.disk, cut.outer
    marked = L.faces[L.root_face]
    k = len(marked)
    if A.face_degree(f1) != k or f1 == A.root_face:
        raise MapError("outer face does not match the marked face")
    v = _first_vertex_on_face(A, f1)
    n_i = next(x for x in A.faces[f1] if A.tail(x) == v)
    fprev_a = {A.face_next[x]: x for x in A.faces[f1]}
    # partner pairs (torus side dart, disk side dart) for each position on the d-angle
    pairs = []
    kx, nx = L.root, n_i
    for _ in range(k):
        nx = fprev_a[nx]
        pairs.append((L.alpha[kx], A.alpha[nx]))
        kx = L.face_next[kx]
    drop_l = set(marked)
    drop_a = set(A.faces[f1])
    keep_l = [x for x in range(L.n) if x not in drop_l]
    keep_a = [x for x in range(A.n) if x not in drop_a]
    il = {x: j for j, x in enumerate(keep_l)}
    ia = {x: len(keep_l) + j for j, x in enumerate(keep_a)}
    n = len(keep_l) + len(keep_a)
    alpha = [-1] * n
    nxt = [-1] * n
    for x in keep_l:
        nxt[il[x]] = il[L.face_next[x]]
        if L.alpha[x] in il:
            alpha[il[x]] = il[L.alpha[x]]
    for x in keep_a:
        nxt[ia[x]] = ia[A.face_next[x]]
        if A.alpha[x] in ia:
            alpha[ia[x]] = ia[A.alpha[x]]
    for x, y in pairs:
        alpha[il[x]], alpha[ia[y]] = ia[y], il[x]
    return CombMap.from_faces(alpha, nxt, root=ia[A.root], rooting="corner")


def shortest_cycle_in_class(m: CombMap, cycle: Sequence[int], basis: HomotopyBasis | None = None) -> tuple[int, ...]:
    """A shortest simple cycle homologous to ``cycle``; ties broken by smallest dart sequence."""
    _require_torus(m)
    b = basis or homology_basis(m)
    target = homology_vector(m, b, cycle)
    if target == (0, 0):
        raise MapError("cycle is contractible")
    lab = b.labels
    best: tuple[int, ...] | None = None
    for r in range(m.num_vertices()):
        # BFS in the cover from (r, 0) to (r, target), lexicographic on dart sequences
        start = (r, 0, 0)
        goal = (r, target[0], target[1])
        dist = {start: 0}
        q = deque([start])
        limit = len(best) if best is not None else len(cycle)
        while q:
            s = q.popleft()
            if dist[s] >= limit:
                break
            v, ox, oy = s
            for d in m.vertices[v]:
                t = (m.head(d), ox + lab[d][0], oy + lab[d][1])
                if t not in dist:
                    dist[t] = dist[s] + 1
                    q.append(t)
        if goal not in dist:
            continue
        L = dist[goal]
        if best is not None and L > len(best):
            continue
        path = _lex_smallest_path(m, lab, dist, start, goal)
        if path is None:
            continue
        cand = tuple(_rotate_min(path))
        if best is None or (len(cand), cand) < (len(best), best):
            best = cand
    if best is None:
        raise MapError("no cycle in class found")
    return best


def _lex_smallest_path(m, lab, dist, start, goal):
    # distances to goal restricted to shortest-path DAG, walk greedily by smallest dart
    L = dist[goal]
    back = {goal: 0}
    layer = [goal]
    for step in range(1, L + 1):
        nxt = []
        for t in layer:
            v, ox, oy = t
            for d in m.vertices[v]:
                a = m.alpha[d]
                s = (m.head(d), ox - lab[a][0], oy - lab[a][1])
                if dist.get(s) == L - step and s not in back:
                    back[s] = step
                    nxt.append(s)
        layer = nxt
    # depth-first in lexicographic dart order, keeping tail vertices distinct
    path: list[int] = []
    seen: set[int] = set()

    def dfs(s):
        if s == goal:
            return True
        v, ox, oy = s
        seen.add(v)
        for d in sorted(m.vertices[v]):
            t = (m.head(d), ox + lab[d][0], oy + lab[d][1])
            if back.get(t) != back[s] - 1:
                continue
            if t != goal and t[0] in seen:
                continue
            path.append(d)
            if dfs(t):
                return True
            path.pop()
        seen.discard(v)
        return False

    return path if dfs(start) else None
