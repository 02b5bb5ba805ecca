"""
Weighted biorientations of maps.

Weights are stored per dart.  A dart is outgoing when its weight is
positive.  In the ``"N"`` regime ingoing darts carry weight 0; in the
``"Z"`` regime they may carry any non-positive integer.

Vertex weight is the total weight at the vertex in the N regime and the
total weight of outgoing darts in the Z regime (the two agree on N data).
The weight of a face ``f`` is the total weight of the ingoing darts ``d``
with ``f`` on the right of ``d`` (``f`` lies on the left when the half-edge
is walked toward its own vertex).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import networkx as nx

from .maps import (CombMap, HomotopyBasis, MapError, check_closed_walk, homology_basis,
                   homology_vector, is_cycle, _require_torus)


class InfeasibleOrientation(MapError):
    """No orientation meets the requested weights.

    ``witness`` is a vertex set ``S`` with more edge weight inside ``E[S]``
    than vertex weight on ``S`` (empty when the global sums disagree).
    """

    def __init__(self, msg: str, witness: frozenset = frozenset()):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class WeightedBiorientation:
    weights: tuple[int, ...]
    regime: str = "N"

    def __post_init__(self):
        if self.regime not in ("N", "Z"):
            raise MapError("regime must be 'N' or 'Z'")
        if self.regime == "N" and any(w < 0 for w in self.weights):
            raise MapError("negative weight in the N regime")

    def __getitem__(self, d: int) -> int:
        return self.weights[d]

    def __len__(self) -> int:
        return len(self.weights)

    def outgoing(self, d: int) -> bool:
        return self.weights[d] > 0

    def scaled(self, num: int, den: int = 1) -> "WeightedBiorientation":
        out = []
        for w in self.weights:
            if (w * num) % den:
                raise MapError("weights are not divisible")
            out.append(w * num // den)
        return WeightedBiorientation(tuple(out), self.regime)


def plain(m: CombMap, outgoing: Sequence[bool]) -> WeightedBiorientation:
    """Unit-weight orientation from a per-dart direction flag."""
    return WeightedBiorientation(tuple(int(bool(o)) for o in outgoing))


# weights -------------------------------------------------------------------


def vertex_weight(m: CombMap, w: WeightedBiorientation, v: int) -> int:
    if w.regime == "N":
        return sum(w[d] for d in m.vertices[v])
    return sum(w[d] for d in m.vertices[v] if w[d] > 0)


def edge_weight(m: CombMap, w: WeightedBiorientation, d: int) -> int:
    return w[d] + w[m.alpha[d]]


def face_weight(m: CombMap, w: WeightedBiorientation, f: int) -> int:
    return sum(w[m.alpha[x]] for x in m.faces[f] if w[m.alpha[x]] <= 0)


def edge_kind(w: WeightedBiorientation, m: CombMap, d: int) -> int:
    """Number of outgoing darts on the edge of ``d`` (0, 1 or 2)."""
    return int(w[d] > 0) + int(w[m.alpha[d]] > 0)


def weight_tables(m: CombMap, w: WeightedBiorientation) -> dict:
    return {
        "vertices": [vertex_weight(m, w, v) for v in range(m.num_vertices())],
        "edges": {d: edge_weight(m, w, d) for d, _ in m.edges()},
        "faces": [face_weight(m, w, f) for f in range(m.num_faces())],
    }


# specs and flow -------------------------------------------------------------


@dataclass(frozen=True)
class OrientationSpec:
    """Target weights.

    ``vertex`` and ``edge`` are either one integer for all, or a sequence
    (vertex-indexed, resp. indexed by any dart of the edge).  ``face`` is an
    optional face-indexed sequence or callable ``deg -> weight``.
    """

    vertex: int | Sequence[int]
    edge: int | Sequence[int]
    face: Sequence[int] | Callable[[int], int] | None = None
    regime: str = "N"
    low: int = 0
    high: int | None = None

    def vertex_target(self, v: int) -> int:
        return self.vertex if isinstance(self.vertex, int) else self.vertex[v]

    def edge_target(self, m: CombMap, d: int) -> int:
        return self.edge if isinstance(self.edge, int) else self.edge[d]

    def face_target(self, m: CombMap, f: int) -> int | None:
        if self.face is None:
            return None
        if callable(self.face):
            return self.face(m.face_degree(f))
        return self.face[f]


def satisfies(m: CombMap, w: WeightedBiorientation, spec: OrientationSpec) -> bool:
    if w.regime != spec.regime or len(w) != m.n:
        return False
    hi = spec.high
    if any(x < spec.low or (hi is not None and x > hi) for x in w.weights):
        return False
    if spec.regime == "N" and any(x < 0 for x in w.weights):
        return False
    for v in range(m.num_vertices()):
        if vertex_weight(m, w, v) != spec.vertex_target(v):
            return False
    for d, _ in m.edges():
        if edge_weight(m, w, d) != spec.edge_target(m, d):
            return False
    if spec.face is not None:
        for f in range(m.num_faces()):
            if face_weight(m, w, f) != spec.face_target(m, f):
                return False
    return True


def find_alpha_beta(m: CombMap, spec: OrientationSpec) -> WeightedBiorientation:
    """An N-regime orientation meeting vertex and edge targets, via max-flow.

    Edges with target 0 are allowed and receive weight 0 on both darts.
    Raises :class:`InfeasibleOrientation` with a violating vertex set.
    """
    if spec.regime != "N":
        raise MapError("flow construction covers the N regime only")
    nv = m.num_vertices()
    total_beta = sum(spec.edge_target(m, d) for d, _ in m.edges())
    total_alpha = sum(spec.vertex_target(v) for v in range(nv))
    if any(spec.edge_target(m, d) < 0 for d, _ in m.edges()):
        raise MapError("negative edge target")
    if total_beta != total_alpha:
        raise InfeasibleOrientation("edge and vertex totals differ")
    g = nx.DiGraph()
    for d, a in m.edges():
        beta = spec.edge_target(m, d)
        if beta == 0:
            continue
        g.add_edge("s", ("e", d), capacity=beta)
        g.add_edge(("e", d), ("h", d))
        g.add_edge(("e", d), ("h", a))
        g.add_edge(("h", d), ("v", m.vertex_of[d]))
        g.add_edge(("h", a), ("v", m.vertex_of[a]))
    for v in range(nv):
        g.add_edge(("v", v), "t", capacity=spec.vertex_target(v))
    g.add_node("s")
    value, flow = nx.maximum_flow(g, "s", "t")
    if value != total_beta:
        _, (reach, _) = nx.minimum_cut(g, "s", "t")
        witness = frozenset(n[1] for n in reach if isinstance(n, tuple) and n[0] == "v")
        raise InfeasibleOrientation("no orientation meets the targets", witness)
    weights = [0] * m.n
    for d in range(m.n):
        node = ("e", m.edge_id(d))
        if node in flow:
            weights[d] = flow[node].get(("h", d), 0)
    return WeightedBiorientation(tuple(weights))


# expansion ------------------------------------------------------------------


@dataclass(frozen=True)
class Expansion:
    """Oriented multi-map whose parallel groups encode a weighted orientation.

    ``copies[d]`` lists the darts standing for ``d``, in counterclockwise
    order around the tail of ``d``.
    """

    map: CombMap
    orientation: WeightedBiorientation
    copies: tuple[tuple[int, ...], ...]


def beta_expansion(m: CombMap, w: WeightedBiorientation) -> Expansion:
    """Replace each edge of weight ``b`` by ``b`` parallel unit edges.

    Within a group, the copies leaving a vertex come first counterclockwise,
    so two consecutive copies never bound a clockwise 2-cycle.
    """
    if w.regime != "N":
        raise MapError("expansion needs an N-regime orientation")
    copies: list[list[int]] = [[] for _ in range(m.n)]
    nxt = 0
    for d in range(m.n):
        beta = edge_weight(m, w, d)
        if beta <= 0:
            raise MapError("expansion needs positive edge weights")
        copies[d] = list(range(nxt, nxt + beta))
        nxt += beta
    alpha = [0] * nxt
    sigma = [0] * nxt
    out = [0] * nxt
    for d in range(m.n):
        a = m.alpha[d]
        beta = len(copies[d])
        for j, x in enumerate(copies[d]):
            alpha[x] = copies[a][beta - 1 - j]
            out[x] = int(j < w[d])
            sigma[x] = copies[d][j + 1] if j + 1 < beta else copies[m.sigma[d]][0]
    root = None if m.root is None else copies[m.root][-1]
    h = CombMap(tuple(alpha), tuple(sigma), root, m.rooting)
    return Expansion(h, WeightedBiorientation(tuple(out)), tuple(tuple(c) for c in copies))


def contract_expansion(exp: Expansion) -> WeightedBiorientation:
    return WeightedBiorientation(tuple(sum(exp.orientation[x] for x in c) for c in exp.copies))


# minimality -----------------------------------------------------------------


def _forced_faces(m: CombMap, w: WeightedBiorientation) -> list[set[int]]:
    """Face adjacency of the closure: ``g`` in out[f] when a face set holding ``f`` must hold ``g``."""
    out = [set() for _ in range(m.num_faces())]
    for d in range(m.n):
        a = m.alpha[d]
        f, g = m.face_of[d], m.face_of[a]
        if f == g:
            continue
        if w[d] > 0 and w[a] <= 0:
            out[f].add(g)
        elif w[d] <= 0 and w[a] <= 0:
            out[f].add(g)
            out[g].add(f)
    return out


def _closure(adj: list[set[int]], f: int) -> set[int]:
    seen = {f}
    todo = [f]
    while todo:
        x = todo.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def _require_root(m: CombMap):
    if m.root is None:
        raise MapError("map must be rooted")


def is_minimal(m: CombMap, w: WeightedBiorientation) -> bool:
    _require_root(m)
    adj = _forced_faces(m, w)
    r = m.root_face
    return all(r in _closure(adj, f) for f in range(m.num_faces()))


def minimize(m: CombMap, w: WeightedBiorientation) -> WeightedBiorientation:
    """The minimal orientation reachable by face-set flips (same vertex and edge weights)."""
    _require_root(m)
    if w.regime != "N":
        raise MapError("minimize works in the N regime")
    weights = list(w.weights)
    bound = sum(weights) * max(1, m.num_faces()) + 1
    r = m.root_face
    for _ in range(bound):
        cur = WeightedBiorientation(tuple(weights))
        adj = _forced_faces(m, cur)
        target = None
        for f in range(m.num_faces()):
            s = _closure(adj, f)
            if r not in s:
                target = s
                break
        if target is None:
            return cur
        for x in range(m.n):
            if m.face_of[m.alpha[x]] in target and m.face_of[x] not in target:
                if weights[x] <= 0:
                    raise MapError("flip met a dart without weight")
                weights[x] -= 1
                weights[m.alpha[x]] += 1
    raise MapError("minimize exceeded its safety bound")


# scores ---------------------------------------------------------------------


def _side_darts(m: CombMap, cycle: Sequence[int]) -> tuple[list[int], list[int]]:
    """Darts hanging off a simple cycle on its right and on its left."""
    right, left = [], []
    for i, c in enumerate(cycle):
        inc = m.alpha[cycle[i - 1]]
        y = m.sigma[inc]
        while y != c:
            right.append(y)
            y = m.sigma[y]
        y = m.sigma[c]
        while y != inc:
            left.append(y)
            y = m.sigma[y]
    return right, left


def _check_noncontractible_cycle(m: CombMap, cycle: Sequence[int], basis: HomotopyBasis | None):
    _require_torus(m)
    if not is_cycle(m, cycle):
        raise MapError("not a vertex-simple cycle")
    b = basis or homology_basis(m)
    if homology_vector(m, b, cycle) == (0, 0):
        raise MapError("cycle is contractible")


def gamma_score(m: CombMap, w: WeightedBiorientation, cycle: Sequence[int],
                basis: HomotopyBasis | None = None, check: bool = True) -> int:
    """Weight hanging off the cycle on its right minus on its left."""
    if check:
        _check_noncontractible_cycle(m, cycle, basis)
    right, left = _side_darts(m, cycle)
    return sum(w[d] for d in right) - sum(w[d] for d in left)


def delta_score(m: CombMap, w: WeightedBiorientation, dual_walk: Sequence[int],
                check: bool = True) -> int:
    """Signed crossing count of a closed walk in the dual map.

    ``dual_walk`` lists primal darts; the walk crosses each from its right
    face to its left face.  An edge pointing along the listed dart crosses
    from the walk's left to its right and counts +1.
    """
    if any(w[d] not in (0, 1) or w[d] + w[m.alpha[d]] != 1 for d in dual_walk):
        raise MapError("delta score is defined for plain orientations")
    if check:
        dm = m.dual()
        check_closed_walk(dm, dual_walk)
        if homology_vector(dm, homology_basis(dm), dual_walk) == (0, 0):
            raise MapError("dual walk is contractible")
    return sum(1 if w[d] > 0 else -1 for d in dual_walk)


def simple_cycles(m: CombMap) -> Iterator[tuple[int, ...]]:
    """Every directed vertex-simple cycle, once, starting at its smallest dart."""
    for s in range(m.n):
        start_v = m.tail(s)
        path = [s]
        seen = {start_v}

        def extend():
            last = path[-1]
            h = m.head(last)
            if h == start_v:
                yield tuple(path)
                return
            if h in seen:
                return
            seen.add(h)
            for y in m.vertices[h]:
                if y > s:
                    path.append(y)
                    yield from extend()
                    path.pop()
            seen.discard(h)

        yield from extend()


def noncontractible_cycles(m: CombMap, basis: HomotopyBasis | None = None):
    b = basis or homology_basis(m)
    for c in simple_cycles(m):
        if homology_vector(m, b, c) != (0, 0):
            yield c


def is_balanced(m: CombMap, w: WeightedBiorientation, mode: str = "basis",
                basis: HomotopyBasis | None = None) -> bool:
    _require_torus(m)
    b = basis or homology_basis(m)
    if mode == "basis":
        vw = {vertex_weight(m, w, v) for v in range(m.num_vertices())}
        ew = {edge_weight(m, w, d) for d, _ in m.edges()}
        fd = {len(f) for f in m.faces}
        if w.regime != "N" or len(vw) != 1 or len(fd) != 1 or vw != fd or ew != {min(vw) - 2}:
            raise MapError("basis mode needs a d/(d-2)-orientation of a d-angulation")
        return gamma_score(m, w, b.b1, b) == 0 and gamma_score(m, w, b.b2, b) == 0
    if mode == "exhaustive":
        return all(gamma_score(m, w, c, b, check=False) == 0 for c in noncontractible_cycles(m, b))
    raise MapError("mode must be 'basis' or 'exhaustive'")


def epsilon_sum(m: CombMap, w: WeightedBiorientation, walk: Sequence[int], region) -> int:
    """Weight of darts inside ``region`` whose tail lies on ``walk``."""
    on_walk = {m.tail(d) for d in walk}
    inside = set()
    D = set(walk)
    for f in region:
        for x in m.faces[f]:
            for y in (x, m.alpha[x]):
                if y not in D and m.alpha[y] not in D:
                    inside.add(y)
    return sum(w[y] for y in inside if m.tail(y) in on_walk)


# rightmost walks ------------------------------------------------------------


def rightmost_successor(m: CombMap, w: WeightedBiorientation, h: int) -> int:
    a = m.alpha[h]
    y = m.sigma[a]
    while True:
        if w[y] > 0:
            return y
        if y == a:
            raise MapError("reached a vertex without outgoing dart")
        y = m.sigma[y]


def rightmost_walk(m: CombMap, w: WeightedBiorientation, start: int) -> tuple[list[int], list[int]]:
    """Follow opposite-then-rightmost-outgoing darts; returns (tail, loop)."""
    if w[start] <= 0:
        raise MapError("start dart is not outgoing")
    pos = {}
    seq = []
    x = start
    while x not in pos:
        pos[x] = len(seq)
        seq.append(x)
        x = rightmost_successor(m, w, x)
    i = pos[x]
    return seq[:i], seq[i:]


def is_right_biorientation(m: CombMap, w: WeightedBiorientation) -> bool:
    """Every rightmost walk ends on the root-face contour, root face on its right."""
    _require_root(m)
    for v in m.vertices:
        if not any(w[d] > 0 for d in v):
            return False
    contour = m.root_contour()
    if any(w[d] <= 0 for d in contour):
        return False
    succ = {d: rightmost_successor(m, w, d) for d in range(m.n) if w[d] > 0}
    on_contour = set(contour)
    state = {}
    for d in succ:
        path = []
        x = d
        while x not in state and x not in on_contour:
            state[x] = 1
            path.append(x)
            x = succ[x]
        if x not in on_contour and state.get(x) == 1:
            return False
        for y in path:
            state[y] = 2
    return True


# exhaustive enumeration -----------------------------------------------------


def enumerate_orientations(m: CombMap, spec: OrientationSpec) -> Iterator[WeightedBiorientation]:
    """All weightings meeting ``spec``, edge by edge with partial-sum pruning."""
    edges = m.edges()
    lo = spec.low if spec.regime == "Z" else max(0, spec.low)
    hi_default = max(spec.edge_target(m, d) for d, _ in edges) - lo
    hi = spec.high if spec.high is not None else hi_default
    nv, nf = m.num_vertices(), m.num_faces()
    vt = [spec.vertex_target(v) for v in range(nv)]
    ft = [spec.face_target(m, f) for f in range(nf)] if spec.face is not None else None
    # last edge index touching each vertex / face
    last_v = [-1] * nv
    last_f = [-1] * nf
    for i, (d, a) in enumerate(edges):
        for x in (d, a):
            last_v[m.vertex_of[x]] = i
            last_f[m.face_of[x]] = i
    vsum = [0] * nv
    fsum = [0] * nf
    weights = [0] * m.n
    zreg = spec.regime == "Z"

    def vcontrib(x):
        return x if not zreg else max(x, 0)

    def fcontrib(x):
        return x if x <= 0 else 0

    def rec(i):
        if i == len(edges):
            yield WeightedBiorientation(tuple(weights), spec.regime)
            return
        d, a = edges[i]
        beta = spec.edge_target(m, d)
        for x in range(max(lo, beta - hi), min(hi, beta - lo) + 1):
            y = beta - x
            if not zreg and (x < 0 or y < 0):
                continue
            vd, va = m.vertex_of[d], m.vertex_of[a]
            fd, fa = m.face_of[a], m.face_of[d]  # faces on the right of d and of a
            vsum[vd] += vcontrib(x)
            vsum[va] += vcontrib(y)
            fsum[fd] += fcontrib(x)
            fsum[fa] += fcontrib(y)
            ok = True
            for v in (vd, va):
                if vsum[v] > vt[v] or (last_v[v] == i and vsum[v] != vt[v]):
                    ok = False
            if ok and ft is not None:
                for f in (fd, fa):
                    if fsum[f] < ft[f] or (last_f[f] == i and fsum[f] != ft[f]):
                        ok = False
            if ok:
                weights[d], weights[a] = x, y
                yield from rec(i + 1)
            vsum[vd] -= vcontrib(x)
            vsum[va] -= vcontrib(y)
            fsum[fd] -= fcontrib(x)
            fsum[fa] -= fcontrib(y)
        weights[d] = weights[a] = 0

    yield from rec(0)


def dd2_spec(d: int) -> OrientationSpec:
    """Vertex weight d, edge weight d-2, N regime."""
    return OrientationSpec(vertex=d, edge=d - 2, regime="N", low=0, high=d)


def z_spec(d: int) -> OrientationSpec:
    """Z-regime targets: weights in [-2, d], vertex d, edge d-2, face d - deg."""
    return OrientationSpec(vertex=d, edge=d - 2, face=lambda deg: d - deg, regime="Z", low=-2, high=d)


def z_half_spec(b: int) -> OrientationSpec:
    """Z-regime targets for bipartite maps: weights in [-1, b], vertex b, edge b-1, face b - deg/2."""
    return OrientationSpec(vertex=b, edge=b - 1, face=lambda deg: b - deg // 2,
                           regime="Z", low=-1, high=b)
