"""
Opening a face-rooted oriented map into a mobile, and closing it back.

``phi_plus`` applies the local edge rules directly.  ``phi_plus_via_expansion``
first turns 2-way edges into counterclockwise 2-cycles and subdivides 0-way
edges by a source, runs the 1-way rule only, then contracts the helper
vertices.  ``psi_plus`` closes a mobile by bud matching.
"""
from __future__ import annotations

from dataclasses import dataclass

from .maps import CombMap, MapError
from .mobile import BUD, Mobile, MobileBuilder, restrict
from .orientation import WeightedBiorientation, is_right_biorientation


@dataclass(frozen=True)
class OrientedMap:
    """Face-rooted map together with a weighted biorientation."""

    map: CombMap
    orientation: WeightedBiorientation

    def canonical_code(self) -> tuple:
        w = self.orientation
        return self.map.canonical_code(decorate=lambda d: w[d])


def _kind(w, m, d):
    return int(w[d] > 0) + int(w[m.alpha[d]] > 0)


def phi_plus(m: CombMap, w: WeightedBiorientation, check: bool = True,
             square_vertices=frozenset(), square_faces=frozenset()) -> Mobile:
    """Mobile of a face-rooted map with a right biorientation."""
    if m.root is None:
        raise MapError("map must be face-rooted")
    if check and not is_right_biorientation(m, w):
        raise MapError("orientation is not a right biorientation")
    alpha = m.alpha
    root_face = m.root_face
    b = MobileBuilder()
    white = [b.vertex("w", v in square_vertices) for v in range(m.num_vertices())]
    black = {f: b.vertex("b", f in square_faces) for f in range(m.num_faces()) if f != root_face}
    white_rot = {white[v]: [] for v in range(m.num_vertices())}
    black_rot = {v: [] for v in black.values()}

    ww_dart = {}
    bw_white = {}
    for v in range(m.num_vertices()):
        for h in m.vertices[v]:
            k = _kind(w, m, h)
            if k == 2:
                x = b.dart(white[v], w[h])
                ww_dart[h] = x
                white_rot[white[v]].append(x)
            if k == 1 and w[h] > 0:
                x = b.dart(white[v], w[h])
                bw_white[h] = x
                white_rot[white[v]].append(x)
    bb_dart = {}
    buds_at_root = 0
    for f in range(m.num_faces()):
        for di in m.faces[f]:
            ai = alpha[di]
            k = _kind(w, m, di)
            corner_edge = k == 1 and w[di] > 0
            side = "bud" if w[ai] > 0 else ("bb" if k == 0 else None)
            if f == root_face:
                if corner_edge or side == "bb":
                    raise MapError("root face meets a mobile edge")
                if side == "bud":
                    buds_at_root += 1
                continue
            bv = black[f]
            if corner_edge:
                x = b.dart(bv, w[ai])
                b.pair(x, bw_white[di])
                black_rot[bv].append(x)
            if side == "bud":
                black_rot[bv].append(b.dart(bv))
            elif side == "bb":
                x = b.dart(bv, w[ai])
                bb_dart[ai] = x
                black_rot[bv].append(x)
    for h, x in ww_dart.items():
        if h < alpha[h]:
            b.pair(x, ww_dart[alpha[h]])
    for h, x in bb_dart.items():
        if h < alpha[h]:
            b.pair(x, bb_dart[alpha[h]])
    if buds_at_root != m.face_degree(root_face):
        raise MapError("root face does not carry one bud per side")
    rot = {**white_rot, **black_rot}
    return b.build(rot)


# expansion route ------------------------------------------------------------


@dataclass(frozen=True)
class _Expanded:
    map: CombMap
    orientation: WeightedBiorientation
    square_vertices: frozenset
    square_faces: frozenset


def expand_bioriented(m: CombMap, w: WeightedBiorientation) -> _Expanded:
    """Replace 2-way edges by ccw 2-cycles and subdivide 0-way edges by a source.

    Helper source darts get weight 1 and the inner darts of each 2-cycle get
    weight 0.
    """
    alpha, sigma = m.alpha, m.sigma
    n = m.n
    # per original dart: list of replacement darts at its tail, in ccw order
    rep: list[list[int]] = [[] for _ in range(n)]
    new_alpha: list[int] = []
    new_w: list[int] = []
    extra_sigma: dict[int, int] = {}
    helpers = []

    def new(wt):
        new_alpha.append(-1)
        new_w.append(wt)
        return len(new_alpha) - 1

    for d in range(n):
        if d > alpha[d]:
            continue
        a = alpha[d]
        k = _kind(w, m, d)
        if k == 1:
            x, y = new(w[d]), new(w[a])
            rep[d], rep[a] = [x], [y]
            new_alpha[x], new_alpha[y] = y, x
        elif k == 2:
            # at each end the outgoing copy comes first counterclockwise
            d_out, d_in = new(w[d]), new(0)
            a_out, a_in = new(w[a]), new(0)
            rep[d], rep[a] = [d_out, d_in], [a_out, a_in]
            new_alpha[d_out], new_alpha[a_in] = a_in, d_out
            new_alpha[a_out], new_alpha[d_in] = d_in, a_out
        else:
            x, y = new(w[d]), new(w[a])
            sx, sy = new(1), new(1)
            rep[d], rep[a] = [x], [y]
            new_alpha[x], new_alpha[sx] = sx, x
            new_alpha[y], new_alpha[sy] = sy, y
            extra_sigma[sx] = sy
            extra_sigma[sy] = sx
            helpers.append(sx)
    new_sigma = [-1] * len(new_alpha)
    for d in range(n):
        r = rep[d]
        for i, x in enumerate(r):
            new_sigma[x] = r[i + 1] if i + 1 < len(r) else rep[sigma[d]][0]
    for x, y in extra_sigma.items():
        new_sigma[x] = y
    root = None if m.root is None else rep[m.root][-1]
    em = CombMap(tuple(new_alpha), tuple(new_sigma), root, m.rooting)
    sq_v = frozenset(em.vertex_of[x] for x in helpers)
    sq_f = frozenset(em.face_of[rep[d][0]] for d in range(n) if len(rep[d]) == 2)
    return _Expanded(em, WeightedBiorientation(tuple(new_w), w.regime), sq_v, sq_f)


def contract_helpers(mob: Mobile) -> Mobile:
    """Undo the helper vertices: square black -> white-white edge, square white -> black-black edge."""
    drop = set()
    over: dict[int, int] = {}
    for cyc in mob.vertices:
        if not mob.square[cyc[0]]:
            continue
        if len(cyc) != 2 or any(mob.is_bud(d) for d in cyc):
            raise MapError("helper vertex is not a plain degree-2 vertex")
        s1, s2 = cyc
        x1, x2 = mob.alpha[s1], mob.alpha[s2]
        drop.update(cyc)
        over[x1], over[x2] = x2, x1
        if mob.color[s1] == "w":
            for y in (x1, x2):
                bud = mob.sigma_inv[y]
                if not mob.is_bud(bud):
                    raise MapError("black-black helper lacks its bud")
                drop.add(bud)
    keep = [d for d in range(mob.n) if d not in drop]
    return restrict(mob, keep, over)


def phi_plus_via_expansion(m: CombMap, w: WeightedBiorientation, check: bool = True) -> Mobile:
    if check and not is_right_biorientation(m, w):
        raise MapError("orientation is not a right biorientation")
    ex = expand_bioriented(m, w)
    mob = phi_plus(ex.map, ex.orientation, check=False,
                   square_vertices=ex.square_vertices, square_faces=ex.square_faces)
    return contract_helpers(mob)


# closure ----------------------------------------------------------------------


def subdivide_bimobile(mob: Mobile) -> Mobile:
    """Insert a square black vertex in each white-white edge and a square white
    vertex (with a bud before each end) in each black-black edge."""
    b = MobileBuilder()
    vid = {}
    for v, cyc in enumerate(mob.vertices):
        vid[v] = b.vertex(mob.color[cyc[0]], mob.square[cyc[0]])
    new = {}
    for d in range(mob.n):
        new[d] = b.dart(vid[mob.vertex_of[d]], mob.weight[d])
    rot = {vid[v]: [] for v in vid}
    pre_bud = {}
    for d, a in mob.edges():
        c = mob.edge_colors(d)
        if c == "ww":
            s = b.vertex("b", True)
            s1, s2 = b.dart(s, 0), b.dart(s, 0)
            b.pair(new[d], s1)
            b.pair(new[a], s2)
            rot[s] = [s1, s2]
        elif c == "bb":
            s = b.vertex("w", True)
            s1, s2 = b.dart(s, 1), b.dart(s, 1)
            b.pair(new[d], s1)
            b.pair(new[a], s2)
            rot[s] = [s1, s2]
            pre_bud[d] = b.dart(vid[mob.vertex_of[d]])
            pre_bud[a] = b.dart(vid[mob.vertex_of[a]])
        else:
            b.pair(new[d], new[a])
    for v, cyc in enumerate(mob.vertices):
        for d in cyc:
            if d in pre_bud:
                rot[vid[v]].append(pre_bud[d])
            rot[vid[v]].append(new[d])
    return b.build(rot)


def _close_plain(mob: Mobile, d: int) -> tuple[CombMap, WeightedBiorientation, dict]:
    """Closure of a mobile whose edges are all black-white."""
    for x, y in mob.edges():
        if mob.edge_colors(x) != "bw":
            raise MapError("plain closure needs black-white edges only")
    n = mob.n
    # extended rotation at black vertices: an ingoing bud right after each edge
    ext_next = {}
    in_bud_after = {}
    kind = {}  # dart -> "out", "in", "edge"
    nxt = n
    for cyc in mob.vertices:
        if mob.color[cyc[0]] != "b":
            continue
        seq = []
        for x in cyc:
            if mob.is_bud(x):
                seq.append(x)
                kind[x] = "out"
            else:
                seq.append(x)
                kind[x] = "edge"
                seq.append(nxt)
                kind[nxt] = "in"
                in_bud_after[x] = nxt
                nxt += 1
        for i, x in enumerate(seq):
            ext_next[x] = seq[(i + 1) % len(seq)]
    for cyc in mob.vertices:
        if mob.color[cyc[0]] == "w":
            for x in cyc:
                ext_next[x] = mob.sigma[x]
                kind[x] = "edge"

    # walk the face with it on the right, listing buds
    start = next(x for x in range(n) if not mob.is_bud(x))
    walk = []
    x = start
    while True:
        y = ext_next[mob.alpha[x]]
        while kind[y] != "edge":
            walk.append(y)
            y = ext_next[y]
        x = y
        if x == start:
            break
    partner = {}
    stack = []
    for _ in range(2):
        for y in walk:
            if kind[y] == "out":
                if y not in partner and y not in stack:
                    stack.append(y)
            elif y not in partner and stack:
                o = stack.pop()
                partner[o] = y
                partner[y] = o
    exposed = [y for y in walk if kind[y] == "in" and y not in partner]
    if any(kind[y] == "out" and y not in partner for y in walk):
        raise MapError("closure left an outgoing bud unmatched")
    if len(exposed) != d:
        raise MapError(f"closure exposes {len(exposed)} buds, expected {d}")
    # the closed map X on bud darts plus darts at the extra vertex
    bud_darts = [y for y in ext_next if kind[y] != "edge"]
    idx = {y: i for i, y in enumerate(sorted(bud_darts))}
    total = len(idx) + d
    alpha = [-1] * total
    sigma = [-1] * total
    inf = {}
    for i, y in enumerate(exposed):
        inf[y] = len(idx) + i
    for y in bud_darts:
        p = partner.get(y)
        alpha[idx[y]] = idx[p] if p is not None else inf[y]
        z = ext_next[y]
        while kind[z] == "edge":
            z = ext_next[z]
        sigma[idx[y]] = idx[z]
    for y, k in inf.items():
        alpha[k] = idx[y]
    order = [inf[y] for y in reversed(exposed)]
    for i, k in enumerate(order):
        sigma[k] = order[(i + 1) % len(order)]
    X = CombMap(tuple(alpha), tuple(sigma))
    O = X.dual()
    weights = [0] * total
    edge_of = {v: k for k, v in in_bud_after.items()}
    for y in bud_darts:
        if kind[y] != "in":
            continue
        h = edge_of[y]
        q = idx[y]
        weights[q] = mob.weight[mob.alpha[h]]
        weights[alpha[q]] = mob.weight[h]
    # helper-vertex bookkeeping for the bimobile route
    white_of_face = {}
    for y in bud_darts:
        if kind[y] == "in":
            white_of_face[O.vertex_of[idx[y]]] = mob.vertex_of[mob.alpha[edge_of[y]]]
    info = {"inf_darts": order, "white_of_vertex": white_of_face,
            "black_of_face": {X.vertex_of[idx[y]]: mob.vertex_of[y if y < n else edge_of[y]]
                              for y in bud_darts}}
    regime = "Z" if any(x < 0 for x in weights) else "N"
    return O.with_root(order[0], "face"), WeightedBiorientation(tuple(weights), regime), info


def psi_plus(mob: Mobile, d: int | None = None) -> tuple[CombMap, WeightedBiorientation]:
    """Close a mobile of excess ``d`` into a face-rooted oriented map."""
    exc = mob.excess()
    if d is None:
        d = exc
    if exc != d or d < 1:
        raise MapError(f"mobile excess {exc} does not match d={d}")
    needs_helpers = any(mob.edge_colors(x) != "bw" for x, _ in mob.edges())
    work = subdivide_bimobile(mob) if needs_helpers else mob
    O, w, info = _close_plain(work, d)
    if not needs_helpers:
        return O, w
    sq_white = {v for v in range(len(work.vertices)) if work.square[work.vertices[v][0]]
                and work.vertex_color(v) == "w"}
    sq_black = {v for v in range(len(work.vertices)) if work.square[work.vertices[v][0]]
                and work.vertex_color(v) == "b"}
    helper_vertices = {ov for ov, wv in info["white_of_vertex"].items() if wv in sq_white}
    helper_faces = {xf for xf, bv in info["black_of_face"].items() if bv in sq_black}
    return _contract_expansion(O, w, helper_vertices, helper_faces)


def _contract_expansion(O: CombMap, w: WeightedBiorientation, helper_vertices, helper_faces):
    """Inverse of :func:`expand_bioriented` on a closed map."""
    alpha = list(O.alpha)
    sigma = list(O.sigma)
    sigma_inv = list(O.sigma_inv)
    weights = list(w.weights)
    drop = set()
    moved = {}

    def unlink(x):
        p, s = sigma_inv[x], sigma[x]
        sigma[p] = s
        sigma_inv[s] = p

    for v in helper_vertices:
        s1, s2 = O.vertices[v]
        t1, t2 = alpha[s1], alpha[s2]
        alpha[t1], alpha[t2] = t2, t1
        drop.update((s1, s2))
        moved[s1], moved[s2] = t2, t1
    for f in helper_faces:
        q1, q2 = O.faces[f]
        k1 = q1 if weights[q1] > 0 else alpha[q1]
        k2 = q2 if weights[q2] > 0 else alpha[q2]
        if weights[k1] <= 0 or weights[k2] <= 0:
            raise MapError("helper 2-cycle is not directed")
        r1, r2 = alpha[k1], alpha[k2]
        for r in (r1, r2):
            unlink(r)
            drop.add(r)
        moved[r1], moved[r2] = k2, k1
        alpha[k1], alpha[k2] = k2, k1
    keep = [x for x in range(O.n) if x not in drop]
    idx = {x: i for i, x in enumerate(keep)}
    m2 = CombMap(tuple(idx[alpha[x]] for x in keep), tuple(idx[sigma[x]] for x in keep))
    root = O.root
    while root in drop:
        root = moved[root]
    new_root = idx[root]
    wt = tuple(weights[x] for x in keep)
    regime = "Z" if any(x < 0 for x in wt) else "N"
    return m2.with_root(new_root, "face"), WeightedBiorientation(wt, regime)
