"""
Decorated unicellular maps ("mobiles").

A mobile is a rotation system whose darts are either paired by ``alpha``
or dangling (``alpha[d] == -1``); dangling darts are buds and live at
black vertices only.  Every dart carries the colour of its vertex and an
integer weight (buds weigh 0).  ``square`` marks helper vertices created
by the edge-subdivision transforms.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .maps import CombMap, MapError, _orbits

BUD = -1


@dataclass(frozen=True, eq=False)
class Mobile:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    color: tuple[str, ...]
    weight: tuple[int, ...]
    square: tuple[bool, ...] = ()

    def __post_init__(self):
        n = len(self.sigma)
        if not (len(self.alpha) == len(self.color) == len(self.weight) == n):
            raise MapError("mobile arrays differ in length")
        if not self.square:
            object.__setattr__(self, "square", (False,) * n)
        if sorted(self.sigma) != list(range(n)):
            raise MapError("sigma is not a permutation")
        for d, a in enumerate(self.alpha):
            if a == BUD:
                if self.color[d] != "b":
                    raise MapError("bud at a white vertex")
                if self.weight[d] != 0:
                    raise MapError("bud with non-zero weight")
                continue
            if not 0 <= a < n or a == d or self.alpha[a] != d:
                raise MapError("alpha is not an involution on non-bud darts")
        for d in range(n):
            s = self.sigma[d]
            if self.color[s] != self.color[d] or self.square[s] != self.square[d]:
                raise MapError("vertex colour is not constant on a vertex")
        seen = {0}
        todo = [0]
        while todo:
            x = todo.pop()
            for y in (self.alpha[x], self.sigma[x]):
                if y >= 0 and y not in seen:
                    seen.add(y)
                    todo.append(y)
        if len(seen) != n:
            raise MapError("mobile is not connected")

    def _key(self) -> tuple:
        return (self.sigma, self.alpha, self.color, self.weight, self.square)

    def __eq__(self, other) -> bool:
        return isinstance(other, Mobile) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @property
    def n(self) -> int:
        return len(self.sigma)

    @cached_property
    def sigma_inv(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, s in enumerate(self.sigma):
            inv[s] = i
        return tuple(inv)

    @cached_property
    def _vdata(self):
        return _orbits(self.sigma)

    @property
    def vertex_of(self) -> list[int]:
        return self._vdata[0]

    @property
    def vertices(self) -> list[list[int]]:
        return self._vdata[1]

    def is_bud(self, d: int) -> bool:
        return self.alpha[d] == BUD

    def buds(self) -> list[int]:
        return [d for d in range(self.n) if self.alpha[d] == BUD]

    def vertex_color(self, v: int) -> str:
        return self.color[self.vertices[v][0]]

    def white_vertices(self) -> list[int]:
        return [v for v, c in enumerate(self.vertices) if self.color[c[0]] == "w"]

    def black_vertices(self) -> list[int]:
        return [v for v, c in enumerate(self.vertices) if self.color[c[0]] == "b"]

    def edges(self) -> list[tuple[int, int]]:
        return [(d, a) for d, a in enumerate(self.alpha) if a > d]

    def edge_colors(self, d: int) -> str:
        return "".join(sorted(self.color[d] + self.color[self.alpha[d]]))

    def degree(self, v: int) -> int:
        """Number of half-edges at ``v``, buds included."""
        return len(self.vertices[v])

    def vertex_weight(self, v: int) -> int:
        return sum(self.weight[d] for d in self.vertices[v])

    def skeleton(self) -> tuple[CombMap, list[int]]:
        """The map without buds, relabelled; returns it with the old-dart list."""
        keep = [d for d in range(self.n) if self.alpha[d] != BUD]
        idx = {d: i for i, d in enumerate(keep)}
        alpha = [idx[self.alpha[d]] for d in keep]
        sigma = []
        for d in keep:
            y = self.sigma[d]
            while self.alpha[y] == BUD:
                y = self.sigma[y]
            sigma.append(idx[y])
        return CombMap(tuple(alpha), tuple(sigma)), keep

    def genus(self) -> int:
        return self.skeleton()[0].genus()

    def is_unicellular(self) -> bool:
        return self.skeleton()[0].num_faces() == 1

    def excess(self) -> int:
        bw = ww = 0
        for d, a in self.edges():
            c = self.edge_colors(d)
            if c == "bw":
                bw += 1
            elif c == "ww":
                ww += 1
        return bw + 2 * ww - len(self.buds())

    def face_walk(self, start: int | None = None) -> list[int]:
        """Corners of the single face, as the dart sequence met with the face on the right.

        Buds are listed where they are passed.
        """
        if start is None:
            start = next(d for d in range(self.n) if self.alpha[d] != BUD)
        out = []
        x = start
        while True:
            out.append(x)
            y = self.sigma[self.alpha[x]]
            while self.alpha[y] == BUD:
                out.append(y)
                y = self.sigma[y]
            x = y
            if x == start:
                return out

    # canonical forms --------------------------------------------------------

    def code_from(self, start: int) -> tuple:
        label = {start: 0}
        order = [start]
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for y in (self.alpha[x], self.sigma[x]):
                if y >= 0 and y not in label:
                    label[y] = len(order)
                    order.append(y)
        return tuple((label[self.alpha[x]] if self.alpha[x] >= 0 else -1,
                      label[self.sigma[x]], self.color[x], self.weight[x], self.square[x])
                     for x in order)

    @cached_property
    def _codes(self) -> list[tuple]:
        return [self.code_from(d) for d in range(self.n)]

    def canonical_code(self) -> tuple:
        return min(self._codes)

    def automorphism_count(self) -> int:
        best = self.canonical_code()
        return sum(1 for c in self._codes if c == best)

    def relabel_canonical(self) -> "Mobile":
        codes = self._codes
        best = min(codes)
        start = codes.index(best)
        label = {start: 0}
        order = [start]
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for y in (self.alpha[x], self.sigma[x]):
                if y >= 0 and y not in label:
                    label[y] = len(order)
                    order.append(y)
        return Mobile(
            tuple(label[self.sigma[x]] for x in order),
            tuple(label[self.alpha[x]] if self.alpha[x] >= 0 else BUD for x in order),
            tuple(self.color[x] for x in order),
            tuple(self.weight[x] for x in order),
            tuple(self.square[x] for x in order),
        )

    def doubled(self) -> "Mobile":
        return Mobile(self.sigma, self.alpha, self.color, tuple(2 * w for w in self.weight), self.square)

    def halved(self) -> "Mobile":
        if any(w % 2 for w in self.weight):
            raise MapError("mobile has odd weights")
        return Mobile(self.sigma, self.alpha, self.color, tuple(w // 2 for w in self.weight), self.square)

    # serialisation ------------------------------------------------------------

    def to_json(self) -> str:
        verts = []
        for cyc in sorted(self.vertices, key=min):
            verts.append({
                "color": self.color[cyc[0]],
                "square": self.square[cyc[0]],
                "rotation": [
                    {"dart": d, "opposite": self.alpha[d] if self.alpha[d] >= 0 else None,
                     "weight": self.weight[d]}
                    for d in _rot_min(cyc)
                ],
            })
        return json.dumps({"darts": self.n, "vertices": verts}, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Mobile":
        try:
            data = json.loads(text)
            n = int(data["darts"])
            sigma = [-1] * n
            alpha = [-1] * n
            color = ["w"] * n
            weight = [0] * n
            square = [False] * n
            for v in data["vertices"]:
                rot = v["rotation"]
                for i, item in enumerate(rot):
                    d = int(item["dart"])
                    sigma[d] = int(rot[(i + 1) % len(rot)]["dart"])
                    opp = item.get("opposite")
                    alpha[d] = BUD if opp is None else int(opp)
                    color[d] = v["color"]
                    weight[d] = int(item.get("weight", 0))
                    square[d] = bool(v.get("square", False))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise MapError(f"malformed mobile: {exc}") from exc
        if -1 in sigma:
            raise MapError("mobile rotation does not cover every dart")
        return cls(tuple(sigma), tuple(alpha), tuple(color), tuple(weight), tuple(square))


def _rot_min(cyc):
    i = cyc.index(min(cyc))
    return list(cyc[i:]) + list(cyc[:i])


class MobileBuilder:
    """Incremental construction: create darts, pair them, then fix rotations."""

    def __init__(self):
        self.vcolor: list[str] = []
        self.vsquare: list[bool] = []
        self.dvertex: list[int] = []
        self.alpha: list[int] = []
        self.weight: list[int] = []

    def vertex(self, color: str, square: bool = False) -> int:
        self.vcolor.append(color)
        self.vsquare.append(square)
        return len(self.vcolor) - 1

    def dart(self, v: int, weight: int = 0) -> int:
        self.dvertex.append(v)
        self.alpha.append(BUD)
        self.weight.append(weight)
        return len(self.dvertex) - 1

    def pair(self, a: int, b: int) -> None:
        self.alpha[a] = b
        self.alpha[b] = a

    def build(self, rotations: dict[int, Sequence[int]] | Sequence[Sequence[int]]) -> Mobile:
        n = len(self.dvertex)
        sigma = [-1] * n
        items = rotations.items() if isinstance(rotations, dict) else enumerate(rotations)
        for v, rot in items:
            for i, d in enumerate(rot):
                if self.dvertex[d] != v:
                    raise MapError("dart listed at the wrong vertex")
                sigma[d] = rot[(i + 1) % len(rot)]
        if -1 in sigma:
            raise MapError("rotation misses a dart")
        color = tuple(self.vcolor[self.dvertex[d]] for d in range(n))
        square = tuple(self.vsquare[self.dvertex[d]] for d in range(n))
        return Mobile(tuple(sigma), tuple(self.alpha), color, tuple(self.weight), square)


def restrict(mob: Mobile, keep: Sequence[int], alpha_override: dict[int, int] | None = None) -> Mobile:
    """Sub-mobile on the kept darts; rotations skip dropped darts."""
    keepset = set(keep)
    idx = {d: i for i, d in enumerate(keep)}
    over = alpha_override or {}
    sigma, alpha = [], []
    for d in keep:
        y = mob.sigma[d]
        while y not in keepset:
            y = mob.sigma[y]
        sigma.append(idx[y])
        a = over.get(d, mob.alpha[d])
        alpha.append(idx[a] if a >= 0 else BUD)
    return Mobile(tuple(sigma), tuple(alpha), tuple(mob.color[d] for d in keep),
                  tuple(mob.weight[d] for d in keep), tuple(mob.square[d] for d in keep))


# scores and balance ---------------------------------------------------------


def mobile_cycles(mob: Mobile):
    """Directed simple cycles of the skeleton, as mobile darts, each once per direction."""
    sk, keep = mob.skeleton()
    from .orientation import simple_cycles
    for c in simple_cycles(sk):
        yield tuple(keep[x] for x in c)


def mobile_gamma_score(mob: Mobile, cycle: Sequence[int]) -> int:
    """Right-side minus left-side score of a directed cycle.

    Each side counts the weights of half-edges hanging off cycle vertices
    plus, at black cycle vertices, the number of such half-edges (buds
    included).
    """
    if mob.genus() != 1:
        raise MapError("mobile is not toroidal")
    for i, d in enumerate(cycle):
        nxt = cycle[(i + 1) % len(cycle)]
        if mob.alpha[d] < 0 or mob.vertex_of[mob.alpha[d]] != mob.vertex_of[nxt]:
            raise MapError("not a closed walk of the mobile")
    score = 0
    for i, c in enumerate(cycle):
        inc = mob.alpha[cycle[i - 1]]
        black = mob.color[c] == "b"
        y = mob.sigma[inc]
        while y != c:
            score += mob.weight[y] + (1 if black else 0)
            y = mob.sigma[y]
        y = mob.sigma[c]
        while y != inc:
            score -= mob.weight[y] + (1 if black else 0)
            y = mob.sigma[y]
    return score


def is_balanced_mobile(mob: Mobile) -> bool:
    return all(mobile_gamma_score(mob, c) == 0 for c in mobile_cycles(mob))


FAMILIES = ("U", "U_bal", "hatU", "hatU_bal", "V", "V_bal", "hatV", "hatV_bal")


def check_family(mob: Mobile, tag: str, param: int) -> bool:
    """Membership in a mobile family; ``param`` is d for U/V and b for the hat families."""
    if tag not in FAMILIES:
        raise MapError(f"unknown family {tag!r}")
    base = tag.removesuffix("_bal")
    try:
        if mob.genus() != 1 or not mob.is_unicellular():
            return False
    except MapError:
        return False
    if base in ("U", "hatU"):
        vw, ew, bdeg = (param, param - 2, param) if base == "U" else (param, param - 1, 2 * param)
        for d in range(mob.n):
            if mob.is_bud(d):
                continue
            if mob.color[d] == "b" and mob.weight[d] != 0:
                return False
            if mob.color[d] == "w" and mob.weight[d] <= 0:
                return False
        for v in range(len(mob.vertices)):
            if mob.vertex_color(v) == "w" and mob.vertex_weight(v) != vw:
                return False
            if mob.vertex_color(v) == "b" and mob.degree(v) != bdeg:
                return False
    else:
        lo, hi = (-2, param) if base == "V" else (-1, param)
        vw, ew = (param, param - 2) if base == "V" else (param, param - 1)
        for d in range(mob.n):
            if mob.is_bud(d):
                continue
            w = mob.weight[d]
            if not lo <= w <= hi:
                return False
            if mob.color[d] == "b" and w > 0:
                return False
            if mob.color[d] == "w" and w <= 0:
                return False
        for v in range(len(mob.vertices)):
            if mob.vertex_color(v) == "w":
                if mob.vertex_weight(v) != vw:
                    return False
            else:
                deg = mob.degree(v)
                if base == "V":
                    if mob.vertex_weight(v) != param - deg:
                        return False
                else:
                    if deg % 2 or mob.vertex_weight(v) != param - deg // 2:
                        return False
    for d, a in mob.edges():
        if mob.weight[d] + mob.weight[a] != ew:
            return False
    if tag.endswith("_bal"):
        target = mob.doubled() if base.startswith("hat") else mob
        return is_balanced_mobile(target)
    return True


# core and kernel --------------------------------------------------------------


@dataclass(frozen=True)
class KernelDecomposition:
    """Core/kernel split of a toroidal unicellular mobile.

    ``kind`` is ``"I"`` (two kernel vertices joined by three chains) or
    ``"II"`` (one kernel vertex with two loop chains).  ``chains`` lists,
    for each kernel edge, the mobile darts along the chain.  ``pieces``
    partitions all darts: each chain owns the trees hanging at its interior
    vertices, and kernel vertices own their own hanging trees.
    """

    kind: str
    kernel_vertices: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]
    pieces: tuple[frozenset, ...]
    kernel_piece: frozenset


def core_darts(mob: Mobile) -> set[int]:
    """Darts surviving repeated removal of buds and leaves."""
    alive = {d for d in range(mob.n) if mob.alpha[d] >= 0}
    deg = {}
    for d in alive:
        v = mob.vertex_of[d]
        deg[v] = deg.get(v, 0) + 1
    leaves = [v for v, k in deg.items() if k == 1]
    while leaves:
        v = leaves.pop()
        if deg.get(v) != 1:
            continue
        d = next(x for x in mob.vertices[v] if x in alive)
        a = mob.alpha[d]
        alive.discard(d)
        alive.discard(a)
        deg[v] = 0
        u = mob.vertex_of[a]
        deg[u] -= 1
        if deg[u] == 1:
            leaves.append(u)
    return alive


def kernel_decompose(mob: Mobile) -> KernelDecomposition:
    if mob.genus() != 1 or not mob.is_unicellular():
        raise MapError("kernel decomposition needs a toroidal unicellular mobile")
    core = core_darts(mob)
    cdeg = {}
    for d in core:
        v = mob.vertex_of[d]
        cdeg[v] = cdeg.get(v, 0) + 1
    kv = sorted(v for v, k in cdeg.items() if k >= 3)
    if len(kv) == 2 and all(cdeg[v] == 3 for v in kv):
        kind = "I"
    elif len(kv) == 1 and cdeg[kv[0]] == 4:
        kind = "II"
    else:
        raise MapError("unexpected kernel shape")
    kset = set(kv)
    chains = []
    used = set()
    for v in kv:
        for d in mob.vertices[v]:
            if d not in core or d in used:
                continue
            chain = [d]
            used.add(d)
            x = d
            while mob.vertex_of[mob.alpha[x]] not in kset:
                a = mob.alpha[x]
                x = next(y for y in mob.vertices[mob.vertex_of[a]] if y in core and y != a)
                chain.append(x)
                used.add(x)
            used.add(mob.alpha[x])
            chains.append(tuple(chain))
    # trees: everything reachable from a core vertex without using core darts
    owner: dict[int, int] = {}
    for i, ch in enumerate(chains):
        for x in ch[1:]:
            owner[mob.vertex_of[x]] = i
    pieces = [set() for _ in chains]
    kernel_piece = set()
    for i, ch in enumerate(chains):
        for x in ch:
            pieces[i].add(x)
            pieces[i].add(mob.alpha[x])
    seen_v = set(kset) | set(owner)
    for start in list(kset) + list(owner):
        target = kernel_piece if start in kset else pieces[owner[start]]
        todo = [start]
        while todo:
            v = todo.pop()
            for d in mob.vertices[v]:
                if d in core:
                    continue
                target.add(d)
                a = mob.alpha[d]
                if a >= 0:
                    target.add(a)
                    u = mob.vertex_of[a]
                    if u not in seen_v:
                        seen_v.add(u)
                        todo.append(u)
    return KernelDecomposition(kind, tuple(kv), tuple(chains),
                               tuple(frozenset(p) for p in pieces), frozenset(kernel_piece))


def reassemble(mob: Mobile, dec: KernelDecomposition) -> Mobile:
    """Glue the pieces back along the kernel; the result equals ``mob``."""
    parts = list(dec.pieces) + [dec.kernel_piece]
    union = set()
    for p in parts:
        if union & p:
            raise MapError("pieces overlap")
        union |= p
    if union != set(range(mob.n)):
        raise MapError("pieces do not cover the mobile")
    sigma = [-1] * mob.n
    alpha = [-2] * mob.n
    for p in parts:
        for d in p:
            alpha[d] = mob.alpha[d]
            sigma[d] = mob.sigma[d]
    return Mobile(tuple(sigma), tuple(alpha), mob.color, mob.weight, mob.square)
