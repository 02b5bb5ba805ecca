"""
Exhaustive consistency suites over small enumerated instances.

Each suite returns a :class:`Report` listing one :class:`Case` per checked
quantity; failing cases carry a serialized counterexample.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .balanced import balanced_dd2, canonical_Z_half_orientation, canonical_Z_orientation, halve_bipartite
from .bijection import OrientedMap, phi_plus, phi_plus_via_expansion, psi_plus
from .enumerate import (GenSpec, d_angulation_spec, generate_maps, generate_mobiles, in_F, in_L,
                        large_face_spec, quadrangulation_spec, triangulation_spec)
from .maps import (CombMap, MapError, contractible_walks, cut_at_root_d_angle, d_angles, essential_girth,
                   girth, glue_root_d_angle, homology_basis, homology_vector)
from .mobile import check_family, kernel_decompose
from .orientation import (dd2_spec, enumerate_orientations, epsilon_sum, gamma_score, is_balanced,
                          is_right_biorientation, noncontractible_cycles, z_half_spec, z_spec)
from .series import (assemble_hatM2b, assemble_Md, closed_form_series, dyck_bridge_series,
                     motzkin_bridge_series, mobile_route_quadrangulation, mobile_route_triangulation,
                     path_counts, solve_V_system, solve_W_system, z)


@dataclass
class Case:
    name: str
    passed: bool
    detail: str = ""
    counterexample: str | None = None


@dataclass
class Report:
    suite: str
    cases: list[Case] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def add(self, name: str, passed: bool, detail: str = "", counterexample: str | None = None):
        self.cases.append(Case(name, bool(passed), detail, None if passed else counterexample))

    def lines(self) -> list[str]:
        out = []
        for c in self.cases:
            tag = "PASS" if c.passed else "FAIL"
            out.append(f"{tag} {self.suite}: {c.name}" + (f" ({c.detail})" if c.detail else ""))
            if c.counterexample:
                out.extend("    " + line for line in c.counterexample.rstrip().splitlines())
        return out

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "cases": [c.__dict__ for c in self.cases]}


# instance families ---------------------------------------------------------------------

#: edge bounds used when enumerating maps with unbounded face degrees
LARGE_FACE_EDGE_CAP = {1: 5, 2: 5}


def d_toroidal_maps(d: int, n: int, rooting: str = "face") -> list[CombMap]:
    """d-angulations with n vertices and essential girth d."""
    try:
        spec = d_angulation_spec(d, n, rooting=rooting)
    except MapError:
        return []
    return [m for m in generate_maps(spec) if essential_girth(m) == d]


def F_maps(d: int, n: int) -> list[CombMap]:
    return [m for m in d_toroidal_maps(d, n) if in_F(m, d)]


def L_maps(d: int, n: int, max_edges: int | None = None) -> list[CombMap]:
    cap = max_edges if max_edges is not None else LARGE_FACE_EDGE_CAP.get(d)
    spec = large_face_spec(d, n, cap, filter=lambda m: m.num_vertices() == n and in_L(m, d))
    return list(generate_maps(spec))


def _edge_cap(d: int, n: int, max_edges: int | None) -> int:
    if max_edges is not None:
        return max_edges
    return LARGE_FACE_EDGE_CAP.get(d, d * n // max(d - 2, 1))


def _ser(m: CombMap, w=None) -> str:
    return m.to_text(None if w is None else w.weights)


# counting --------------------------------------------------------------------------------


def count_family(family: str, n: int) -> int:
    """Enumerated count of rooted toroidal maps with n vertices in a named family."""
    if family == "T":
        return sum(1 for m in generate_maps(triangulation_spec(n)) if essential_girth(m) == 3)
    if family == "G":
        return sum(1 for m in generate_maps(triangulation_spec(n)) if essential_girth(m) >= 2)
    if family == "Q":
        return sum(1 for m in generate_maps(quadrangulation_spec(n))
                   if m.is_bipartite() and essential_girth(m) == 4)
    if family == "F":
        return sum(1 for m in generate_maps(quadrangulation_spec(n)) if m.is_bipartite())
    raise MapError(f"unknown family {family!r}")


def suite_counting(families=("T", "Q", "F", "G"), max_n: int = 3, max_n_by_family=None) -> Report:
    rep = Report("counting")
    limits = dict(max_n_by_family or {})
    for fam in families:
        top = limits.get(fam, max_n)
        series = closed_form_series(fam, top)
        for n in range(1, top + 1):
            got = count_family(fam, n)
            rep.add(f"{fam} n={n}", got == series[n], f"enumerated {got}, series {series[n]}")
    return rep


# series ----------------------------------------------------------------------------------


def suite_series(order: int = 20, path_length: int = 16) -> Report:
    rep = Report("series-crosscheck")
    tri = mobile_route_triangulation(order)
    quad = mobile_route_quadrangulation(order)
    R, S = tri.R, tri.S
    rep.add("triangulation route = closed form", tri.T == closed_form_series("T", order), f"order {order}")
    rep.add("N_ww rational form", tri.N_ww == 2 * (R - 1) ** 2 / ((3 * R - 4) ** 2 * R ** 2))
    rep.add("N_bb rational form", tri.N_bb == 2 * (R - 1) ** 3 / ((3 * R - 4) ** 2 * R ** 3))
    rep.add("N_bw rational form", tri.N_bw == (1 - R) * (2 * R - 3) / ((3 * R - 4) ** 2 * R ** 2))
    rep.add("N rational form", tri.N == 2 * (R - 1) / ((4 - 3 * R) ** 2 * R ** 3))
    rep.add("t = zRS = zR^3 = (R-1)/R", tri.t == (R - 1) / R and S == R ** 2)
    Rq = quad.R
    rep.add("quadrangulation route = closed form", quad.Q == closed_form_series("Q", order), f"order {order}")
    rep.add("N_I rational form", quad.N_I == 3 * (Rq - 1) ** 3 / (Rq ** 4 * (2 * Rq - 1) * (3 - 2 * Rq) ** 2))
    rep.add("N_II rational form", quad.N_II == (Rq - 1) ** 2 / ((2 * Rq - 1) * (3 - 2 * Rq) * Rq ** 4))
    rep.add("N_I(a) rational form", quad.N_I_a == 3 * (Rq - 1) ** 4 / ((2 * Rq - 1) * Rq ** 5 * (3 - 2 * Rq) ** 2))
    rep.add("N_I(b) rational form",
            quad.N_I_b == 3 * (Rq - 1) ** 3 * (2 - Rq) / ((2 * Rq - 1) * Rq ** 5 * (3 - 2 * Rq) ** 2))
    rep.add("t = zR^2 = (R-1)/R", quad.t == (Rq - 1) / Rq)
    rep.add("assembled M_3 = T", assemble_Md(3, R ** 3, tri.N, 0 * R) == tri.T)
    rep.add("assembled hatM_4 = Q", assemble_hatM2b(2, Rq ** 4, quad.N_I, quad.N_II) == quad.Q)
    w3 = solve_W_system(3, {3: 1}, order)
    rep.add("W system residual (d=3)", w3.residual_ok)
    rep.add("W_0 = z W_1^2, W_1 = (1+W_0)^2",
            w3.values[0] == w3.values[1] ** 2 * z(order) and w3.values[1] == (1 + w3.values[0]) ** 2)
    v2 = solve_V_system(2, {4: 1}, order)
    rep.add("V system residual (b=2)", v2.residual_ok)
    rep.add("V_0 = z V_1, V_1 = (1+V_0)^3",
            v2.values[0] == z(order) * v2.values[1] and v2.values[1] == (1 + v2.values[0]) ** 3)
    for b, x in ((2, {4: 1}), (2, {4: 1, 6: 1}), (3, {6: 1, 8: 1})):
        rep.add(f"bipartite annulus series agree (b={b}, x={sorted(x)})",
                solve_W_system(2 * b, x, order // 2).annulus == solve_V_system(b, x, order // 2).annulus)
    dyck = path_counts((-1, 1), path_length)
    motz = path_counts((-1, 0, 1), path_length)
    ok_d = ok_m = True
    for i in range(-4, 5):
        sd = dyck_bridge_series(i, path_length // 2)
        sm = motzkin_bridge_series(i, path_length)
        for n in range(path_length + 1):
            # t^(n//2) collects the walks of length n with the parity of i
            if (n - i) % 2 == 0 and sd[n // 2] != dyck[n].get(i, 0):
                ok_d = False
            if sm[n] != motz[n].get(i, 0):
                ok_m = False
    rep.add("+-1 walk series match path counts", ok_d, f"lengths <= {path_length}")
    rep.add("Motzkin walk series match path counts", ok_m, f"lengths <= {path_length}")
    return rep


# uniqueness --------------------------------------------------------------------------------


def suite_uniqueness(ds_F=(3, 4, 5), max_n_F: int = 3, ds_L=(1, 2, 3), max_n_L: int = 2) -> Report:
    rep = Report("uniqueness")
    for d in ds_F:
        for n in range(1, max_n_F + 1):
            maps = F_maps(d, n)
            bad = None
            for m in maps:
                hits = [w for w in enumerate_orientations(m, dd2_spec(d))
                        if is_right_biorientation(m, w) and is_balanced(m, w, "exhaustive")]
                if len(hits) != 1 or hits[0] != balanced_dd2(m, d):
                    bad = _ser(m)
                    break
            rep.add(f"F_{d} n={n}", bad is None, f"{len(maps)} maps", bad)
    for d in ds_L:
        for n in range(1, max_n_L + 1):
            maps = L_maps(d, n)
            bad = None
            for m in maps:
                hits = [w for w in enumerate_orientations(m, z_spec(d))
                        if is_right_biorientation(m, w)
                        and check_family(phi_plus(m, w, check=False), "V_bal", d)]
                if len(hits) != 1 or hits[0] != canonical_Z_orientation(m, d):
                    bad = _ser(m)
                    break
            rep.add(f"L_{d} n={n}", bad is None, f"{len(maps)} maps", bad)
    return rep


# bijection roundtrips ------------------------------------------------------------------------


def _roundtrip_maps(rep, label, maps, orient, tag, param, d):
    bad = None
    codes = set()
    for m in maps:
        w = orient(m)
        mob = phi_plus(m, w)
        if not check_family(mob, tag, param):
            bad = _ser(m, w)
            break
        m2, w2 = psi_plus(mob, d)
        if OrientedMap(m2, w2).canonical_code() != OrientedMap(m, w).canonical_code():
            bad = _ser(m, w)
            break
        codes.add(mob.canonical_code())
    rep.add(f"{label} maps: psi(phi(M)) = M", bad is None, f"{len(maps)} maps", bad)
    return codes


def _roundtrip_mobiles(rep, label, mobiles, d, member):
    bad = None
    for mob in mobiles:
        m, w = psi_plus(mob, d)
        if not member(m):
            bad = mob.to_json()
            break
        if phi_plus(m, w).canonical_code() != mob.canonical_code():
            bad = mob.to_json()
            break
    rep.add(f"{label} mobiles: phi(psi(T)) = T", bad is None, f"{len(mobiles)} mobiles", bad)


def suite_roundtrip(d: int, max_n: int = 3, bipartite: bool = False, large: bool = False,
                    max_edges: int | None = None) -> Report:
    rep = Report("roundtrip")
    b = d // 2
    if bipartite and d % 2:
        raise MapError("bipartite roundtrip needs even d")
    for n in range(1, max_n + 1):
        if large:
            cap = _edge_cap(d, n, max_edges)
            maps = L_maps(d, n, cap)
            if bipartite:
                maps = [m for m in maps if m.is_bipartite() and all(len(f) % 2 == 0 for f in m.faces)]
                tag, param, orient = "hatV_bal", b, lambda m: canonical_Z_half_orientation(m, b)
            else:
                tag, param, orient = "V_bal", d, lambda m: canonical_Z_orientation(m, d)
            mobiles = list(generate_mobiles(tag, param, n, cap))

            def member(m):
                return (m.num_vertices() == n and m.num_edges() <= cap and in_L(m, d)
                        and (not bipartite or m.is_bipartite()))
            label = f"{'hatL' if bipartite else 'L'}_{d} n={n} edges<={cap}"
        else:
            maps = F_maps(d, n)
            if bipartite:
                maps = [m for m in maps if m.is_bipartite()]
                tag, param = "hatU_bal", b
                orient = lambda m: halve_bipartite(m, balanced_dd2(m, d))  # noqa: E731
            else:
                tag, param, orient = "U_bal", d, lambda m: balanced_dd2(m, d)
            mobiles = list(generate_mobiles(tag, param, n))

            def member(m):
                return (all(len(f) == d for f in m.faces) and in_F(m, d)
                        and (not bipartite or m.is_bipartite()))
            label = f"{'hatF' if bipartite else 'F'}_{d} n={n}"
        mob_codes = _roundtrip_maps(rep, label, maps, orient, tag, param, d)
        _roundtrip_mobiles(rep, label, mobiles, d, member)
        gen_codes = {mob.canonical_code() for mob in mobiles}
        rep.add(f"{label} two-sided count", len(maps) == len(mobiles) and mob_codes == gen_codes,
                f"{len(maps)} maps, {len(mobiles)} mobiles")
    return rep


# score identities ------------------------------------------------------------------------------


def suite_epsilon(d: int, max_n: int = 3, extra_lengths: int = 1) -> Report:
    """Interior weight at the walk vertices equals length - d, for contractible walks."""
    rep = Report("epsilon")
    for n in range(1, max_n + 1):
        maps = d_toroidal_maps(d, n)
        bad = None
        checks = 0
        for m in maps:
            basis = homology_basis(m)
            walks = []
            for k in range(d, d + extra_lengths + 1):
                walks.extend(contractible_walks(m, k, basis))
            for w in enumerate_orientations(m, dd2_spec(d)):
                for walk, region in walks:
                    checks += 1
                    if epsilon_sum(m, w, walk, region) != len(walk) - d:
                        bad = _ser(m, w) + f"walk: {walk}\n"
                        break
                if bad:
                    break
            if bad:
                break
        rep.add(f"d={d} n={n}", bad is None, f"{len(maps)} maps, {checks} (orientation, walk) pairs", bad)
    return rep


def suite_gamma_linearity(d: int, max_n: int = 3) -> Report:
    rep = Report("gamma-linearity")
    for n in range(1, max_n + 1):
        maps = d_toroidal_maps(d, n)
        bad_lin = bad_mode = None
        cycles_checked = 0
        for m in maps:
            basis = homology_basis(m)
            cycles = [(c, homology_vector(m, basis, c)) for c in noncontractible_cycles(m, basis)]
            for w in enumerate_orientations(m, dd2_spec(d)):
                g1 = gamma_score(m, w, basis.b1, basis)
                g2 = gamma_score(m, w, basis.b2, basis)
                for c, (k1, k2) in cycles:
                    cycles_checked += 1
                    if gamma_score(m, w, c, basis, check=False) != k1 * g1 + k2 * g2:
                        bad_lin = bad_lin or _ser(m, w) + f"cycle: {c}\n"
                if is_balanced(m, w, "basis", basis) != is_balanced(m, w, "exhaustive", basis):
                    bad_mode = bad_mode or _ser(m, w)
        rep.add(f"linearity d={d} n={n}", bad_lin is None, f"{cycles_checked} (orientation, cycle) pairs", bad_lin)
        rep.add(f"basis vs exhaustive d={d} n={n}", bad_mode is None, f"{len(maps)} maps", bad_mode)
    return rep


# parity ---------------------------------------------------------------------------------------


def suite_parity(b: int = 2, max_n: int = 3) -> Report:
    rep = Report("parity")
    d = 2 * b
    for n in range(1, max_n + 1):
        maps = d_toroidal_maps(d, n)
        bad_w = bad_mob = None
        halved = 0
        for m in maps:
            w = balanced_dd2(m, d)
            even = all(x % 2 == 0 for x in w.weights)
            if even != m.is_bipartite():
                bad_w = bad_w or _ser(m, w)
            if not in_F(m, d):
                continue
            mob = phi_plus(m, w)
            if all(x % 2 == 0 for x in mob.weight) != m.is_bipartite():
                bad_mob = bad_mob or _ser(m, w)
            if even:
                hm = phi_plus(m, halve_bipartite(m, w))
                if hm.canonical_code() != mob.halved().canonical_code() or not check_family(hm, "hatU_bal", b):
                    bad_mob = bad_mob or _ser(m, w)
                halved += 1
        rep.add(f"even weights <=> bipartite, d={d} n={n}", bad_w is None, f"{len(maps)} maps", bad_w)
        rep.add(f"mobile even <=> bipartite, halving, d={d} n={n}", bad_mob is None,
                f"{halved} halved mobiles", bad_mob)
    return rep


# decomposition at the root d-angle -------------------------------------------------------------


def disk_side_count(d: int, inner: int) -> int:
    """Planar d-angulations of girth d with a rooted face and a distinct outer face of degree d."""
    # vertices = inner + d, and Euler with all faces of degree d gives the edge count
    v = inner + d
    if (d * (v - 2)) % (d - 2):
        return 0
    e = d * (v - 2) // (d - 2)
    spec = GenSpec(edges=e, face_degrees=[d], genus=0, vertices=v, rooting="corner")
    total = 0
    for m in generate_maps(spec):
        if girth(m) < d:
            continue
        total += sum(1 for f in range(m.num_faces()) if f != m.root_face and m.face_degree(f) == d)
    return total


def suite_decomposition(d: int = 3, max_n: int = 3, max_inner: int = 3) -> Report:
    rep = Report("decomposition")
    M = Counter()
    L = Counter()
    seen = {}
    bad = None
    for n in range(1, max_n + 1):
        for m in d_toroidal_maps(d, n, rooting="corner"):
            M[n] += 1
            if in_L(m, d):
                L[n] += 1
            cut = cut_at_root_d_angle(m, d)
            back = glue_root_d_angle(cut)
            key = (cut.torus.canonical_code(),
                   cut.disk.canonical_code(decorate=lambda x, c=cut: c.disk.face_of[x] == c.outer))
            if back.canonical_code() != m.canonical_code() or key in seen:
                bad = bad or _ser(m)
            seen[key] = m
    rep.add(f"glue(cut(M)) = M and cut injective, d={d} n<={max_n}", bad is None,
            f"{sum(M.values())} rooted maps", bad)
    A = {j: disk_side_count(d, j) for j in range(0, max(max_n, max_inner) + 1)}
    ann = solve_W_system(d, {d: 1}, max_inner).annulus
    rep.add(f"disk-side counts match (1+W_0)^{d}", all(A[j] == ann[j] for j in range(max_inner + 1)),
            f"enumerated {[A[j] for j in range(max_inner + 1)]}, series {[ann[j] for j in range(max_inner + 1)]}")
    for n in range(1, max_n + 1):
        conv = sum(L[k] * A[n - k] for k in range(1, n + 1))
        rep.add(f"|M'(n)| = sum L'(k) A'(n-k), n={n}", conv == M[n], f"{M[n]} vs {conv}")
    return rep


# mobile-side counting --------------------------------------------------------------------------


def marked_counts(tag: str, param: int, n: int, d: int):
    """(sum of d/|Aut|, kernel-marked type I, kernel-marked type II) over a mobile family."""
    exposed = Fraction(0)
    typ = {"I": Fraction(0), "II": Fraction(0)}
    for mob in generate_mobiles(tag, param, n):
        aut = mob.automorphism_count()
        exposed += Fraction(d, aut)
        kind = kernel_decompose(mob).kind
        typ[kind] += Fraction(6 if kind == "I" else 4, aut)
    return exposed, typ["I"], typ["II"]


def suite_mobile_series(max_n: int = 3) -> Report:
    rep = Report("mobile-series")
    tri = mobile_route_triangulation(max_n)
    quad = mobile_route_quadrangulation(max_n + 1)
    for n in range(1, max_n + 1):
        ex, g, h = marked_counts("U_bal", 3, n, 3)
        rep.add(f"3-regular mobiles, kernel-marked = [z^{n}]N", g == tri.N[n] and h == 0, f"{g} vs {tri.N[n]}")
        rep.add(f"3-regular mobiles, exposed-marked = [z^{n}]N/2", ex == Fraction(tri.N[n], 2), f"{ex}")
    for n in range(1, max_n + 2):
        _, g, h = marked_counts("hatU_bal", 2, n, 4)
        rep.add(f"(4,2)-regular mobiles type I = [z^{n}]N_I", g == quad.N_I[n], f"{g} vs {quad.N_I[n]}")
        rep.add(f"(4,2)-regular mobiles type II = [z^{n}]N_II", h == quad.N_II[n], f"{h} vs {quad.N_II[n]}")
    return rep


# local rules ------------------------------------------------------------------------------------


def suite_phi_rules(ds=(3, 4), max_n: int = 3, z_ds=(1, 2, 3), z_max_n: int = 2) -> Report:
    rep = Report("phi-rules")
    for d in ds:
        for n in range(1, max_n + 1):
            count = 0
            bad = None
            for m in d_toroidal_maps(d, n):
                for w in enumerate_orientations(m, dd2_spec(d)):
                    if not is_right_biorientation(m, w):
                        continue
                    count += 1
                    if phi_plus(m, w).canonical_code() != phi_plus_via_expansion(m, w).canonical_code():
                        bad = bad or _ser(m, w)
            rep.add(f"O_{d} n={n}", bad is None, f"{count} oriented maps", bad)
    for d in z_ds:
        for n in range(1, z_max_n + 1):
            count = 0
            bad = None
            for m in L_maps(d, n):
                for w in enumerate_orientations(m, z_spec(d)):
                    if not is_right_biorientation(m, w):
                        continue
                    count += 1
                    if phi_plus(m, w).canonical_code() != phi_plus_via_expansion(m, w).canonical_code():
                        bad = bad or _ser(m, w)
            rep.add(f"Z-regime d={d} n={n}", bad is None, f"{count} oriented maps", bad)
    return rep


SUITES = ("roundtrip", "uniqueness", "gamma-linearity", "epsilon", "parity", "counting",
          "series-crosscheck", "decomposition", "phi-rules", "mobile-series")
