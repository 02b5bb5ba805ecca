import pytest

from torusmaps.balanced import balanced_dd2
from torusmaps.maps import MapError, homology_basis
from torusmaps.orientation import (InfeasibleOrientation, OrientationSpec, WeightedBiorientation, beta_expansion,
                                   contract_expansion, dd2_spec, delta_score, edge_weight, enumerate_orientations,
                                   face_weight, find_alpha_beta, gamma_score, is_balanced, is_minimal,
                                   is_right_biorientation, minimize, noncontractible_cycles, plain,
                                   rightmost_walk, satisfies, vertex_weight, weight_tables, z_spec)
from torusmaps.verification import F_maps, d_toroidal_maps


def test_weights_of_a_plain_orientation(tri1):
    w = plain(tri1, [x < tri1.alpha[x] for x in range(tri1.n)])
    assert vertex_weight(tri1, w, 0) == 3
    assert all(edge_weight(tri1, w, x) == 1 for x, _ in tri1.edges())
    tables = weight_tables(tri1, w)
    assert tables["vertices"] == [3]
    assert sum(face_weight(tri1, w, f) for f in range(tri1.num_faces())) == sum(tables["faces"])


def test_find_alpha_beta_meets_targets(tri1):
    w = find_alpha_beta(tri1, dd2_spec(3))
    assert satisfies(tri1, w, dd2_spec(3))


def test_find_alpha_beta_reports_total_mismatch(tri1):
    with pytest.raises(InfeasibleOrientation) as info:
        find_alpha_beta(tri1, OrientationSpec(vertex=4, edge=1))
    assert info.value.witness == frozenset()


def test_find_alpha_beta_reports_violating_set(triangle):
    # vertex 0 can absorb at most its two edges, so the other two vertices get too much
    with pytest.raises(InfeasibleOrientation) as info:
        find_alpha_beta(triangle, OrientationSpec(vertex=[3, 0, 0], edge=1))
    assert info.value.witness == frozenset({1, 2})


def test_enumerate_orientations_of_one_vertex_triangulation(tri1):
    # each of the three loops can point either way and always adds 1 to the only vertex
    ws = list(enumerate_orientations(tri1, dd2_spec(3)))
    assert len(ws) == 8
    assert len(set(ws)) == 8


def test_minimize_is_idempotent_and_keeps_weights():
    for m in d_toroidal_maps(3, 2):
        for w in enumerate_orientations(m, dd2_spec(3)):
            w0 = minimize(m, w)
            assert is_minimal(m, w0)
            assert minimize(m, w0) == w0
            assert satisfies(m, w0, dd2_spec(3))


def test_minimal_orientation_is_unique_per_score_class():
    for m in d_toroidal_maps(3, 2):
        b = homology_basis(m)
        classes = {}
        for w in enumerate_orientations(m, dd2_spec(3)):
            key = (gamma_score(m, w, b.b1, b), gamma_score(m, w, b.b2, b))
            classes.setdefault(key, set()).add(minimize(m, w))
        assert all(len(v) == 1 for v in classes.values())


def test_beta_expansion_roundtrip():
    for m in d_toroidal_maps(4, 2):
        for w in enumerate_orientations(m, dd2_spec(4)):
            exp = beta_expansion(m, w)
            assert exp.map.n == 2 * sum(w.weights)
            assert contract_expansion(exp) == w


def test_basis_and_exhaustive_balance_agree():
    for m in d_toroidal_maps(3, 2):
        b = homology_basis(m)
        for w in enumerate_orientations(m, dd2_spec(3)):
            assert is_balanced(m, w, "basis", b) == is_balanced(m, w, "exhaustive", b)


def test_gamma_score_flips_with_direction():
    for m in d_toroidal_maps(3, 2):
        b = homology_basis(m)
        w = balanced_dd2(m, 3)
        for c in noncontractible_cycles(m, b):
            rev = tuple(m.alpha[x] for x in reversed(c))
            assert gamma_score(m, w, rev, b) == -gamma_score(m, w, c, b)


def test_gamma_rejects_contractible_walk(tri1):
    w = find_alpha_beta(tri1, dd2_spec(3))
    with pytest.raises(MapError):
        gamma_score(tri1, w, tri1.faces[0])


def test_balanced_mode_validation(tri1):
    w = WeightedBiorientation((2, 0, 0, 0, 0, 1))
    with pytest.raises(MapError):
        is_balanced(tri1, w, "basis")
    with pytest.raises(MapError):
        is_balanced(tri1, w, "nonsense")


def test_rightmost_walk_ends_in_a_loop():
    for m in F_maps(3, 2):
        w = balanced_dd2(m, 3)
        assert is_right_biorientation(m, w)
        for x in range(m.n):
            if w[x] > 0:
                tail, loop = rightmost_walk(m, w, x)
                assert loop and rightmost_walk(m, w, loop[0])[1] == loop


def test_rightmost_walk_needs_outgoing_start(tri1):
    w = plain(tri1, [x < tri1.alpha[x] for x in range(tri1.n)])
    with pytest.raises(MapError):
        rightmost_walk(tri1, w, 3)


def test_delta_score_counts_signed_crossings(square1):
    w = plain(square1, [x < square1.alpha[x] for x in range(square1.n)])
    # the dual of the one-vertex square map is again a one-vertex square map;
    # a dual loop crosses one primal edge
    dm = square1.dual()
    b = homology_basis(dm)
    for x in range(square1.n):
        if dm.tail(x) == dm.head(x) and b.labels[x] != (0, 0):
            assert delta_score(square1, w, (x,)) == (1 if w[x] > 0 else -1)


def test_z_spec_targets():
    spec = z_spec(3)
    assert (spec.low, spec.high, spec.regime) == (-2, 3, "Z")
    assert spec.face(5) == -2
