import random

import pytest

from torusmaps.enumerate import in_M, triangulation_spec, generate_maps
from torusmaps.maps import (CombMap, MapError, build_map, cut_along_cycle, cut_at_root_d_angle, d_angles,
                            enclosed_region, essential_girth, girth, glue_annulus, glue_root_d_angle,
                            homology_basis, homology_vector, is_cycle, parse_map, root_d_angle,
                            shortest_cycle_in_class)


def relabel(m: CombMap, perm) -> CombMap:
    inv = {p: i for i, p in enumerate(perm)}
    alpha = tuple(perm[m.alpha[inv[x]]] for x in range(m.n))
    sigma = tuple(perm[m.sigma[inv[x]]] for x in range(m.n))
    root = None if m.root is None else perm[m.root]
    return CombMap(alpha, sigma, root, m.rooting)


def small_triangulations(n):
    return [m for m in generate_maps(triangulation_spec(n)) if essential_girth(m) == 3]


def test_one_vertex_triangulation_structure(tri1):
    assert (tri1.num_vertices(), tri1.num_edges(), tri1.num_faces(), tri1.genus()) == (1, 3, 2, 1)
    assert girth(tri1) == 1
    assert essential_girth(tri1) == 3
    assert not tri1.is_bipartite()


def test_one_vertex_square_map(square1):
    assert square1.genus() == 1
    assert essential_girth(square1) == 4
    assert square1.face_degree(square1.root_face) == 4


def test_planar_triangle(triangle):
    assert triangle.genus() == 0
    assert girth(triangle) == 3
    with pytest.raises(MapError):
        homology_basis(triangle)


def test_build_map_matches_from_cycles():
    m = build_map(4, [(0, 2), (1, 3)], [(0, 1, 2, 3)], root=0)
    assert m.genus() == 1 and m.root == 0


@pytest.mark.parametrize("pairs, cycles", [
    ([(0, 1), (1, 2)], [(0, 1, 2, 3)]),       # dart in two pairs
    ([(0, 1)], [(0, 1, 2, 3)]),               # uncovered darts
    ([(0, 1), (2, 3)], [(0, 1), (2, 3)]),     # disconnected
    ([(0, 1), (2, 3)], [(0, 1, 2)]),          # sigma not total
])
def test_build_map_rejects_invalid_input(pairs, cycles):
    with pytest.raises(MapError):
        build_map(4, pairs, cycles)


def test_text_roundtrip_with_weights(tri1):
    text = tri1.to_text([1, 0, 1, 0, 1, 0])
    m, w = parse_map(text)
    assert m == tri1 and w == [1, 0, 1, 0, 1, 0]
    assert parse_map(m.to_text())[1] is None


@pytest.mark.parametrize("text", ["alpha: 0-1\n", "darts: 2\nalpha: 0-x\nsigma: (0 1)\n",
                                  "darts: 2\nfoo: 1\n", "darts: 2\nalpha: 0-1\nsigma: (0 1)\nweights: 0=1\n"])
def test_parse_errors(text):
    with pytest.raises(MapError):
        parse_map(text)


def test_canonical_code_is_relabelling_invariant():
    rng = random.Random(7)
    for m in small_triangulations(2):
        fm = m.with_root(0, "face")
        perm = list(range(m.n))
        rng.shuffle(perm)
        assert relabel(fm, perm).canonical_code() == fm.canonical_code()
        assert relabel(m, perm).canonical_code() == m.canonical_code()


def test_dual_is_an_involution_up_to_isomorphism():
    for m in small_triangulations(2):
        assert m.dual().dual().canonical_code() == m.with_root(None).canonical_code()
        assert m.dual().num_vertices() == m.num_faces()


def test_homology_labels_vanish_on_faces():
    for m in small_triangulations(2):
        b = homology_basis(m)
        for f in m.faces:
            assert homology_vector(m, b, f) == (0, 0)
        v1, v2 = homology_vector(m, b, b.b1), homology_vector(m, b, b.b2)
        assert abs(v1[0] * v2[1] - v1[1] * v2[0]) == 1


def test_shortest_cycle_in_class_is_simple_and_homologous():
    for m in small_triangulations(2):
        b = homology_basis(m)
        for c in (b.b1, b.b2):
            s = shortest_cycle_in_class(m, c, b)
            assert is_cycle(m, s)
            assert homology_vector(m, b, s) == homology_vector(m, b, c)
            assert len(s) <= len(c)
            assert shortest_cycle_in_class(m, s, b) == s


def test_enclosed_region_of_a_face_contour(tri1):
    for f, contour in enumerate(tri1.faces):
        # the face lies on the left of its contour, so walk the reversed contour
        rev = tuple(tri1.alpha[x] for x in reversed(contour))
        assert enclosed_region(tri1, rev) == frozenset({f})


def test_d_angles_of_one_vertex_triangulation(tri1):
    angles = d_angles(tri1, 3)
    assert len(angles) == 2
    assert all(a.maximal and len(a.interior) == 1 for a in angles)
    assert root_d_angle(tri1, 3).interior == frozenset({tri1.root_face})


def test_cut_along_cycle_roundtrip():
    for m in small_triangulations(2):
        b = homology_basis(m)
        cyc = shortest_cycle_in_class(m, b.b1, b)
        ann = cut_along_cycle(m, cyc, b)
        assert ann.map.genus() == 0
        assert ann.map.n == m.n + 2 * len(cyc)
        assert glue_annulus(ann) == m.with_root(None, "face")


def test_root_d_angle_cut_roundtrip():
    count = 0
    for m in small_triangulations(2):
        if not in_M(m.with_root(0, "face"), 3):
            continue
        cut = cut_at_root_d_angle(m, 3)
        assert cut.disk.genus() == 0 and cut.torus.genus() == 1
        assert glue_root_d_angle(cut).canonical_code() == m.canonical_code()
        count += 1
    assert count == 10


def test_cut_rejects_planar(triangle):
    with pytest.raises(MapError):
        cut_at_root_d_angle(triangle, 3)
