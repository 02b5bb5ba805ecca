import pytest

from torusmaps.enumerate import (DART_CAP_ENV, GenSpec, count_maps, dart_cap, generate_maps, generate_mobiles,
                                 quadrangulation_spec, triangulation_spec)
from torusmaps.maps import MapError, essential_girth
from torusmaps.mobile import check_family, kernel_decompose
from torusmaps.orientation import dd2_spec, enumerate_orientations, is_right_biorientation
from torusmaps.verification import F_maps, count_family, d_toroidal_maps

# rooted maps of genus 1 and genus 0 by edge count (OEIS A006300 and A000168)
TORUS_MAPS_BY_EDGES = [0, 1, 20, 307]
PLANAR_MAPS_BY_EDGES = [2, 9, 54]


def all_degrees(e):
    return range(1, 2 * e + 1)


@pytest.mark.parametrize("e", [1, 2, 3, 4])
def test_rooted_toroidal_map_census(e):
    assert count_maps(GenSpec(edges=e, face_degrees=all_degrees(e))) == TORUS_MAPS_BY_EDGES[e - 1]


@pytest.mark.parametrize("e", [1, 2, 3])
def test_rooted_planar_map_census(e):
    assert count_maps(GenSpec(edges=e, face_degrees=all_degrees(e), genus=0)) == PLANAR_MAPS_BY_EDGES[e - 1]


def test_two_edge_toroidal_map_is_listable_by_hand():
    (m,) = generate_maps(GenSpec(edges=2, face_degrees=all_degrees(2)))
    assert (m.num_vertices(), m.num_faces(), m.root) == (1, 1, 0)


def test_no_duplicates():
    codes = [m.canonical_code() for m in generate_maps(triangulation_spec(2))]
    assert len(codes) == len(set(codes))
    assert all(m.root == 0 for m in generate_maps(triangulation_spec(2)))


def test_face_rooting_quotients_corner_rootings():
    corner = [m for m in generate_maps(triangulation_spec(2)) if essential_girth(m) == 3]
    face = d_toroidal_maps(3, 2)
    assert len({m.with_root(0, "face").canonical_code() for m in corner}) == len(face)


@pytest.mark.parametrize("family, n, expected", [
    ("T", 1, 1), ("T", 2, 10), ("Q", 2, 1), ("Q", 3, 8), ("F", 2, 1), ("F", 3, 20), ("G", 1, 1), ("G", 2, 16),
])
def test_family_counts(family, n, expected):
    assert count_family(family, n) == expected


def two_colourable(m):
    colour = {0: 0}
    todo = [0]
    while todo:
        v = todo.pop()
        for x in m.vertices[v]:
            u = m.head(x)
            if u not in colour:
                colour[u] = 1 - colour[v]
                todo.append(u)
            elif colour[u] == colour[v]:
                return False
    return True


def test_bipartite_filter_matches_two_colouring():
    every = list(generate_maps(quadrangulation_spec(3)))
    kept = {m.canonical_code() for m in generate_maps(quadrangulation_spec(3, filter=lambda m: m.is_bipartite()))}
    assert 0 < len(kept) < len(every)
    for m in every:
        assert (m.canonical_code() in kept) == two_colourable(m)


def test_dart_cap_from_environment(monkeypatch):
    monkeypatch.setenv(DART_CAP_ENV, "4")
    assert dart_cap() == 4
    with pytest.raises(MapError):
        list(generate_maps(GenSpec(edges=3, face_degrees=all_degrees(3))))
    monkeypatch.setenv(DART_CAP_ENV, "many")
    with pytest.raises(MapError):
        dart_cap()


@pytest.mark.parametrize("d, n", [(3, 1), (3, 2), (3, 3), (4, 3), (5, 3)])
def test_two_sided_counts_balanced(d, n):
    assert sum(1 for _ in generate_mobiles("U_bal", d, n)) == len(F_maps(d, n))


@pytest.mark.parametrize("n", [1, 2])
def test_two_sided_counts_all_right_orientations(n):
    oriented = sum(1 for m in d_toroidal_maps(3, n) for w in enumerate_orientations(m, dd2_spec(3))
                   if is_right_biorientation(m, w))
    assert sum(1 for _ in generate_mobiles("U", 3, n)) == oriented


def test_generated_mobiles_have_excess_d_and_a_kernel():
    for d in (3, 4):
        for mob in generate_mobiles("U", d, 3):
            assert mob.excess() == d
            assert check_family(mob, "U", d)
            assert kernel_decompose(mob).kind in ("I", "II")


def test_mobiles_unique():
    mobs = list(generate_mobiles("V_bal", 3, 2))
    assert len({m.canonical_code() for m in mobs}) == len(mobs) == 11
