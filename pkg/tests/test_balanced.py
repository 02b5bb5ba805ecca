import pytest

from torusmaps.balanced import (balanced_candidates, balanced_dd2, biased_orientation, biased_quadruple,
                                canonical_Z_half_orientation, canonical_Z_orientation,
                                combination_coefficients, combine_biased, halve_bipartite)
from torusmaps.maps import MapError, homology_basis, shortest_cycle_in_class
from torusmaps.orientation import (dd2_spec, enumerate_orientations, gamma_score, is_balanced, is_minimal,
                                   is_right_biorientation, satisfies)
from torusmaps.verification import F_maps, L_maps, d_toroidal_maps


@pytest.mark.parametrize("d, n", [(3, 1), (3, 2), (4, 2), (4, 3), (5, 3)])
def test_balanced_dd2_is_the_unique_minimal_balanced_orientation(d, n):
    for m in d_toroidal_maps(d, n):
        w = balanced_dd2(m, d)
        assert satisfies(m, w, dd2_spec(d))
        assert is_minimal(m, w)
        assert is_balanced(m, w, "exhaustive")
        minimal = [c for c, is_min, _ in balanced_candidates(m, d) if is_min]
        assert minimal == [w]


def test_right_biorientation_iff_in_F():
    for d, n in [(3, 2), (4, 3)]:
        all_maps = d_toroidal_maps(d, n)
        in_f = {m.canonical_code() for m in F_maps(d, n)}
        for m in all_maps:
            assert is_right_biorientation(m, balanced_dd2(m, d)) == (m.canonical_code() in in_f)


def test_biased_orientation_has_extreme_score():
    for m in d_toroidal_maps(3, 2):
        b = homology_basis(m)
        c = shortest_cycle_in_class(m, b.b1, b)
        w = biased_orientation(m, c, 3, b)
        assert gamma_score(m, w, c, b) == 2 * len(c)


def test_combination_cancels_both_scores():
    for m in d_toroidal_maps(4, 3):
        b = homology_basis(m)
        b1 = shortest_cycle_in_class(m, b.b1, b)
        b2 = shortest_cycle_in_class(m, b.b2, b)
        q = biased_quadruple(m, b1, b2, 4, b)
        assert all(c >= 0 for c in combination_coefficients(q))
        w, s = combine_biased(m, q, 4, b)
        assert s == sum(combination_coefficients(q))
        assert gamma_score(m, w, b1, b) == gamma_score(m, w, b2, b) == 0


def test_balanced_dd2_input_checks(tri1, square1):
    with pytest.raises(MapError):
        balanced_dd2(tri1.with_root(None), 3)
    with pytest.raises(MapError):
        balanced_dd2(tri1, 4)
    with pytest.raises(MapError):
        balanced_dd2(square1, 3)


def test_halving():
    for m in d_toroidal_maps(4, 3):
        w = balanced_dd2(m, 4)
        if m.is_bipartite():
            h = halve_bipartite(m, w)
            assert [2 * x for x in h.weights] == list(w.weights)
        else:
            with pytest.raises(MapError):
                halve_bipartite(m, w)


def test_canonical_Z_orientation_exists_on_L():
    for d in (2, 3):
        for m in L_maps(d, 2):
            w = canonical_Z_orientation(m, d)
            assert w is not None and is_right_biorientation(m, w)


def test_canonical_Z_half_orientation_on_bipartite_L():
    found = 0
    for m in L_maps(4, 2, max_edges=6):
        if m.is_bipartite():
            assert canonical_Z_half_orientation(m, 2) is not None
            found += 1
    assert found == 1


def test_canonical_Z_rejects_small_faces(tri1):
    with pytest.raises(MapError):
        canonical_Z_orientation(tri1, 4)


@pytest.mark.parametrize("d, n", [(3, 2), (3, 3), (4, 3), (5, 3)])
def test_result_is_independent_of_the_basis(d, n):
    # different spanning trees give different shortest basis cycles
    for m in d_toroidal_maps(d, n):
        ref = balanced_dd2(m, d)
        for order in ("bfs", "dfs"):
            for v in range(m.num_vertices()):
                assert balanced_dd2(m, d, order=order, root_vertex=v) == ref
