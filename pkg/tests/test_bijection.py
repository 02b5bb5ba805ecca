from collections import Counter

import pytest

from torusmaps.balanced import balanced_dd2, canonical_Z_orientation
from torusmaps.bijection import phi_plus, phi_plus_via_expansion, psi_plus
from torusmaps.maps import MapError
from torusmaps.mobile import Mobile, check_family, is_balanced_mobile
from torusmaps.orientation import dd2_spec, enumerate_orientations, is_right_biorientation
from torusmaps.verification import F_maps, L_maps, d_toroidal_maps


@pytest.mark.parametrize("d, n", [(3, 1), (3, 2), (4, 2), (4, 3)])
def test_forward_image_and_roundtrip(d, n):
    for m in F_maps(d, n):
        w = balanced_dd2(m, d)
        mob = phi_plus(m, w)
        assert mob.excess() == d
        assert len(mob.white_vertices()) == m.num_vertices()
        assert check_family(mob, "U_bal", d)
        assert is_balanced_mobile(mob)
        m2, w2 = psi_plus(mob, d)
        assert m2.canonical_code(lambda x: w2[x]) == m.canonical_code(lambda x: w[x])


def test_black_degrees_are_non_root_face_degrees():
    for m in L_maps(3, 2):
        w = canonical_Z_orientation(m, 3)
        mob = phi_plus(m, w)
        blacks = Counter(mob.degree(v) for v in mob.black_vertices())
        faces = Counter(len(f) for i, f in enumerate(m.faces) if i != m.root_face)
        assert blacks == faces
        assert check_family(mob, "V_bal", 3)


def test_forward_agrees_with_expansion_route():
    for m in d_toroidal_maps(3, 2):
        for w in enumerate_orientations(m, dd2_spec(3)):
            if is_right_biorientation(m, w):
                assert phi_plus(m, w).canonical_code() == phi_plus_via_expansion(m, w).canonical_code()


def test_mobile_json_roundtrip():
    for m in F_maps(3, 2):
        mob = phi_plus(m, balanced_dd2(m, 3))
        again = Mobile.from_json(mob.to_json())
        assert again == mob


def test_forward_rejects_non_right_orientation():
    m = F_maps(3, 2)[0]
    bad = [w for w in enumerate_orientations(m, dd2_spec(3)) if not is_right_biorientation(m, w)]
    assert bad
    with pytest.raises(MapError):
        phi_plus(m, bad[0])


def test_inverse_checks_excess():
    m = F_maps(3, 2)[0]
    mob = phi_plus(m, balanced_dd2(m, 3))
    with pytest.raises(MapError):
        psi_plus(mob, 4)


@pytest.mark.parametrize("text", ["{", '{"darts": 2, "vertices": [{"rotation": [{"dart": 0}]}]}'])
def test_malformed_mobile_json(text):
    with pytest.raises(MapError):
        Mobile.from_json(text)
