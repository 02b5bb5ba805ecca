import pytest

from torusmaps.enumerate import generate_mobiles
from torusmaps.maps import MapError
from torusmaps.mobile import (BUD, MobileBuilder, check_family, kernel_decompose, mobile_cycles,
                              mobile_gamma_score, reassemble)


def test_three_regular_mobiles_have_triple_edge_kernels():
    for n in (1, 2, 3):
        for mob in generate_mobiles("U_bal", 3, n):
            dec = kernel_decompose(mob)
            assert dec.kind == "I"
            assert len(dec.kernel_vertices) == 2 and len(dec.chains) == 3


def test_double_loop_kernel():
    mob = next(iter(generate_mobiles("hatU_bal", 2, 2)))
    dec = kernel_decompose(mob)
    assert dec.kind == "II"
    assert len(dec.kernel_vertices) == 1 and len(dec.chains) == 2


def test_reassembly_reproduces_the_mobile():
    for tag, p, n in (("U_bal", 3, 3), ("hatU_bal", 2, 3), ("V_bal", 3, 2)):
        for mob in generate_mobiles(tag, p, n, 6 if tag == "V_bal" else None):
            assert reassemble(mob, kernel_decompose(mob)) == mob


def test_pieces_partition_the_darts():
    for mob in generate_mobiles("U_bal", 3, 3):
        dec = kernel_decompose(mob)
        parts = list(dec.pieces) + [dec.kernel_piece]
        assert sum(len(p) for p in parts) == mob.n
        assert frozenset().union(*parts) == frozenset(range(mob.n))


def test_balanced_mobiles_have_zero_scores():
    for mob in generate_mobiles("U_bal", 3, 2):
        assert all(mobile_gamma_score(mob, c) == 0 for c in mobile_cycles(mob))


def test_planar_mobile_has_no_kernel():
    b = MobileBuilder()
    w = b.vertex("w")
    k = b.vertex("b")
    x = b.dart(w, 1)
    y = b.dart(k, 0)
    b.pair(x, y)
    bud = b.dart(k)
    mob = b.build({w: [x], k: [y, bud]})
    assert mob.alpha[bud] == BUD
    assert mob.genus() == 0
    with pytest.raises(MapError):
        kernel_decompose(mob)
    assert not check_family(mob, "U", 3)


def test_unknown_family():
    mob = next(iter(generate_mobiles("U_bal", 3, 1)))
    with pytest.raises(MapError):
        check_family(mob, "W", 3)
