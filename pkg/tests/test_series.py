from fractions import Fraction

import pytest

from torusmaps.series import (PowerSeries, SeriesError, assemble_hatM2b, assemble_Md, closed_form_series,
                              compose, dyck_bridge_series, fixed_point, h_poly, motzkin_bridge_series,
                              mobile_route_quadrangulation, mobile_route_triangulation, multinomial,
                              path_counts, reciprocal, solve_V_system, solve_W_system, z)

# coefficients computed independently by Lagrange inversion in a computer algebra system
ORACLE = {
    "T": [0, 1, 10, 97, 932, 8916, 85090, 810846, 7719048],
    "Q": [0, 0, 1, 8, 59, 420, 2940, 20384, 140479],
    "F": [0, 0, 1, 20, 307, 4280, 56914, 736568, 9370183],
    "G": [0, 1, 16, 232, 3264, 45296, 623872, 8552832, 116889600],
}
# (1 + W_0)^3 for triangular faces: R^3 with R = 1 + z R^4
DISK_SIDE = [1, 3, 15, 91, 612, 4389, 32890, 254475, 2017356]


def coeffs(s, n):
    return [s[k] for k in range(n + 1)]


def test_arithmetic():
    one = PowerSeries.const(1, 6)
    geom = reciprocal(one - z(6))
    assert coeffs(geom, 6) == [1] * 7
    assert coeffs(geom * geom, 4) == [1, 2, 3, 4, 5]
    assert coeffs((1 + z(5)) ** 3, 5) == [1, 3, 3, 1, 0, 0]
    assert coeffs(geom / geom, 5) == [1, 0, 0, 0, 0, 0]
    assert coeffs(compose(geom, z(6) * 2), 4) == [1, 2, 4, 8, 16]
    assert (z(4) * Fraction(1, 2))[1] == Fraction(1, 2)


def test_reciprocal_of_non_unit_fails():
    with pytest.raises(SeriesError):
        reciprocal(z(5))


def test_compose_needs_zero_constant_term():
    with pytest.raises(SeriesError):
        compose(z(5), PowerSeries.const(1, 5))


def test_fixed_point_catalan():
    c = fixed_point(lambda s: 1 + z(7) * s * s, 7)
    assert coeffs(c, 7) == [1, 1, 2, 5, 14, 42, 132, 429]


def test_fixed_point_tuple():
    a, b = fixed_point(lambda v: (z(5) * (1 + v[1]), z(5) * (1 + v[0])), 5,
                       start=(PowerSeries.const(0, 5), PowerSeries.const(0, 5)))
    assert coeffs(a, 5) == [0, 1, 1, 1, 1, 1]


def test_h_poly_and_multinomial():
    assert h_poly(0, [5, 7]) == 1
    # sums over compositions: h_2 = w2 + w1^2, h_3 = w3 + 2 w1 w2 + w1^3
    assert h_poly(2, [2, 3]) == 3 + 2 ** 2
    assert h_poly(3, [2, 3, 5]) == 5 + 2 * 2 * 3 + 2 ** 3
    assert h_poly(3, [1, 1, 1]) == 4
    assert multinomial(4, (2, 1, 1)) == 12


@pytest.mark.parametrize("which", sorted(ORACLE))
def test_closed_forms(which):
    assert coeffs(closed_form_series(which, 8), 8) == ORACLE[which]


def test_unknown_closed_form():
    with pytest.raises(SeriesError):
        closed_form_series("X", 4)


def test_mobile_routes_match_closed_forms():
    tri = mobile_route_triangulation(8)
    quad = mobile_route_quadrangulation(8)
    assert coeffs(tri.T, 8) == ORACLE["T"]
    assert coeffs(quad.Q, 8) == ORACLE["Q"]
    assert tri.t == (tri.R - 1) / tri.R
    assert quad.t == (quad.R - 1) / quad.R


def test_kernel_series_match_enumerated_mobile_counts():
    tri = mobile_route_triangulation(4)
    quad = mobile_route_quadrangulation(5)
    assert coeffs(tri.N, 3) == [0, 2, 14, 122]
    assert coeffs(quad.N_I, 4) == [0, 0, 0, 3, 21]
    assert coeffs(quad.N_II, 4) == [0, 0, 1, 2, 11]


def test_assembly():
    tri = mobile_route_triangulation(10)
    quad = mobile_route_quadrangulation(10)
    assert assemble_Md(3, tri.R ** 3, tri.N, 0 * tri.R) == tri.T
    assert assemble_hatM2b(2, quad.R ** 4, quad.N_I, quad.N_II) == quad.Q


def test_W_system_for_triangles():
    sol = solve_W_system(3, {3: 1}, 8)
    assert sol.residual_ok
    assert coeffs(sol.annulus, 8) == DISK_SIDE
    assert sorted(sol.values) == [-1, 0, 1, 2]


def test_V_system_for_quadrangles():
    sol = solve_V_system(2, {4: 1}, 8)
    assert sol.residual_ok
    v0, v1 = sol.values[0], sol.values[1]
    assert v0 == z(8) * v1 and v1 == (1 + v0) ** 3


@pytest.mark.parametrize("b, x", [(2, {4: 1}), (2, {4: 1, 6: 2}), (3, {6: 1, 8: 1})])
def test_bipartite_annulus_agrees(b, x):
    assert solve_W_system(2 * b, x, 8).annulus == solve_V_system(b, x, 8).annulus


def test_invalid_system_parameters():
    with pytest.raises(SeriesError):
        solve_W_system(0, {3: 1}, 4)
    with pytest.raises(SeriesError):
        solve_V_system(0, {4: 1}, 4)


def test_path_series():
    dyck = path_counts((-1, 1), 12)
    motz = path_counts((-1, 0, 1), 12)
    for i in range(-3, 4):
        sd = dyck_bridge_series(i, 6)
        sm = motzkin_bridge_series(i, 12)
        for n in range(13):
            if (n - i) % 2 == 0:
                assert sd[n // 2] == dyck[n].get(i, 0)
            assert sm[n] == motz[n].get(i, 0)
    assert motz[4][0] == 19
    assert dyck[4][0] == 6
