import re

import pytest

from torusmaps.balanced import balanced_dd2
from torusmaps.bijection import phi_plus
from torusmaps.maps import MapError, build_map
from torusmaps.render import layout, render_map, render_mobile
from torusmaps.verification import F_maps

EDGE = re.compile(r'<path d="M[^"]*" fill="none" stroke="#(?:333|c00)"')


def test_one_vertex_triangulation_edges_cross_the_boundary(tri1):
    svg = render_map(tri1)
    pos, labels = layout(tri1)
    # every loop is non-contractible, so it is drawn as two clipped translates
    assert all(labels[x] != (0, 0) for x, _ in tri1.edges())
    assert len(EDGE.findall(svg)) == 6
    assert 'clip-path="url(#domain)"' in svg


def test_weights_are_drawn_as_arrows(tri1):
    svg = render_map(tri1, [1, 1, 1, 0, 0, 0])
    assert svg.count('class="arrow"') == 6
    with pytest.raises(MapError):
        render_map(tri1, [1, 0])


def test_planar_map_stays_inside(triangle):
    svg = render_map(triangle)
    assert len(EDGE.findall(svg)) == 3
    assert "stroke-dasharray" not in svg


def test_mobile_buds_are_arrows():
    m = F_maps(3, 2)[0]
    mob = phi_plus(m, balanced_dd2(m, 3))
    svg = render_mobile(mob)
    assert svg.count('stroke="#080"') == len(mob.buds())
    assert svg.count('class="arrow"') >= len(mob.buds())
    assert svg == render_mobile(mob)


def test_higher_genus_is_refused():
    # one vertex, four loops, rotation 0 1 2 3 4 5 6 7 with opposite darts paired: genus 2
    m = build_map(8, [(0, 4), (1, 5), (2, 6), (3, 7)], [tuple(range(8))])
    assert m.genus() == 2
    with pytest.raises(MapError):
        render_map(m)
