import math

import numpy as np
import pytest

from gerbekit.covers import (admissible_pieces, make_circle_cover,
                             make_circle_decomposition, make_torus_cover,
                             make_torus_hex_decomposition, product_cover,
                             refine, subordinate, two_subordinations)


def test_circle_cover_shapes():
    c = make_circle_cover(4, 0.6)
    assert len(c.pieces) == 4
    # every point of the circle is covered
    for x in np.linspace(0, 2 * math.pi, 200, endpoint=False):
        assert c.covers_point([x])


def test_circle_cover_nerve():
    c = make_circle_cover(4, 0.6)
    # adjacent pieces overlap, opposite ones do not (overlap < half width)
    assert c.intersection_nonempty((0, 1))
    assert c.intersection_nonempty((3, 0))
    assert not c.intersection_nonempty((0, 2))


def test_torus_cover_product_structure():
    c = make_torus_cover(3, 3, 0.6)
    assert len(c.pieces) == 9
    assert c.factors == 2


def test_product_cover_indexing():
    from gerbekit.covers import product_index, split_index
    a = make_circle_cover(3, 0.5)
    b = make_circle_cover(4, 0.5)
    c = product_cover(a, b)
    assert len(c.pieces) == 12
    for ia in range(3):
        for ib in range(4):
            assert split_index(c, product_index(c, ia, ib)) == (ia, ib)


def test_refine_gives_valid_subordinations():
    c = make_circle_cover(4, 0.6)
    fine, s1, s2 = refine(c, 2)
    assert len(fine.pieces) == 8
    assert s1.index_map != s2.index_map
    for j, piece in enumerate(fine.pieces):
        for s in (s1, s2):
            # the fine piece must sit inside its assigned coarse piece
            assert c.piece_contains_box(s(j), piece)


def test_circle_decomposition_counts():
    dec = make_circle_decomposition(8)
    assert dec.dim == 1
    assert len(dec.faces[1]) == 8     # segments
    assert len(dec.faces[2]) == 8     # vertices


def test_hex_decomposition_counts():
    N = 4
    dec = make_torus_hex_decomposition(N)
    assert dec.dim == 2
    assert len(dec.faces[1]) == N * N          # hexagons
    assert len(dec.faces[2]) == 3 * N * N      # edges
    assert len(dec.faces[3]) == 2 * N * N      # vertices


def test_hex_areas_tile_torus():
    dec = make_torus_hex_decomposition(4)
    total = sum(cell.area() for cell in dec.top_cells)
    assert abs(total - (2 * math.pi) ** 2) < 1e-9


def test_subordinate_is_admissible():
    cover = make_circle_cover(4, 0.7)
    dec = make_circle_decomposition(20)
    adm = admissible_pieces(dec, cover)
    rho = subordinate(dec, cover)
    assert all(rho[i] in adm[i] for i in range(len(rho)))


def test_two_subordinations_differ():
    cover = make_circle_cover(4, 0.7)
    dec = make_circle_decomposition(20)
    rho, rho2 = two_subordinations(dec, cover, np.random.default_rng(0))
    assert rho != rho2


def test_subordinate_raises_without_containment():
    cover = make_circle_cover(8, 0.05)
    dec = make_circle_decomposition(4)    # segments wider than any piece
    with pytest.raises(ValueError):
        subordinate(dec, cover)
