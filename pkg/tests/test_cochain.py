import math

import numpy as np
import pytest

from gerbekit.cochain import (DiffCochain, classify_flat_2cocycle,
                              from_global_form, homotopy_k, is_cocycle,
                              restrict, total_d)
from gerbekit.covers import (make_circle_cover, make_torus_cover, refine,
                             two_subordinations)
from gerbekit.suites import (random_alternating_cochain, random_cocycle,
                             torus_setup)
from gerbekit.trigform import TrigForm


def test_repeated_indices_vanish():
    cover = make_circle_cover(4, 0.55)
    rng = np.random.default_rng(0)
    om = random_alternating_cochain(rng, cover, 2, 1)
    assert om.component((1, 1, 2)).is_zero()
    assert om.int_component((0, 1, 0, 2)) == 0


def test_alternating_data_is_alternating():
    cover = make_circle_cover(4, 0.55)
    rng = np.random.default_rng(1)
    om = random_alternating_cochain(rng, cover, 2, 1)
    a = om.component((0, 1, 2))
    b = om.component((1, 0, 2))
    assert (a + b).max_abs() < 1e-14


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_dd_zero_circle(degree):
    cover = make_circle_cover(4, 0.55)
    rng = np.random.default_rng(degree)
    om = random_alternating_cochain(rng, cover, degree, 1)
    assert total_d(total_d(om)).max_defect() < 1e-12


@pytest.mark.parametrize("degree", [1, 2])
def test_dd_zero_torus(degree):
    cover = make_torus_cover(3, 3, 0.55)
    rng = np.random.default_rng(10 + degree)
    om = random_alternating_cochain(rng, cover, degree, 2)
    assert total_d(total_d(om)).max_defect() < 1e-12


def test_global_form_is_cocycle():
    cover = make_circle_cover(4, 0.55)
    T = TrigForm.monomial(1, (0,), (0,), 0.7) \
        + TrigForm.monomial(1, (2,), (0,), 0.1) \
        + TrigForm.monomial(1, (-2,), (0,), 0.1)
    om = from_global_form(T, cover)
    assert is_cocycle(om)


def test_top_slot_of_d_is_field_strength_minus_d():
    cover = make_circle_cover(4, 0.55)
    rng = np.random.default_rng(3)
    om = random_alternating_cochain(rng, cover, 1, 1)
    out = total_d(om)
    expect = om.get_field_strength() - om.component((2,)).d()
    assert (out.component((2,)) - expect).max_abs() < 1e-14


def test_integer_row_inclusion_sign():
    # degree 0: the integer level enters the function row as +2 pi m
    cover = make_circle_cover(4, 0.55)
    om = DiffCochain(0, cover,
                     components={(a,): TrigForm.zero(1, 0)
                                 for a in cover.indices},
                     int_components={(0, 1): 3, (1, 0): -3},
                     ambient_dim=1)
    out = total_d(om)
    comp = out.component((0, 1))
    assert abs(comp.terms.get(((0,), ()), 0.0) - 2 * math.pi * 3) < 1e-12


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_homotopy_identity_circle(degree):
    cover = make_circle_cover(4, 0.55)
    rng = np.random.default_rng(20 + degree)
    om = random_alternating_cochain(rng, cover, degree, 1)
    fine, s1, s2 = refine(cover, 2)
    lhs = total_d(homotopy_k(om, s1, s2)) + homotopy_k(total_d(om), s1, s2)
    rhs = restrict(om, s1) - restrict(om, s2)
    assert (lhs - rhs).max_defect() < 1e-12


def test_homotopy_identity_torus():
    cover = make_torus_cover(3, 3, 0.55)
    rng = np.random.default_rng(30)
    om = random_alternating_cochain(rng, cover, 2, 2)
    fine, s1, s2 = refine(cover, 2)
    lhs = total_d(homotopy_k(om, s1, s2)) + homotopy_k(total_d(om), s1, s2)
    rhs = restrict(om, s1) - restrict(om, s2)
    assert (lhs - rhs).max_defect() < 1e-12


def test_homotopy_vanishes_for_equal_subordinations():
    cover = make_circle_cover(4, 0.55)
    rng = np.random.default_rng(40)
    om = random_alternating_cochain(rng, cover, 2, 1)
    fine, s1, _ = refine(cover, 2)
    assert homotopy_k(om, s1, s1).max_defect() < 1e-14


def test_classify_flat_2cocycle_value():
    cover, dec = torus_setup()
    rng = np.random.default_rng(50)
    from gerbekit.covers import two_subordinations
    rho, _ = two_subordinations(dec, cover, rng)
    h = 2.2
    T = (h / (4 * math.pi ** 2)) * TrigForm.monomial(2, (0, 0), (0, 1), 1.0)
    om = DiffCochain(2, cover, components={(a,): T for a in cover.indices},
                     ambient_dim=2)
    assert abs(classify_flat_2cocycle(om, dec, rho) - h) < 1e-10


def test_classify_rejects_non_cocycle():
    cover, dec = torus_setup()
    rng = np.random.default_rng(51)
    om = random_alternating_cochain(rng, cover, 2, 2)  # generically not closed
    assert total_d(om).max_defect() > 1e-6
    rho, _ = two_subordinations(dec, cover, rng)
    with pytest.raises(ValueError):
        classify_flat_2cocycle(om, dec, rho)
