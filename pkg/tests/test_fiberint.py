import math

import numpy as np
import pytest

from gerbekit.cochain import from_global_form, total_d
from gerbekit.covers import (make_circle_cover, product_cover,
                             two_subordinations)
from gerbekit.fiberint import (homotopy_residual, monotone_paths, path_count,
                               pushforward, pushforward_commutes_defect,
                               pushforward_homotopy)
from gerbekit.suites import (circle_setup, random_alternating_cochain,
                             random_cocycle, torus_setup)
from gerbekit.trigform import TrigForm


def test_path_counts_are_binomial():
    for r in range(1, 5):
        for k in range(1, 5):
            assert len(monotone_paths(r, k)) == path_count(r, k)
            assert path_count(r, k) == math.comb(r + k - 2, r - 1)


def test_path_endpoints_and_monotonicity():
    for nodes, area in monotone_paths(3, 3):
        assert nodes[0] == (1, 1) and nodes[-1] == (3, 3)
        for (p, q), (p2, q2) in zip(nodes, nodes[1:]):
            assert (p2 - p, q2 - q) in ((1, 0), (0, 1))


def test_path_area_convention_2x2():
    # two paths between (1,1) and (2,2): the one stepping up first has
    # area 0, the one stepping right first picks up one unit square
    areas = {nodes: area for nodes, area in monotone_paths(2, 2)}
    up_first = ((1, 1), (1, 2), (2, 2))
    right_first = ((1, 1), (2, 1), (2, 2))
    assert areas[up_first] % 2 == 0
    assert areas[right_first] % 2 == 1


def _s1_instance(seed, degree):
    rng = np.random.default_rng(seed)
    base = make_circle_cover(3, 0.6)
    fiber, dec = circle_setup()
    cover = product_cover(base, fiber)
    om = random_alternating_cochain(rng, cover, degree, 2)
    rho, rho2 = two_subordinations(dec, fiber, rng)
    return om, dec, rho, rho2, cover


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_stokes_circle_fiber(degree):
    om, dec, rho, _, _ = _s1_instance(degree, degree)
    assert pushforward_commutes_defect(om, dec, rho) < 1e-11


def test_stokes_torus_fiber():
    rng = np.random.default_rng(5)
    base = make_circle_cover(3, 0.6)
    fiber, dec = torus_setup()
    cover = product_cover(base, fiber)
    om = random_alternating_cochain(rng, cover, 2, 3)
    rho, _ = two_subordinations(dec, fiber, rng)
    assert pushforward_commutes_defect(om, dec, rho) < 1e-10


def test_pushforward_of_global_form_is_fiber_integral():
    # a global form pushes forward to its global fiber integral
    rng = np.random.default_rng(6)
    base = make_circle_cover(3, 0.6)
    fiber, dec = circle_setup()
    cover = product_cover(base, fiber)
    T = TrigForm.monomial(2, (0, 0), (0, 1), 0.8) \
        + TrigForm.monomial(2, (1, 0), (0, 1), 0.25) \
        + TrigForm.monomial(2, (-1, 0), (0, 1), 0.25)
    om = from_global_form(T, cover)
    rho, _ = two_subordinations(dec, fiber, rng)
    out = pushforward(om, dec, rho)
    expect = T.fiber_integrate_global([1])
    assert (out.component((0,)) - expect).max_abs() < 1e-10


def test_cocycle_pushes_to_cocycle():
    rng = np.random.default_rng(7)
    base = make_circle_cover(3, 0.6)
    fiber, dec = circle_setup()
    cover = product_cover(base, fiber)
    oc = random_cocycle(rng, cover, 2, 2)
    rho, _ = two_subordinations(dec, fiber, rng)
    assert total_d(pushforward(oc, dec, rho)).max_defect() < 1e-12


@pytest.mark.parametrize("degree", [2, 3])
def test_homotopy_residual_cocycle(degree):
    rng = np.random.default_rng(10 + degree)
    base = make_circle_cover(3, 0.6)
    fiber, dec = circle_setup()
    cover = product_cover(base, fiber)
    oc = random_cocycle(rng, cover, degree, 2)
    rho, rho2 = two_subordinations(dec, fiber, rng)
    assert rho != rho2
    assert homotopy_residual(oc, dec, rho, rho2) < 1e-10


def test_homotopy_residual_with_correction_term():
    om, dec, rho, rho2, _ = _s1_instance(20, 2)
    assert homotopy_residual(om, dec, rho, rho2,
                             omega_is_cocycle=False) < 1e-11


def test_homotopy_requires_positive_output_degree():
    rng = np.random.default_rng(21)
    base = make_circle_cover(3, 0.6)
    fiber, dec = circle_setup()
    cover = product_cover(base, fiber)
    om = random_alternating_cochain(rng, cover, 1, 2)
    rho, rho2 = two_subordinations(dec, fiber, rng)
    with pytest.raises(ValueError):
        pushforward_homotopy(om, dec, rho, rho2)


def test_pushforward_needs_product_cover():
    cover, dec = circle_setup()
    rng = np.random.default_rng(22)
    om = random_alternating_cochain(rng, cover, 1, 1)
    with pytest.raises(ValueError):
        pushforward(om, dec, [0] * len(dec.top_cells))
