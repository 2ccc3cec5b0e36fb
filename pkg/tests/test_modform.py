import cmath
import math

import numpy as np
import pytest

from gerbekit.lattice import builtin, roots
from gerbekit.modform import (AutomorphyFamily, GroupElement, ModuliPoint,
                              act, character, cocycle_defect, det_section,
                              eta, eta_multiplier, factor,
                              measure_extra_multiplier, reflection_element,
                              theta1, theta_lattice, theta_lattice_enum,
                              transform_defect)


def eta_series_oracle(tau, n_terms=500):
    """Independent direct summation: eta = sum_n chi12(n) e^{pi i tau n^2/12}
    with chi12 the quadratic character mod 12."""
    total = 0j
    for n in range(1, n_terms + 1):
        r = n % 12
        if r in (1, 11):
            c = 1
        elif r in (5, 7):
            c = -1
        else:
            continue
        total += c * cmath.exp(1j * math.pi * tau * n * n / 12)
    return total


def test_eta_matches_series_oracle():
    for tau in (1j, 0.3 + 1.2j, 2j):
        assert abs(eta(tau) - eta_series_oracle(tau)) < 1e-12


def test_eta_at_i_closed_form():
    # eta(i) = Gamma(1/4) / (2 pi^{3/4})
    ref = math.gamma(0.25) / (2 * math.pi ** 0.75)
    assert abs(eta(1j) - ref) < 1e-12


def test_eta_shift_law():
    tau = 2j
    assert abs(eta(tau + 1) - cmath.exp(1j * math.pi / 12) * eta(tau)) < 1e-12


def test_eta_inversion_law():
    tau = 1 + 3j
    assert abs(eta(-1 / tau) / (cmath.sqrt(-1j * tau) * eta(tau)) - 1) < 1e-10


def test_eta_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        eta(1 - 0.5j)


def test_eta_multiplier_identity_and_generators():
    assert abs(eta_multiplier((1, 0, 0, 1)) - 1) < 1e-12
    assert abs(eta_multiplier((1, 1, 0, 1)) - cmath.exp(1j * math.pi / 12)) < 1e-12


def test_eta_multiplier_is_24th_root_on_random_words():
    rng = np.random.default_rng(0)
    for _ in range(20):
        m = np.eye(2, dtype=np.int64)
        for _ in range(int(rng.integers(1, 6))):
            if rng.random() < 0.5:
                m = m @ np.array([[1, int(rng.integers(-2, 3))], [0, 1]])
            else:
                m = m @ np.array([[0, -1], [1, 0]])
        chi = eta_multiplier((m[0, 0], m[0, 1], m[1, 0], m[1, 1]))
        assert abs(chi ** 24 - 1) < 1e-9


def test_theta1_vanishes_at_origin():
    assert abs(theta1(2j, 0)) < 1e-12
    assert abs(theta1(1.1j, 0)) < 1e-12


def test_det_section_translation_laws():
    tau, u = 2j, 0.3 + 0.1j
    f = det_section
    # u -> u + 1 flips the sign
    assert abs(f(tau, u + 1) + f(tau, u)) < 1e-9
    # u -> u + tau picks up -e^{pi i(-2u - tau)}
    fac = -cmath.exp(1j * math.pi * (-2 * u - tau))
    assert abs(f(tau, u + tau) - fac * f(tau, u)) < 1e-9


def test_det_section_s_transformations():
    df = AutomorphyFamily("det_u1")
    x = ModuliPoint(2j, (0.3 + 0.1j,))
    assert transform_defect("det_section", df, GroupElement.S(1, 1, 0, 1), x) < 1e-9
    assert transform_defect("det_section", df, GroupElement.S(0, -1, 1, 0), x) < 1e-9


@pytest.fixture(scope="module")
def e8():
    return builtin("e8")


@pytest.fixture(scope="module")
def e8e8():
    return builtin("e8e8")


def test_theta_e8_q_expansion(e8):
    # Theta(iy) = 1 + 240 q + 2160 q^2 + O(q^3) at q = e^{-2 pi y}
    q = cmath.exp(2j * math.pi * 5j)
    got = theta_lattice(e8, 5j, [0] * 8)
    assert abs(got - (1 + 240 * q + 2160 * q * q)) < 1e-11


def test_theta_block_factorization(e8, e8e8):
    v = theta_lattice(e8, 1.7j, [0] * 8)
    assert abs(theta_lattice(e8e8, 1.7j, [0] * 16) - v * v) < 1e-10


def test_theta_against_enumeration(e8):
    rng = np.random.default_rng(1)
    z = list(0.3 * rng.random(8) + 0.2j * (rng.random(8) - 0.5))
    got = theta_lattice(e8, 1.5j, z)
    ref = theta_lattice_enum(e8, 1.5j, z, max_norm=14)
    assert abs(got - ref) < 1e-10


def test_theta_weyl_invariance(e8):
    rng = np.random.default_rng(2)
    z = rng.random(8) * 0.3 + 0.2j * rng.random(8)
    w = reflection_element(e8, roots(e8)[7])
    M = np.array(w.data)
    assert abs(theta_lattice(e8, 1.3j, list(z))
               - theta_lattice(e8, 1.3j, list(M @ z))) < 1e-10


def test_theta_d16_against_enumeration():
    d16 = builtin("d16plus")
    rng = np.random.default_rng(3)
    z = list(0.2 * rng.random(16))
    got = theta_lattice(d16, 1.9j, z)
    ref = theta_lattice_enum(d16, 1.9j, z, max_norm=4)
    assert abs(got - ref) < 1e-8


def test_character_e8_quotient_has_dimension_coefficient(e8):
    # q-expansion of Theta_E8 / eta^8 = q^{-1/3}(1 + 248 q + O(q^2))
    tau = 2j
    q = math.exp(-4 * math.pi)
    val = theta_lattice(e8, tau, [0] * 8) / eta(tau) ** 8
    val *= q ** (1.0 / 3.0)
    assert abs(val - (1 + 248 * q)) < 1e-7


def test_character_definition(e8e8):
    tau = 2j
    got = character(e8e8, tau, [0] * 16)
    ref = theta_lattice(e8e8, tau, [0] * 16) / eta(tau) ** 16
    assert abs(got - ref) < 1e-12


def test_character_rank_check(e8):
    with pytest.raises(ValueError):
        character(e8, 2j, [0] * 8)


def test_character_transforms_under_translations(e8e8):
    rng = np.random.default_rng(4)
    fam = AutomorphyFamily("char", e8e8)
    rts = roots(e8e8)
    for seed in range(3):
        z = tuple(0.3 * (rng.random(16) - 0.5) + 0.3j * (rng.random(16) - 0.5))
        x = ModuliPoint(1.5j, z)
        g = GroupElement.T(rts[int(rng.integers(len(rts)))],
                           rts[int(rng.integers(len(rts)))])
        assert transform_defect("character", fam, g, x) < 1e-8


def test_character_weyl_invariance(e8e8):
    fam = AutomorphyFamily("char", e8e8)
    rng = np.random.default_rng(5)
    z = tuple(0.3 * rng.random(16) + 0.2j * rng.random(16))
    x = ModuliPoint(1.1j, z)
    w = reflection_element(e8e8, roots(e8e8)[33])
    assert transform_defect("character", fam, w, x) < 1e-10
    assert factor(fam, w, x) == 1


def test_adjoint_factor_is_char_power_30(e8e8):
    rng = np.random.default_rng(6)
    fam = AutomorphyFamily("char", e8e8)
    adf = AutomorphyFamily("anomaly_ad", e8e8)
    rts = roots(e8e8)
    g = GroupElement.T(rts[3], rts[90])
    s = GroupElement.S(2, 1, 1, 1)
    for elem in (g, s):
        vals = []
        for _ in range(3):
            z = tuple(0.3 * (rng.random(16) - 0.5)
                      + 0.2j * (rng.random(16) - 0.5))
            x = ModuliPoint(0.1 + 1.2j, z)
            vals.append(factor(adf, elem, x) / factor(fam, elem, x) ** 30)
        assert max(abs(v - vals[0]) for v in vals) < 1e-8
        assert abs(vals[0] - 1) < 1e-8


def test_rho_and_ad_chi_powers(e8e8):
    # the chi-dressed families differ from the anomaly-normalized ones by
    # the documented eta-multiplier powers on S-generators
    x = ModuliPoint(1.3j, tuple([0.1 + 0.05j] * 16))
    s = GroupElement.S(0, -1, 1, 0)
    chi = eta_multiplier((0, -1, 1, 0))
    ad = AutomorphyFamily("ad", e8e8)
    aad = AutomorphyFamily("anomaly_ad", e8e8)
    assert abs(factor(ad, s, x) - chi ** 496 * factor(aad, s, x)) < 1e-9
    rho = AutomorphyFamily("rho", e8e8)
    arho = AutomorphyFamily("anomaly_rho", e8e8)
    assert abs(factor(rho, s, x) - chi ** 16 * factor(arho, s, x)) < 1e-9


def test_cocycle_defects(e8e8):
    rng = np.random.default_rng(7)
    fam = AutomorphyFamily("char", e8e8)
    rts = roots(e8e8)
    z = tuple(0.3 * (rng.random(16) - 0.5) + 0.2j * (rng.random(16) - 0.5))
    x = ModuliPoint(1.1j, z)
    g = GroupElement.T(rts[11], rts[200])
    h = GroupElement.T(rts[5], rts[310])
    assert cocycle_defect(fam, g, h, x) < 1e-9
    assert cocycle_defect(fam, GroupElement.S(1, 2, 0, 1),
                          GroupElement.S(1, -3, 0, 1), x) < 1e-12
    assert cocycle_defect(fam, GroupElement.S(2, 1, 1, 1),
                          GroupElement.S(1, 0, 1, 1), x) < 1e-9


def test_word_factor_follows_cocycle_rule(e8e8):
    fam = AutomorphyFamily("char", e8e8)
    rts = roots(e8e8)
    g = GroupElement.T(rts[0], rts[50])
    h = GroupElement.T(rts[1], rts[60])
    x = ModuliPoint(1.2j, tuple([0.05 + 0.02j] * 16))
    word = GroupElement.word([g, h])
    lhs = factor(fam, word, x)
    rhs = factor(fam, g, act(h, x)) * factor(fam, h, x)
    assert abs(lhs - rhs) < 1e-12


def test_act_group_law(e8e8):
    rng = np.random.default_rng(8)
    rts = roots(e8e8)
    x = ModuliPoint(0.2 + 1.4j, tuple([0.1] * 16))
    elems = [GroupElement.S(1, 1, 0, 1),
             GroupElement.T(rts[8], rts[9]),
             reflection_element(e8e8, rts[77])]
    w = GroupElement.word(elems)
    y1 = act(w, x)
    y2 = act(elems[0], act(elems[1], act(elems[2], x)))
    assert abs(y1.tau - y2.tau) < 1e-12
    assert max(abs(a - b) for a, b in zip(y1.z, y2.z)) < 1e-12


def test_act_s_shift():
    x = ModuliPoint(2j, (0.3,))
    y = act(GroupElement.S(1, 1, 0, 1), x)
    assert y.tau == 2j + 1
    assert y.z == (0.3,)


def test_act_rejects_leaving_domain():
    x = ModuliPoint(0.06j, (0.0,) * 16)
    with pytest.raises(ValueError):
        act(GroupElement.S(0, -1, 1, 17), x)


def test_extra_multiplier_under_tau_shift():
    m = measure_extra_multiplier(GroupElement.S(1, 1, 0, 1))
    # oracle: eta^16 contributes the q-exponent 16/24, so the measured
    # constant is e^{-2 pi i 16/24}
    assert abs(m - cmath.exp(-4j * math.pi / 3)) < 1e-9


def test_extra_multiplier_trivial_on_translations(e8e8):
    rts = roots(e8e8)
    m = measure_extra_multiplier(GroupElement.T(rts[2], rts[8]), e8e8)
    assert abs(m - 1) < 1e-9
