import math

import numpy as np
import pytest

from gerbekit.trigform import AffineTorusMap, TrigForm


def rand_form(rng, amb, deg, terms=3):
    f = TrigForm.zero(amb, deg)
    from itertools import combinations
    pool = list(combinations(range(amb), deg))
    for _ in range(terms):
        freq = tuple(int(rng.integers(-2, 3)) for _ in range(amb))
        axes = pool[int(rng.integers(len(pool)))]
        f = f + TrigForm.monomial(amb, freq, axes,
                                  complex(rng.normal(), rng.normal()))
    return f


def test_d_squared_is_zero():
    rng = np.random.default_rng(0)
    for amb in (1, 2, 3):
        for deg in range(amb):
            f = rand_form(rng, amb, deg)
            assert f.d().d().max_abs() < 1e-14


def test_top_degree_d_is_zero():
    f = TrigForm.monomial(2, (1, 2), (0, 1), 1.5)
    assert f.d().is_zero()


def test_wedge_leibniz():
    rng = np.random.default_rng(1)
    a = rand_form(rng, 3, 1)
    b = rand_form(rng, 3, 1)
    lhs = a.wedge(b).d()
    rhs = a.d().wedge(b) - a.wedge(b.d())
    assert (lhs - rhs).max_abs() < 1e-12


def test_wedge_graded_commutativity():
    rng = np.random.default_rng(2)
    a = rand_form(rng, 3, 1)
    b = rand_form(rng, 3, 2)
    # a ^ b = (-1)^{1*2} b ^ a
    assert (a.wedge(b) - b.wedge(a)).max_abs() < 1e-12


def test_integrate_torus_picks_zero_frequency():
    f = TrigForm.monomial(2, (0, 0), (0, 1), 2.5) \
        + TrigForm.monomial(2, (1, 0), (0, 1), 7.0)
    # only the constant term survives; the torus has volume (2 pi)^2
    assert abs(f.integrate_torus() - 2.5 * (2 * math.pi) ** 2) < 1e-12


def test_pullback_composition():
    rng = np.random.default_rng(3)
    f = rand_form(rng, 2, 1)
    m1 = AffineTorusMap([[1, 1], [0, 1]], [0.3, 0.1])
    m2 = AffineTorusMap([[2, 0], [1, 1]], [0.0, 0.5])
    lhs = f.pullback(m1.compose(m2))
    rhs = f.pullback(m1).pullback(m2)
    assert (lhs - rhs).max_abs() < 1e-12


def test_pullback_respects_d():
    rng = np.random.default_rng(4)
    f = rand_form(rng, 2, 1)
    m = AffineTorusMap([[1, 2], [0, 1]], [0.2, 0.7])
    assert (f.d().pullback(m) - f.pullback(m).d()).max_abs() < 1e-12


def test_fiber_integrate_global_stokes():
    rng = np.random.default_rng(5)
    f = rand_form(rng, 3, 2)
    lhs = f.d().fiber_integrate_global([2])
    rhs = f.fiber_integrate_global([2]).d()
    # integrating over a closed fiber kills the boundary term
    assert (lhs - rhs).max_abs() < 1e-12


def test_records_roundtrip():
    rng = np.random.default_rng(6)
    f = rand_form(rng, 2, 1)
    g = TrigForm.from_records(2, 1, f.to_records())
    assert (f - g).max_abs() == 0.0
