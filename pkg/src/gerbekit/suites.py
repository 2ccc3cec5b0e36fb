"""Seeded verification suites: deterministic random instances for every
module's identity battery, each returning (name, max_defect) records.

Instance shapes are fixed: frequencies bounded by 2, at most 3 terms per
component, alternating multi-index data (a value on the sorted tuple,
extended by permutation sign), real-valued forms via Hermitian frequency
pairs.
"""

from __future__ import annotations

import cmath
import math
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import numpy as np

from . import liecs
from .cochain import (DiffCochain, classify_flat_2cocycle, from_global_form,
                      homotopy_k, restrict, total_d)
from .covers import (Cover, make_circle_cover, make_circle_decomposition,
                     make_torus_cover, make_torus_hex_decomposition,
                     product_cover, refine, two_subordinations)
from .fiberint import (homotopy_residual, pushforward,
                       pushforward_commutes_defect)
from .holonomy import holonomy, invariance_defect, nearest_2pi_multiple_defect
from .lattice import (anomaly_exponents, builtin, coxeter_from_roots,
                      enumerate_by_norm, roots, spin16_embedding,
                      spin16_first_series, theta_counts, weight_identity_check,
                      weyl_index_arithmetic)
from .modform import (AutomorphyFamily, GroupElement, ModuliPoint, act,
                      cocycle_defect, character, det_section, eta,
                      eta_multiplier, factor, measure_extra_multiplier,
                      reflection_element, theta1, theta_lattice,
                      theta_lattice_enum, transform_defect)
from .trigform import TrigForm

Check = Tuple[str, float]


# ---------------------------------------------------------------------------
# random instances


def perm_sign(idx: Sequence[int]) -> int:
    inv = sum(1 for i, j in combinations(range(len(idx)), 2)
              if idx[i] > idx[j])
    return -1 if inv % 2 else 1


def random_real_form(rng, ambient_dim: int, degree: int,
                     n_terms: int = 2, max_freq: int = 2) -> TrigForm:
    """A real-valued form: each term paired with its conjugate at -freq."""
    if degree > ambient_dim or degree < 0:
        return TrigForm.zero(ambient_dim, min(max(degree, 0), ambient_dim))
    f = TrigForm.zero(ambient_dim, degree)
    axes_pool = list(combinations(range(ambient_dim), degree))
    for _ in range(n_terms):
        freq = tuple(int(rng.integers(-max_freq, max_freq + 1))
                     for _ in range(ambient_dim))
        axes = axes_pool[int(rng.integers(len(axes_pool)))]
        c = complex(rng.normal(), rng.normal())
        f = f + TrigForm.monomial(ambient_dim, freq, axes, c)
        f = f + TrigForm.monomial(ambient_dim,
                                  tuple(-k for k in freq), axes, c.conjugate())
    return f


def random_alternating_cochain(rng, cover: Cover, degree: int,
                               ambient_dim: int,
                               with_field_strength: bool = True,
                               with_ints: bool = True) -> DiffCochain:
    """Random cochain with alternating components over sorted multi-indices."""
    comps: Dict[Tuple[int, ...], TrigForm] = {}
    for r in range(1, degree + 2):
        deg = degree - (r - 1)
        if deg > ambient_dim:
            continue
        for base in cover.supports(r):
            f = random_real_form(rng, ambient_dim, deg)
            if f.is_zero():
                continue
            seen = set()
            for perm in _permutations_of(base):
                if perm in seen:
                    continue
                seen.add(perm)
                comps[perm] = perm_sign(perm) * f
    ints: Dict[Tuple[int, ...], int] = {}
    if with_ints and degree + 2 <= len(cover.pieces):
        for base in cover.supports(degree + 2):
            m = int(rng.integers(-2, 3))
            if m == 0:
                continue
            for perm in _permutations_of(base):
                ints[perm] = perm_sign(perm) * m
    H = None
    if with_field_strength and degree + 1 <= ambient_dim:
        H = random_real_form(rng, ambient_dim, degree + 1)
    return DiffCochain(degree, cover, field_strength=H, components=comps,
                       int_components=ints, ambient_dim=ambient_dim)


def _permutations_of(base):
    from itertools import permutations
    return permutations(base)


def random_cocycle(rng, cover: Cover, degree: int, ambient_dim: int,
                   flat: bool = False) -> DiffCochain:
    """from_global_form(T) + d(random flat cochain): a real cocycle."""
    if flat or degree > ambient_dim:
        base = None
    else:
        T = random_real_form(rng, ambient_dim, degree)
        base = from_global_form(T, cover)
    xi = random_alternating_cochain(rng, cover, degree - 1, ambient_dim,
                                   with_field_strength=False)
    out = total_d(xi) if base is None else base + total_d(xi)
    return out


# ---------------------------------------------------------------------------
# suites


def suite_cochain(trials: int, seed: int, tol: float) -> List[Check]:
    rng = np.random.default_rng(seed)
    covers = [("s1", make_circle_cover(4, 0.55), 1),
              ("t2", make_torus_cover(3, 3, 0.55), 2)]
    dd_worst = {}
    hk_worst = {}
    for t in range(trials):
        cname, cover, amb = covers[t % 2]
        degree = 1 + t % 3
        omega = random_alternating_cochain(rng, cover, degree, amb)
        dd = total_d(total_d(omega)).max_defect()
        dd_worst[cname] = max(dd_worst.get(cname, 0.0), dd)
        fine, s1, s2 = refine(cover, 2)
        lhs = total_d(homotopy_k(omega, s1, s2)) + homotopy_k(total_d(omega), s1, s2)
        rhs = restrict(omega, s1) - restrict(omega, s2)
        hk = (lhs - rhs).max_defect()
        hk_worst[cname] = max(hk_worst.get(cname, 0.0), hk)
    out = []
    for cname in ("s1", "t2"):
        out.append((f"dd_zero_{cname}", dd_worst.get(cname, 0.0)))
        out.append((f"homotopy_identity_{cname}", hk_worst.get(cname, 0.0)))
    return out


def circle_setup():
    cover = make_circle_cover(4, 0.7)
    dec = make_circle_decomposition(20)
    return cover, dec


def torus_setup():
    cover = make_torus_cover(3, 3, 0.75)
    dec = make_torus_hex_decomposition(6)
    return cover, dec


def suite_holonomy(trials: int, seed: int, tol: float) -> List[Check]:
    rng = np.random.default_rng(seed)
    cover, dec = circle_setup()
    # (a) the global 1-form alpha dx has holonomy 2 pi alpha
    worst_global = 0.0
    for alpha in (1.0, -0.7, 0.32):
        T = alpha * TrigForm.monomial(1, (0,), (0,), 1.0)
        om = from_global_form(T, cover)
        rho, _ = two_subordinations(dec, cover, rng)
        worst_global = max(worst_global,
                           abs(holonomy(om, dec, rho) - 2 * math.pi * alpha))
    # (b) subordination change shifts holonomy by 2 pi Z
    worst_shift = 0.0
    for _ in range(trials):
        om = random_cocycle(rng, cover, 1, 1)
        rho, rho2 = two_subordinations(dec, cover, rng)
        d = invariance_defect(om, dec, rho, rho2)
        worst_shift = max(worst_shift, nearest_2pi_multiple_defect(d))
    # same on the torus with degree-2 cocycles
    cover2, dec2 = torus_setup()
    worst_t2 = 0.0
    for _ in range(max(trials // 4, 2)):
        om = random_cocycle(rng, cover2, 2, 2)
        rho, rho2 = two_subordinations(dec2, cover2, rng)
        d = invariance_defect(om, dec2, rho, rho2)
        worst_t2 = max(worst_t2, nearest_2pi_multiple_defect(d))
    return [("global_form_holonomy", worst_global),
            ("subordination_shift_s1", worst_shift),
            ("subordination_shift_t2", worst_t2)]


def suite_pushforward(trials: int, seed: int, tol: float) -> List[Check]:
    rng = np.random.default_rng(seed)
    base = make_circle_cover(3, 0.6)
    fiber_s1, dec_s1 = circle_setup()
    fiber_t2, dec_t2 = torus_setup()
    results = {"stokes_s1": 0.0, "stokes_t2": 0.0,
               "cocycle_closed": 0.0, "homotopy_residual": 0.0}
    for t in range(trials):
        # E = S^1
        cover = product_cover(base, fiber_s1)
        degree = 1 + t % 2
        om = random_alternating_cochain(rng, cover, degree, 2)
        rho, rho2 = two_subordinations(dec_s1, fiber_s1, rng)
        results["stokes_s1"] = max(results["stokes_s1"],
                                   pushforward_commutes_defect(om, dec_s1, rho))
        if degree >= 2:
            oc = random_cocycle(rng, cover, degree, 2)
            pushed = pushforward(oc, dec_s1, rho)
            results["cocycle_closed"] = max(results["cocycle_closed"],
                                            total_d(pushed).max_defect())
            results["homotopy_residual"] = max(
                results["homotopy_residual"],
                homotopy_residual(oc, dec_s1, rho, rho2))
    for t in range(max(trials // 2, 2)):
        cover = product_cover(base, fiber_t2)
        om = random_alternating_cochain(rng, cover, 2 + t % 2, 3)
        rho, _ = two_subordinations(dec_t2, fiber_t2, rng)
        results["stokes_t2"] = max(results["stokes_t2"],
                                   pushforward_commutes_defect(om, dec_t2, rho))
    return sorted(results.items())


def random_connection(rng, ambient_dim: int = 3,
                      n_terms: int = 2) -> liecs.LieValuedForm:
    """A random su(2)-valued real 1-form on T^3."""
    basis = liecs.su2_basis()
    terms = {}
    for _ in range(n_terms):
        freq = tuple(int(rng.integers(-1, 2)) for _ in range(ambient_dim))
        axis = (int(rng.integers(ambient_dim)),)
        X = sum(rng.normal() * b for b in basis)
        key = (freq, axis)
        kc = (tuple(-f for f in freq), axis)
        terms[key] = terms.get(key, 0) + X
        terms[kc] = terms.get(kc, 0) + X.conj().T * (-1)
    # make each coefficient pair Hermitian-conjugate so A is real and su(2)
    return liecs.LieValuedForm(ambient_dim, 1, 2, terms)


def random_gauge_map(rng, ambient_dim: int = 3) -> liecs.GaugeMap:
    factors = []
    for _ in range(2):
        theta = rng.normal(size=3)
        U = _su2_exp(theta)
        w = int(rng.integers(1, 3))
        freq = tuple(int(rng.integers(-1, 2)) for _ in range(ambient_dim))
        if all(f == 0 for f in freq):
            freq = (1,) + (0,) * (ambient_dim - 1)
        factors.append(liecs.GaugeFactor(U, (w, -w), freq))
    return liecs.GaugeMap(factors, ambient_dim)


def _su2_exp(theta) -> np.ndarray:
    X = sum(t * b for t, b in zip(theta, liecs.su2_basis()))
    w, V = np.linalg.eig(X)
    return V @ np.diag(np.exp(w)) @ np.linalg.inv(V)


def suite_chernsimons(trials: int, seed: int, tol: float) -> List[Check]:
    rng = np.random.default_rng(seed)
    results = {"d_cs_equals_ff": 0.0, "gauge_variation": 0.0,
               "bianchi": 0.0, "bracket_oracle": 0.0, "mc_flat": 0.0}
    for _ in range(trials):
        A = random_connection(rng)
        F = liecs.curvature(A)
        results["d_cs_equals_ff"] = max(
            results["d_cs_equals_ff"],
            (liecs.cs_form(A).d() - liecs.pairing(F, F)).max_abs())
        results["bianchi"] = max(
            results["bianchi"],
            (F.d() - liecs.graded_bracket(F, A)).max_abs())
        t = random_gauge_map(rng)
        results["gauge_variation"] = max(results["gauge_variation"],
                                         liecs.gauge_variation_defect(A, t))
        theta = t.maurer_cartan()
        results["mc_flat"] = max(
            results["mc_flat"],
            (theta.d() + 0.5 * liecs.graded_bracket(theta, theta)).max_abs())
        B = random_connection(rng)
        br = liecs.graded_bracket(A, B)
        key = next(iter(br.terms)) if br.terms else None
        if key is not None:
            x = rng.random(3)
            vecs = [rng.normal(size=3) for _ in range(2)]
            lhs = br.evaluate(x, vecs)
            rhs = liecs.bracket_oracle_value(A, B, x, vecs)
            results["bracket_oracle"] = max(results["bracket_oracle"],
                                            float(np.max(np.abs(lhs - rhs))))
    return sorted(results.items())


def suite_lattice(trials: int, seed: int, tol: float) -> List[Check]:
    e8 = builtin("e8")
    d16 = builtin("d16plus")
    checks = []
    counts = theta_counts(e8, 4)
    checks.append(("e8_norm2_count", abs(counts.get(2, 0) - 240)))
    checks.append(("e8_norm4_count", abs(counts.get(4, 0) - 2160)))
    checks.append(("e8_even_unimodular",
                   0.0 if e8.is_even() and e8.is_unimodular() else 1.0))
    checks.append(("d16plus_even_unimodular",
                   0.0 if d16.is_even() and d16.is_unimodular() else 1.0))
    checks.append(("coxeter_e8", abs(coxeter_from_roots(e8) - 30)))
    checks.append(("coxeter_d16plus", abs(coxeter_from_roots(d16) - 30)))
    series = spin16_first_series()
    images = {spin16_embedding(v) for v in series}
    ok = len(series) == 112 and len(images) == 112 and all(
        e8.norm(w) == 2 for w in images)
    checks.append(("spin16_series_112", 0.0 if ok else 1.0))
    checks.append(("weight_identity", float(abs(weight_identity_check()))))
    checks.append(("weyl_index_135", abs(weyl_index_arithmetic() - 135)))
    c, x2, n, d = anomaly_exponents("e8e8_adjoint")
    checks.append(("anomaly_adjoint", abs(c * 32 - (n + x2))))
    c, x2, n, d = anomaly_exponents("spin16_rho")
    checks.append(("anomaly_rho", abs(c * 32 - (n + x2))))
    return checks


def modular_sample_points(L, rng, count: int = 3):
    taus = [1.1j, 0.3 + 1.7j, -0.4 + 0.9j]
    pts = []
    for i in range(count):
        z = tuple(0.4 * (rng.random(L.rank) - 0.5)
                  + 0.4j * (rng.random(L.rank) - 0.5))
        pts.append(ModuliPoint(taus[i % len(taus)], z))
    return pts


def suite_modular(trials: int, seed: int, tol: float) -> List[Check]:
    rng = np.random.default_rng(seed)
    checks: List[Check] = []
    # eta laws
    checks.append(("eta_shift", abs(eta(2j + 1)
                                    - cmath.exp(1j * math.pi / 12) * eta(2j))))
    t = 1 + 3j
    checks.append(("eta_inversion",
                   abs(eta(-1 / t) / (cmath.sqrt(-1j * t) * eta(t)) - 1)))
    # chi closure
    worst = 0.0
    for _ in range(max(trials, 20)):
        m = np.eye(2, dtype=np.int64)
        for _ in range(int(rng.integers(1, 5))):
            if rng.random() < 0.5:
                g = np.array([[1, int(rng.integers(-2, 3))], [0, 1]])
            else:
                g = np.array([[0, -1], [1, 0]])
            m = m @ g
        try:
            chi = eta_multiplier((m[0, 0], m[0, 1], m[1, 0], m[1, 1]))
            worst = max(worst, abs(chi ** 24 - 1))
        except ValueError:
            worst = max(worst, 1.0)
    checks.append(("chi_24th_root", worst))
    # twisted theta
    checks.append(("theta1_odd", abs(theta1(2j, 0))))
    worst1 = worst2 = 0.0
    df = AutomorphyFamily("det_u1")
    for _ in range(5):
        tau = complex(0.4 * (rng.random() - 0.5), 1.0 + rng.random())
        u = complex(0.4 * (rng.random() - 0.5), 0.3 * (rng.random() - 0.5))
        x = ModuliPoint(tau, (u,))
        worst1 = max(worst1, transform_defect(
            "det_section", df, GroupElement.T([1], [0]), x))
        worst2 = max(worst2, transform_defect(
            "det_section", df, GroupElement.T([0], [1]), x))
    checks.append(("det_section_q1_law", worst1))
    checks.append(("det_section_q2_law", worst2))
    # theta series
    e8 = builtin("e8")
    e8e8 = builtin("e8e8")
    v = theta_lattice(e8, 1.7j, [0] * 8)
    checks.append(("theta_e8e8_square",
                   abs(theta_lattice(e8e8, 1.7j, [0] * 16) - v * v)))
    z8 = list(0.3 * rng.random(8))
    checks.append(("theta_vs_enumeration",
                   abs(theta_lattice(e8, 1.5j, z8)
                       - theta_lattice_enum(e8, 1.5j, z8, max_norm=14))))
    # character transformation under T and W generators
    rts = roots(e8e8)
    fam = AutomorphyFamily("char", e8e8)
    worst_t = worst_w = worst_ratio = worst_coc = 0.0
    adf = AutomorphyFamily("anomaly_ad", e8e8)
    for x in modular_sample_points(e8e8, rng, 3):
        q1 = rts[int(rng.integers(len(rts)))]
        q2 = rts[int(rng.integers(len(rts)))]
        g = GroupElement.T(q1, q2)
        w = reflection_element(e8e8, rts[int(rng.integers(len(rts)))])
        worst_t = max(worst_t, transform_defect("character", fam, g, x))
        worst_w = max(worst_w, transform_defect("character", fam, w, x))
        h = GroupElement.T(rts[int(rng.integers(len(rts)))],
                           rts[int(rng.integers(len(rts)))])
        worst_coc = max(worst_coc, cocycle_defect(fam, g, h, x))
        ref = factor(adf, g, x) / factor(fam, g, x) ** 30
        worst_ratio = max(worst_ratio, abs(ref - 1))
    checks.append(("character_T_law", worst_t))
    checks.append(("character_W_law", worst_w))
    checks.append(("char_cocycle_TT", worst_coc))
    checks.append(("ad_is_char_pow30", worst_ratio))
    # the measured extra multiplier under tau -> tau + 1
    m = measure_extra_multiplier(GroupElement.S(1, 1, 0, 1))
    checks.append(("extra_multiplier_eta16",
                   abs(m - cmath.exp(-4j * math.pi / 3))))
    return checks


def suite_crossmodule(trials: int, seed: int, tol: float) -> List[Check]:
    """Flat degree-2 holonomy classes on T^2: coboundary invariance."""
    rng = np.random.default_rng(seed)
    cover, dec = torus_setup()
    rho, _ = two_subordinations(dec, cover, rng)
    worst = 0.0
    for _ in range(trials):
        h = float(rng.uniform(0.3, 5.5))
        T = (h / (4 * math.pi ** 2)) * TrigForm.monomial(2, (0, 0), (0, 1), 1.0)
        om = DiffCochain(2, cover,
                         components={(a,): T for a in cover.indices},
                         ambient_dim=2)
        cls = classify_flat_2cocycle(om, dec, rho)
        xi = random_alternating_cochain(rng, cover, 1, 2,
                                        with_field_strength=False)
        cls2 = classify_flat_2cocycle(om + total_d(xi), dec, rho)
        delta = abs(cls - cls2)
        worst = max(worst, min(delta, abs(delta - 2 * math.pi)))
    return [("flat_class_coboundary_invariance", worst)]


SUITES = {
    "cochain": suite_cochain,
    "holonomy": suite_holonomy,
    "pushforward": suite_pushforward,
    "chernsimons": suite_chernsimons,
    "lattice": suite_lattice,
    "modular": suite_modular,
    "crossmodule": suite_crossmodule,
}
