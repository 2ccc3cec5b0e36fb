"""Modular building blocks: Dedekind eta, the twisted theta function,
lattice theta series, the rank-16 character function, the group of
(tau, z) transformations, and the automorphy-factor families attached to
the character, determinant, adjoint and rho fibrations.

Conventions.  Points live on H x C^rank with z written in lattice-basis
coordinates; the pairing is (z, w) = z^T G w for the Gram matrix G.  All
square roots take the principal branch, with c*tau + d evaluated in the
upper half-plane; the eta multiplier is measured numerically and checked
to be a 24th root of unity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .lattice import IntegralLattice, builtin, enumerate_by_norm

TAU_MIN = 0.05
TWO_PI_I = 2j * math.pi
PI_I = 1j * math.pi


def _check_tau(tau: complex) -> None:
    if tau.imag < TAU_MIN:
        raise ValueError(f"Im tau = {tau.imag} below the admissible minimum {TAU_MIN}")


# ---------------------------------------------------------------------------
# eta and its multiplier


def _eta_with_terms(tau: complex, tol: float = 1e-12) -> Tuple[complex, int]:
    _check_tau(tau)
    if tol <= 0:
        raise ValueError("tol must be positive")
    q = cmath.exp(TWO_PI_I * tau)
    aq = abs(q)
    # tail of log: sum_{m>M} |q|^m / (1 - |q|) < tol
    M = max(int(math.log(tol * (1 - aq)) / math.log(aq)) + 2, 4)
    prod = 1.0 + 0j
    qm = 1.0 + 0j
    for _ in range(M):
        qm *= q
        prod *= 1 - qm
    return cmath.exp(PI_I * tau / 12) * prod, M


def eta(tau: complex, tol: float = 1e-12) -> complex:
    """Dedekind eta, e^{pi i tau/12} prod_{m>=1} (1 - e^{2 pi i m tau})."""
    return _eta_with_terms(tau, tol)[0]


def _mobius(m: Sequence[int], tau: complex) -> complex:
    a, b, c, d = m
    return (a * tau + b) / (c * tau + d)


def eta_multiplier(m: Sequence[int], tol: float = 1e-9) -> complex:
    """The unit constant chi(m) in eta(m tau) = chi(m) sqrt(c tau + d) eta(tau).

    Measured numerically with the principal square root; asserted to be a
    24th root of unity and independent of the sample point.
    """
    a, b, c, d = (int(x) for x in m)
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    vals = []
    for tau0 in (1.3j, 0.2 + 1.1j):
        chi = eta(_mobius((a, b, c, d), tau0)) / (
            cmath.sqrt(c * tau0 + d) * eta(tau0))
        vals.append(chi)
    if abs(vals[0] - vals[1]) > tol:
        raise ValueError("eta multiplier not constant across sample points")
    chi = vals[0]
    if abs(chi ** 24 - 1) > tol:
        raise ValueError("eta multiplier is not a 24th root of unity "
                         "(branch inconsistency)")
    return chi


# ---------------------------------------------------------------------------
# the twisted theta function


def _theta1_with_terms(tau: complex, u: complex,
                       tol: float = 1e-12) -> Tuple[complex, int]:
    """sum_n e^{2 pi i (u - 1/2)(n + 1/2) + pi i tau (n + 1/2)^2}."""
    _check_tau(tau)
    y = tau.imag
    # magnitude e^{-pi y (n + 1/2 + Im(u)/y)^2 + pi Im(u)^2 / y}
    shift = u.imag / y
    extra = math.pi * u.imag ** 2 / y
    N = int(math.sqrt((math.log(1 / tol) + extra + 1) / (math.pi * y))) + 3
    c0 = int(round(-0.5 - shift))
    total = 0j
    for n in range(c0 - N, c0 + N + 1):
        h = n + 0.5
        total += cmath.exp(TWO_PI_I * (u - 0.5) * h + PI_I * tau * h * h)
    return total, 2 * N + 1


def theta1(tau: complex, u: complex, tol: float = 1e-12) -> complex:
    return _theta1_with_terms(tau, u, tol)[0]


def det_section(tau: complex, u: complex, tol: float = 1e-12) -> complex:
    """The flat-determinant section f = theta1 / eta."""
    return theta1(tau, u, tol) / eta(tau, tol)


# ---------------------------------------------------------------------------
# lattice theta series


def _coset_factor_sums(tau: complex, w: complex, c: float,
                       tol: float) -> Tuple[complex, complex, int]:
    """(A, B, terms): A = sum_n q-term, B = same with (-1)^n, over n + c."""
    y = tau.imag
    shift = w.imag / y
    extra = math.pi * w.imag ** 2 / y
    N = int(math.sqrt((math.log(1 / tol) + extra + 1) / (math.pi * y))) + 3
    c0 = int(round(-c - shift))
    A = 0j
    B = 0j
    for n in range(c0 - N, c0 + N + 1):
        h = n + c
        t = cmath.exp(TWO_PI_I * w * h + PI_I * tau * h * h)
        A += t
        B += t if n % 2 == 0 else -t
    return A, B, 2 * N + 1


def _theta_dn_plus(tau: complex, w: Sequence[complex],
                   tol: float) -> Tuple[complex, int]:
    """Theta of D_n^+ (n in 8Z) at ambient coordinates w, via the parity
    projector over the two cosets Z^n and (Z + 1/2)^n."""
    n = len(w)
    terms = 0
    total = 0j
    ftol = tol ** (1.0 / n) * 1e-3
    for c in (0.0, 0.5):
        pa = 1.0 + 0j
        pb = 1.0 + 0j
        for wj in w:
            A, B, t = _coset_factor_sums(tau, wj, c, ftol)
            pa *= A
            pb *= B
            terms += t
        total += 0.5 * (pa + pb)
    return total, terms


def _ambient_z(L: IntegralLattice, z: Sequence[complex]) -> List[complex]:
    out = [0j] * L.ambient
    for zi, row in zip(z, L.basis):
        for a in range(L.ambient):
            out[a] += zi * float(row[a])
    return out


def _theta_with_terms(L: IntegralLattice, tau: complex, z: Sequence[complex],
                      tol: float = 1e-12) -> Tuple[complex, int]:
    _check_tau(tau)
    z = list(z)
    if len(z) != L.rank:
        raise ValueError(f"z needs {L.rank} coordinates, got {len(z)}")
    if L.name in ("e8", "d16plus"):
        return _theta_dn_plus(tau, _ambient_z(L, z), tol)
    if L.name == "e8e8":
        w = _ambient_z(L, z)
        t1, n1 = _theta_dn_plus(tau, w[:8], tol)
        t2, n2 = _theta_dn_plus(tau, w[8:], tol)
        return t1 * t2, n1 + n2
    return _theta_enum(L, tau, z, tol)


def theta_lattice(L: IntegralLattice, tau: complex, z: Sequence[complex],
                  tol: float = 1e-12) -> complex:
    """Theta_Lambda(tau, z) = sum_gamma e^{pi i (2 (z, gamma) + tau (gamma, gamma))}.

    z in lattice-basis coordinates; built-in even unimodular lattices use a
    per-coordinate coset factorization, others a bounded enumeration.
    """
    return _theta_with_terms(L, tau, z, tol)[0]


ENUM_NORM_BUDGET = 60


def _theta_enum(L: IntegralLattice, tau: complex, z: Sequence[complex],
                tol: float = 1e-12, max_norm: Optional[int] = None) -> Tuple[complex, int]:
    """Direct enumeration evaluator (also the oracle for the fast path).

    Recenters the real part of z modulo the lattice (a symmetry of the sum)
    and bounds the tail by the Gaussian decay of e^{-pi Im(tau) (g,g)}.
    """
    G = np.array([[float(x) for x in row] for row in L.gram_exact])
    zv = np.array(z, dtype=complex)
    zv = zv - np.round(zv.real)
    y = tau.imag
    if max_norm is None:
        # |term| <= e^{2 pi |Im(z,g)| - pi y (g,g)} and |(z,g)| <= |z|_G sqrt((g,g))
        znorm = math.sqrt(abs(np.imag(zv) @ G @ np.imag(zv)))
        # solve pi y R - 2 pi znorm sqrt(R) = log(1/tol) + margin
        s = (2 * math.pi * znorm + math.sqrt(
            (2 * math.pi * znorm) ** 2 + 4 * math.pi * y * (math.log(1 / tol) + 5))) / (
            2 * math.pi * y)
        R = int(math.ceil(s * s)) + 2
        if R > ENUM_NORM_BUDGET:
            raise ValueError(
                f"enumeration cutoff {R} exceeds budget {ENUM_NORM_BUDGET}; "
                "reduce |Im z| or increase Im tau")
        max_norm = R
    shells = enumerate_by_norm(L, max_norm)
    total = 0j
    terms = 0
    for nrm, vecs in shells.items():
        for g in vecs:
            gv = np.array(g, dtype=float)
            pair = complex(zv @ (G @ gv))
            total += cmath.exp(PI_I * (2 * pair + tau * nrm))
            terms += 1
    return total, terms


def theta_lattice_enum(L: IntegralLattice, tau: complex, z: Sequence[complex],
                       tol: float = 1e-12,
                       max_norm: Optional[int] = None) -> complex:
    return _theta_enum(L, tau, z, tol, max_norm)[0]


def character(L: IntegralLattice, tau: complex, z: Sequence[complex],
              tol: float = 1e-12) -> complex:
    """The rank-16 character B = Theta_Lambda / eta^16."""
    if L.rank != 16:
        raise ValueError("character needs a rank-16 lattice")
    return theta_lattice(L, tau, z, tol) / eta(tau, tol) ** 16


# ---------------------------------------------------------------------------
# the transformation group on (tau, z)


@dataclass(frozen=True)
class ModuliPoint:
    tau: complex
    z: Tuple[complex, ...]

    def __post_init__(self):
        _check_tau(self.tau)


class GroupElement:
    """S (Mobius), T (lattice translation), W (isometry), or a word.

    Words compose left-to-right as written and act right-to-left:
    word([g, h]) acts as x -> g(h(x)).
    """

    def __init__(self, kind: str, data):
        self.kind = kind
        self.data = data

    @staticmethod
    def S(a: int, b: int, c: int, d: int) -> "GroupElement":
        if a * d - b * c != 1:
            raise ValueError("S element must be unimodular")
        return GroupElement("S", (a, b, c, d))

    @staticmethod
    def T(q1: Sequence[int], q2: Sequence[int]) -> "GroupElement":
        return GroupElement("T", (tuple(int(x) for x in q1),
                                  tuple(int(x) for x in q2)))

    @staticmethod
    def W(matrix: Sequence[Sequence[int]]) -> "GroupElement":
        return GroupElement("W", tuple(tuple(int(x) for x in row)
                                       for row in matrix))

    @staticmethod
    def word(elems: Sequence["GroupElement"]) -> "GroupElement":
        return GroupElement("word", tuple(elems))

    @staticmethod
    def identity() -> "GroupElement":
        return GroupElement.S(1, 0, 0, 1)

    def __repr__(self):
        return f"GroupElement({self.kind}, {self.data})"


def reflection_element(L: IntegralLattice, root: Sequence[int]) -> GroupElement:
    """The Weyl reflection in a norm-2 root, as a matrix on basis coords."""
    if L.norm(root) != 2:
        raise ValueError("reflection needs a norm-2 root")
    r = np.array(root, dtype=np.int64)
    G = L.gram.astype(np.int64)
    M = np.eye(L.rank, dtype=np.int64) - np.outer(r, G @ r)
    if not np.array_equal(M.T @ G @ M, G):
        raise ValueError("reflection does not preserve the pairing")
    return GroupElement.W(M.tolist())


def _check_isometry(L: IntegralLattice, mat) -> np.ndarray:
    M = np.array(mat, dtype=np.int64)
    G = L.gram.astype(np.int64)
    if not np.array_equal(M.T @ G @ M, G):
        raise ValueError("W matrix does not preserve the Gram matrix")
    return M


def act(g: GroupElement, x: ModuliPoint,
        L: Optional[IntegralLattice] = None) -> ModuliPoint:
    """The group action on (tau, z); words act right-to-left."""
    if g.kind == "word":
        for e in reversed(g.data):
            x = act(e, x, L)
        return x
    tau, z = x.tau, np.array(x.z, dtype=complex)
    if g.kind == "S":
        a, b, c, d = g.data
        denom = c * tau + d
        new_tau = (a * tau + b) / denom
        if new_tau.imag < TAU_MIN:
            raise ValueError(
                f"image Im tau = {new_tau.imag} leaves the admissible domain")
        return ModuliPoint(new_tau, tuple(z / denom))
    if g.kind == "T":
        q1, q2 = g.data
        if len(q1) != len(z) or len(q2) != len(z):
            raise ValueError("translation rank mismatch")
        new_z = z + np.array(q1, dtype=float) + tau * np.array(q2, dtype=float)
        return ModuliPoint(tau, tuple(new_z))
    if g.kind == "W":
        M = (np.array(g.data, dtype=np.int64) if L is None
             else _check_isometry(L, g.data))
        return ModuliPoint(tau, tuple(M @ z))
    raise ValueError(f"unknown group element kind {g.kind}")


# ---------------------------------------------------------------------------
# automorphy-factor families


@dataclass(frozen=True)
class AutomorphyFamily:
    """One of the factor families char / det_u1 / ad / rho / anomaly_ad /
    anomaly_rho over a fixed lattice (det_u1 uses the scalar model)."""
    name: str
    lattice: Optional[IntegralLattice] = None

    def __post_init__(self):
        if self.name not in ("char", "det_u1", "ad", "rho",
                             "anomaly_ad", "anomaly_rho"):
            raise ValueError(f"unknown family {self.name}")
        if self.name == "det_u1":
            if self.lattice is not None:
                raise ValueError("det_u1 is the scalar model; no lattice")
        elif self.lattice is None:
            raise ValueError(f"family {self.name} needs a lattice")


COXETER_EXPONENT = 30          # the common Coxeter number c_G
ADJOINT_DIMENSION = 496        # dim of either rank-16 gauge group
RHO_CHI_POWER = 16

_CG = {"char": 1, "ad": COXETER_EXPONENT, "rho": 1,
       "anomaly_ad": COXETER_EXPONENT, "anomaly_rho": 1}
_CHI_POWER = {"char": 0, "ad": ADJOINT_DIMENSION, "rho": RHO_CHI_POWER,
              "anomaly_ad": 0, "anomaly_rho": 0}


def _pair(L: IntegralLattice, u, v) -> complex:
    G = np.array([[float(x) for x in row] for row in L.gram_exact])
    return complex(np.asarray(u, dtype=complex) @ G @ np.asarray(v, dtype=complex))


def factor(family: AutomorphyFamily, g: GroupElement, x: ModuliPoint) -> complex:
    """phi_g(x) for the family; words via phi_{gh}(x) = phi_g(hx) phi_h(x)."""
    if g.kind == "word":
        if not g.data:
            return 1.0 + 0j
        head, rest = g.data[0], GroupElement.word(g.data[1:])
        return factor(family, head, act(rest, x)) * factor(family, rest, x)
    tau, z = x.tau, x.z
    if family.name == "det_u1":
        if len(z) != 1:
            raise ValueError("det_u1 expects a single coordinate u")
        u = z[0]
        if g.kind == "T":
            (q1,), (q2,) = g.data
            return ((-1) ** (q1 + q2)) * cmath.exp(
                PI_I * (-2 * u * q2 - tau * q2 * q2))
        if g.kind == "S":
            a, b, c, d = g.data
            return eta_multiplier(g.data) ** 2 * cmath.exp(
                PI_I * c * u * u / (c * tau + d))
        if g.kind == "W":
            return 1.0 + 0j
        raise ValueError(f"unknown kind {g.kind}")
    L = family.lattice
    cg = _CG[family.name]
    chi_pow = _CHI_POWER[family.name]
    if g.kind == "T":
        q1, q2 = g.data
        if len(q2) != L.rank:
            raise ValueError("family/lattice rank mismatch")
        return cmath.exp(cg * PI_I * (-2 * _pair(L, z, q2)
                                      - tau * _pair(L, q2, q2)))
    if g.kind == "S":
        a, b, c, d = g.data
        val = cmath.exp(cg * PI_I * c * _pair(L, z, z) / (c * tau + d))
        if chi_pow:
            val *= eta_multiplier(g.data) ** chi_pow
        return val
    if g.kind == "W":
        _check_isometry(L, g.data)
        return 1.0 + 0j
    raise ValueError(f"unknown kind {g.kind}")


def _compose_generators(g: GroupElement, h: GroupElement) -> GroupElement:
    """Closed-form product of two like generators, else raises."""
    if g.kind == "S" and h.kind == "S":
        a, b, c, d = g.data
        e, f, p, q = h.data
        return GroupElement.S(a * e + b * p, a * f + b * q,
                              c * e + d * p, c * f + d * q)
    if g.kind == "T" and h.kind == "T":
        q1, q2 = g.data
        r1, r2 = h.data
        return GroupElement.T([a + b for a, b in zip(q1, r1)],
                              [a + b for a, b in zip(q2, r2)])
    if g.kind == "W" and h.kind == "W":
        M = np.array(g.data, dtype=np.int64) @ np.array(h.data, dtype=np.int64)
        return GroupElement.W(M.tolist())
    raise ValueError("no closed-form composite for these kinds")


def cocycle_defect(family: AutomorphyFamily, g: GroupElement,
                   h: GroupElement, x: ModuliPoint) -> float:
    """Relative size of phi_{gh}(x) - phi_g(h x) phi_h(x) for generators
    with a closed-form composite (the factors themselves can be huge)."""
    gh = _compose_generators(g, h)
    lhs = factor(family, gh, x)
    rhs = factor(family, g, act(h, x)) * factor(family, h, x)
    return abs(lhs - rhs) / max(abs(lhs), 1.0)


# ---------------------------------------------------------------------------
# transformation checks


def _eval_func(func: str, family: AutomorphyFamily, x: ModuliPoint) -> complex:
    if func == "character":
        return character(family.lattice, x.tau, x.z)
    if func == "det_section":
        if len(x.z) != 1:
            raise ValueError("det_section expects the scalar model")
        return det_section(x.tau, x.z[0])
    raise ValueError(f"unknown function {func}")


def transform_defect(func: str, family: AutomorphyFamily, g: GroupElement,
                     x: ModuliPoint) -> float:
    """Relative defect |F(gx) - phi_g(x) F(x)| / |F(x)|."""
    F = _eval_func(func, family, x)
    if abs(F) < 1e-12:
        raise ValueError("sample point too close to a zero of the section")
    Fg = _eval_func(func, family, act(g, x))
    return abs(Fg - factor(family, g, x) * F) / abs(F)


def measure_extra_multiplier(g: GroupElement,
                             L: Optional[IntegralLattice] = None,
                             tol: float = 1e-8) -> complex:
    """The constant F(gx) / (phi^ch_g(x) F(x)) for the rank-16 character,
    measured at 10 sample points and asserted constant."""
    if L is None:
        L = builtin("e8e8")
    fam = AutomorphyFamily("char", L)
    rng = np.random.default_rng(20260824)
    vals = []
    for _ in range(10):
        tau = complex(0.6 * (rng.random() - 0.5), 0.9 + 0.9 * rng.random())
        z = tuple(0.3 * (rng.random(L.rank) - 0.5)
                  + 0.3j * (rng.random(L.rank) - 0.5))
        x = ModuliPoint(tau, z)
        F = character(L, tau, z)
        Fg = _eval_func("character", fam, act(g, x))
        vals.append(Fg / (factor(fam, g, x) * F))
    spread = max(abs(v - vals[0]) for v in vals)
    if spread > tol:
        raise ValueError(f"extra multiplier is not constant (spread {spread})")
    return vals[0]
