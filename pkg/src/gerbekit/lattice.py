"""Even unimodular lattices (E8, E8+E8, D16+), root systems, Weyl
reflections, bounded-norm vector enumeration, and the root/weight/index
arithmetic used by the modular-form checks.

Lattices are stored through an explicit basis (rows, exact rational
entries) in an ambient coordinate space, together with a pairing scale:
<u, v> = scale * (x(u) . x(v)).  The three built-in unimodular lattices
use scale 1; the Spin(16) coroot lattice uses half-coordinates with
scale 2, which reproduces the identity 2 sum_i x_i(a) x_i(b) = <a, b>.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np


class IntegralLattice:
    """A positive-definite lattice given by a rational basis and pairing scale."""

    def __init__(self, name: str, basis: Sequence[Sequence[Fraction]],
                 scale: int = 1):
        self.name = name
        self.basis = [[Fraction(x) for x in row] for row in basis]
        self.rank = len(self.basis)
        self.ambient = len(self.basis[0])
        self.scale = scale
        g = [[scale * sum(a * b for a, b in zip(u, v)) for v in self.basis]
             for u in self.basis]
        self.gram_exact = g
        if all(x.denominator == 1 for row in g for x in row):
            self.gram = np.array([[int(x) for x in row] for row in g],
                                 dtype=np.int64)
        else:
            self.gram = np.array([[float(x) for x in row] for row in g])

    # -- pairing ----------------------------------------------------------

    def inner(self, u: Sequence[int], v: Sequence[int]) -> Fraction:
        g = self.gram_exact
        return sum(int(u[i]) * g[i][j] * int(v[j])
                   for i in range(self.rank) for j in range(self.rank))

    def norm(self, v: Sequence[int]) -> Fraction:
        return self.inner(v, v)

    def coordinates(self, v: Sequence[int]) -> List[Fraction]:
        """Ambient coordinates of the lattice vector with basis coefficients v."""
        out = [Fraction(0)] * self.ambient
        for c, row in zip(v, self.basis):
            for a in range(self.ambient):
                out[a] += int(c) * row[a]
        return out

    # -- structural checks ------------------------------------------------

    def determinant(self) -> Fraction:
        return _exact_det(self.gram_exact)

    def is_even(self) -> bool:
        # evenness of the quadratic form is equivalent to even Gram diagonal
        # (integer Gram assumed)
        return all(self.gram_exact[i][i] % 2 == 0 for i in range(self.rank))

    def is_unimodular(self) -> bool:
        return self.determinant() == 1


def _exact_det(g: List[List[Fraction]]) -> Fraction:
    n = len(g)
    m = [[Fraction(x) for x in row] for row in g]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


# ---------------------------------------------------------------------------
# built-in lattices


def _half(n: int) -> List[Fraction]:
    return [Fraction(1, 2)] * n


def _unit_diff(n: int, i: int) -> List[Fraction]:
    """e_i - e_{i+1} in an ambient of dimension n (0-based i)."""
    row = [Fraction(0)] * n
    row[i] = Fraction(1)
    row[i + 1] = Fraction(-1)
    return row


def _dn_plus_basis(n: int) -> List[List[Fraction]]:
    """Basis of D_n^+ = D_n + Z s with s = (1/2, ..., 1/2).

    The glue vector s replaces the generator e_1 - e_2 of D_n (whose
    coefficient in the expansion of 2s is odd, so the span is the full
    union of D_n and D_n + s).
    """
    rows = [_half(n)]
    for i in range(1, n - 1):
        rows.append(_unit_diff(n, i))
    last = [Fraction(0)] * n
    last[n - 2] = Fraction(1)
    last[n - 1] = Fraction(1)
    rows.append(last)
    return rows


def builtin(name: str) -> IntegralLattice:
    if name == "e8":
        return IntegralLattice("e8", _dn_plus_basis(8))
    if name == "d16plus":
        return IntegralLattice("d16plus", _dn_plus_basis(16))
    if name == "e8e8":
        b8 = _dn_plus_basis(8)
        rows = []
        for row in b8:
            rows.append(list(row) + [Fraction(0)] * 8)
        for row in b8:
            rows.append([Fraction(0)] * 8 + list(row))
        return IntegralLattice("e8e8", rows)
    if name == "spin16_coroot":
        # coroots (1/2)(+-x_i +- x_j) with pairing <a,b> = 2 x(a).x(b)
        rows = []
        for i in range(7):
            rows.append([x / 2 for x in _unit_diff(8, i)])
        last = [Fraction(0)] * 8
        last[6] = Fraction(1, 2)
        last[7] = Fraction(1, 2)
        rows.append(last)
        return IntegralLattice("spin16_coroot", rows, scale=2)
    raise ValueError(f"unknown lattice name: {name}")


def from_gram(name: str, gram: Sequence[Sequence[int]]) -> IntegralLattice:
    """Lattice from an integer Gram matrix (basis = Cholesky factor rows)."""
    g = np.array(gram, dtype=float)
    L = np.linalg.cholesky(g)
    rows = [[Fraction(x).limit_denominator(10 ** 12) for x in row] for row in L]
    lat = IntegralLattice(name, rows)
    lat.gram_exact = [[Fraction(int(x)) for x in row] for row in gram]
    lat.gram = np.array(gram, dtype=np.int64)
    return lat


# ---------------------------------------------------------------------------
# enumeration (Fincke-Pohst: bounded recursive search on the Cholesky factor)


def enumerate_by_norm(L: IntegralLattice, max_norm) -> Dict[int, List[Tuple[int, ...]]]:
    """All lattice vectors with <v,v> <= max_norm, grouped by exact norm.

    Returns {norm: [coefficient tuples]} with norms ascending; closed under
    negation; the zero vector sits at norm 0.
    """
    g = np.array([[float(x) for x in row] for row in L.gram_exact])
    n = L.rank
    R = np.linalg.cholesky(g).T          # upper triangular, g = R^T R
    bound = float(max_norm) + 1e-9
    out: Dict[int, List[Tuple[int, ...]]] = {}
    x = [0] * n
    integral = L.gram.dtype == np.int64
    gi = L.gram if integral else None

    def rec(i: int, partial: np.ndarray, remaining: float):
        # partial: accumulated R @ x contributions for coords > i
        if i < 0:
            v = tuple(x)
            if integral:
                xv = np.array(v, dtype=np.int64)
                nrm = Fraction(int(xv @ gi @ xv))
            else:
                nrm = L.norm(v)
            if nrm <= max_norm and nrm.denominator == 1:
                out.setdefault(int(nrm), []).append(v)
            return
        rii = R[i, i]
        center = -partial[i] / rii
        radius = math.sqrt(max(remaining, 0.0)) / rii
        lo = math.ceil(center - radius - 1e-9)
        hi = math.floor(center + radius + 1e-9)
        for xi in range(lo, hi + 1):
            x[i] = xi
            t = rii * (xi - center)
            rec(i - 1, partial + xi * R[:, i], remaining - t * t)
        x[i] = 0

    rec(n - 1, np.zeros(n), bound)
    return {k: sorted(out[k]) for k in sorted(out)}


def roots(L: IntegralLattice) -> List[Tuple[int, ...]]:
    return enumerate_by_norm(L, 2).get(2, [])


def reflect(L: IntegralLattice, root: Sequence[int], v: Sequence[int]) -> Tuple[int, ...]:
    """Weyl reflection v -> v - <v,r> r for a norm-2 root."""
    if L.norm(root) != 2:
        raise ValueError("reflection vector must have norm 2")
    c = L.inner(v, root)
    if c.denominator != 1:
        raise ValueError("reflection does not preserve the lattice")
    c = int(c)
    return tuple(int(v[i]) - c * int(root[i]) for i in range(L.rank))


def coxeter_from_roots(L: IntegralLattice):
    """c with sum_r <r,e_i><r,e_j> = 2 c <e_i,e_j>, from the norm-2 vectors.

    Raises if the ratios disagree (reducible lattice).
    """
    rs = np.array(roots(L), dtype=np.int64)
    G = L.gram.astype(np.int64)
    gr = rs @ G                       # rows <r, e_j>
    M = gr.T @ gr                     # sum_r <r,e_i><r,e_j>
    vals = set()
    for i in range(L.rank):
        for j in range(L.rank):
            gij = int(G[i, j])
            if gij == 0:
                if M[i, j] != 0:
                    raise ValueError("inconsistent Coxeter ratios")
                continue
            vals.add(Fraction(int(M[i, j]), 2 * gij))
    if len(vals) != 1:
        raise ValueError(f"inconsistent Coxeter ratios: {sorted(vals)}")
    c = vals.pop()
    return int(c) if c.denominator == 1 else c


# ---------------------------------------------------------------------------
# the Spin(16) coroot embedding into E8


def spin16_embedding(v: Sequence[int]) -> Tuple[int, ...]:
    """Doubling map on x-coordinates: (1/2)(+-x_i+-x_j) -> +-x_i+-x_j in e8.

    Input in spin16_coroot basis coefficients; output in e8 basis
    coefficients.  Raises if the image is not an e8 vector.
    """
    src = builtin("spin16_coroot")
    tgt = builtin("e8")
    x = src.coordinates(v)
    image = [2 * c for c in x]
    return _in_basis(tgt, image)


def _in_basis(L: IntegralLattice, ambient_coords: Sequence[Fraction]) -> Tuple[int, ...]:
    """Solve integer basis coefficients for a point in the ambient space."""
    B = np.array([[float(x) for x in row] for row in L.basis]).T
    y = np.array([float(c) for c in ambient_coords])
    sol = np.linalg.solve(B, y)
    coeffs = tuple(int(round(s)) for s in sol)
    back = L.coordinates(coeffs)
    if any(b != c for b, c in zip(back, ambient_coords)):
        raise ValueError("vector is not in the target lattice")
    return coeffs


def spin16_first_series() -> List[Tuple[int, ...]]:
    """The 112 coroots (1/2)(+-x_i+-x_j), i<j, in basis coefficients."""
    src = builtin("spin16_coroot")
    out = []
    for i in range(8):
        for j in range(i + 1, 8):
            for si in (1, -1):
                for sj in (1, -1):
                    amb = [Fraction(0)] * 8
                    amb[i] = Fraction(si, 2)
                    amb[j] = Fraction(sj, 2)
                    out.append(_in_basis(src, amb))
    return out


def weight_identity_check() -> Fraction:
    """max |2 sum_i x_i(a) x_i(b) - <a,b>| over basis pairs; exact 0."""
    L = builtin("spin16_coroot")
    worst = Fraction(0)
    for i in range(L.rank):
        a = tuple(1 if t == i else 0 for t in range(L.rank))
        xa = L.coordinates(a)
        for j in range(L.rank):
            b = tuple(1 if t == j else 0 for t in range(L.rank))
            xb = L.coordinates(b)
            lhs = 2 * sum(p * q for p, q in zip(xa, xb))
            diff = abs(lhs - L.inner(a, b))
            worst = max(worst, diff)
    return worst


# ---------------------------------------------------------------------------
# closed-form Weyl arithmetic and anomaly exponents

W_E8_ORDER = 696729600                       # 2^14 3^5 5^2 7
W_D8_ORDER = 2 ** 7 * math.factorial(8)      # 5160960


def weyl_index_arithmetic() -> int:
    """|W(E8)| / |W(D8)| = 135 = 3^3 * 5."""
    q, r = divmod(W_E8_ORDER, W_D8_ORDER)
    if r:
        raise ArithmeticError("Weyl order ratio is not integral")
    return q


_ANOMALY = {
    "e8e8_adjoint": (30, 464, 496, 10),
    "spin16_rho": (1, 0, 32, 10),
    "spin32_rho": (1, 0, 32, 10),
}


def anomaly_exponents(case: str) -> Tuple[int, int, int, int]:
    """(alpha, beta, r, n) with alpha*(n+22) = r + beta."""
    if case not in _ANOMALY:
        raise ValueError(f"unknown case: {case}")
    alpha, beta, r, n = _ANOMALY[case]
    assert alpha * (n + 22) == r + beta
    return alpha, beta, r, n


def theta_counts(L: IntegralLattice, max_norm: int) -> Dict[int, int]:
    """Vector counts per norm (the theta-series coefficients)."""
    return {k: len(v) for k, v in enumerate_by_norm(L, max_norm).items()}
