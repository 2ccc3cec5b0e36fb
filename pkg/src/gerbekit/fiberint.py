"""Push-forward of differential cochains along a product fibration X x E -> X.

Components of the output are built from path-sum symbols: for multi-indices
(a) on the X side (length r) and (b) on the E side (length k),

    T^(a)_(b) omega = sum over monotone lattice paths gamma from (a1,b1) to
    (ar,bk) of (-1)^{A(gamma)} omega_{node sequence of gamma}

with A(gamma) the number of unit squares enclosed between the path and the
b-axis (each up-step at column p contributes p - 1); this is the unique
parity choice for which the push-forward commutes with the total
differential.  The push-forward then integrates these mixed forms over the
cells of a dual decomposition of E in the fiber directions only.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cochain import DiffCochain, total_d
from .covers import Cover, DualCellDecomposition, product_index
from .trigform import TrigForm, _integrate_monomial, _move_axes_to_end_sign

Idx = Tuple[int, ...]


# ---------------------------------------------------------------------------
# monotone paths


@lru_cache(maxsize=None)
def monotone_paths(r: int, k: int) -> Tuple[Tuple[Tuple[Tuple[int, int], ...], int], ...]:
    """All monotone paths (1,1) -> (r,k) as (node list, area) pairs.

    Nodes are 1-indexed (p, q); steps increase p (along a) or q (along b).
    """
    out: List[Tuple[Tuple[Tuple[int, int], ...], int]] = []

    def walk(p, q, nodes, area):
        if p == r and q == k:
            out.append((tuple(nodes), area))
            return
        if p < r:
            walk(p + 1, q, nodes + [(p + 1, q)], area)
        if q < k:
            walk(p, q + 1, nodes + [(p, q + 1)], area + (p - 1))

    walk(1, 1, [(1, 1)], 0)
    return tuple(out)


def path_count(r: int, k: int) -> int:
    return math.comb(r + k - 2, r - 1)


# ---------------------------------------------------------------------------
# path-sum symbols


def t_symbol_form(omega: DiffCochain, a_idx: Sequence[int],
                  b_idx: Sequence[int]) -> TrigForm:
    """The signed path sum as a mixed form on the product torus."""
    cover = omega.cover
    r, k = len(a_idx), len(b_idx)
    deg = omega.degree + 2 - r - k
    total = TrigForm.zero(omega.ambient_dim, max(deg, 0))
    for nodes, area in monotone_paths(r, k):
        idx = tuple(product_index(cover, a_idx[p - 1], b_idx[q - 1])
                    for p, q in nodes)
        term = omega.component(idx)
        total = total + term if area % 2 == 0 else total - term
    return total


def t_symbol_int(omega: DiffCochain, a_idx: Sequence[int],
                 b_idx: Sequence[int]) -> int:
    cover = omega.cover
    r, k = len(a_idx), len(b_idx)
    total = 0
    for nodes, area in monotone_paths(r, k):
        idx = tuple(product_index(cover, a_idx[p - 1], b_idx[q - 1])
                    for p, q in nodes)
        m = omega.int_component(idx)
        total += m if area % 2 == 0 else -m
    return total


# ---------------------------------------------------------------------------
# fiber-cell integration of mixed forms


def integrate_fiber_cell(form: TrigForm, cell, n_base: int) -> TrigForm:
    """Integrate the fiber part of a form on X x E over a cell of E.

    Terms whose fiber-axis count differs from the cell dimension drop; the
    fiber axes are moved to the end (collecting the sign) and integrated in
    closed form; the result is a form on X.
    """
    out: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], complex] = {}
    for (freq, axes), c in form.terms.items():
        fib = tuple(a for a in axes if a >= n_base)
        if len(fib) != cell.dim:
            continue
        sign = _move_axes_to_end_sign(axes, fib)
        kf = np.array(freq[n_base:], dtype=float)
        val = _integrate_monomial(kf, tuple(a - n_base for a in fib), cell)
        if val == 0.0:
            continue
        base_axes = tuple(a for a in axes if a < n_base)
        key = (tuple(freq[:n_base]), base_axes)
        out[key] = out.get(key, 0.0) + sign * c * val
    deg = form.degree - cell.dim
    return TrigForm(n_base, max(deg, 0), out)


# ---------------------------------------------------------------------------
# push-forward


def pushforward(omega: DiffCochain, dec: DualCellDecomposition,
                rho: Sequence[int]) -> DiffCochain:
    """Push a degree-n cochain on X x E down to a degree-(n-d) cochain on X."""
    cover = omega.cover
    if not hasattr(cover, "factor_covers"):
        raise ValueError("push-forward needs a product cover")
    x_cover, e_cover = cover.factor_covers
    n = omega.degree
    d = dec.dim
    if n < d:
        raise ValueError("cochain degree must be at least dim E")
    n_base = x_cover.factors
    fiber_axes = list(range(n_base, n_base + e_cover.factors))
    H = omega.get_field_strength()
    T = H.fiber_integrate_global(fiber_axes)
    m = n - d

    def comp(a_idx: Idx) -> TrigForm:
        deg = m - (len(a_idx) - 1)
        total = TrigForm.zero(n_base, max(deg, 0))
        for k in range(1, d + 2):
            sgn = 1 if ((m + 1) * (k + 1)) % 2 == 0 else -1
            layer = TrigForm.zero(n_base, max(deg, 0))
            for cell_idx, cell in dec.faces.get(k, {}).items():
                b_idx = tuple(rho[i] for i in cell_idx)
                sym = t_symbol_form(omega, a_idx, b_idx)
                if sym.is_zero():
                    continue
                layer = layer + integrate_fiber_cell(sym, cell, n_base)
            total = total + sgn * layer
        return total

    def icomp(a_idx: Idx) -> int:
        # bottom row: only the point layer k = d+1 contributes
        sgn = 1 if ((m + 1) * d) % 2 == 0 else -1
        total = 0
        for cell_idx, cell in dec.faces.get(d + 1, {}).items():
            b_idx = tuple(rho[i] for i in cell_idx)
            total += cell.sign * t_symbol_int(omega, a_idx, b_idx)
        return sgn * total

    return DiffCochain(m, x_cover, field_strength=T, ambient_dim=n_base,
                       component_fn=comp, int_component_fn=icomp)


def pushforward_commutes_defect(omega: DiffCochain, dec: DualCellDecomposition,
                                rho: Sequence[int]) -> float:
    """Max coefficient magnitude of int_E(d_total omega) - d_total(int_E omega)."""
    lhs = pushforward(total_d(omega), dec, rho)
    rhs = total_d(pushforward(omega, dec, rho))
    return (lhs - rhs).max_defect()


def pushforward_homotopy(omega: DiffCochain, dec: DualCellDecomposition,
                         rho: Sequence[int], rho2: Sequence[int]) -> DiffCochain:
    """The homotopy comparing the push-forwards for two subordinations.

    Output degree n-d-1 on X; for cocycles omega,
    pushforward(rho) - pushforward(rho2) = d_total(homotopy); the inner
    alternation (-1)^t matches the subordination-homotopy convention of the
    double complex and is pinned by this identity.
    """
    cover = omega.cover
    x_cover, e_cover = cover.factor_covers
    n = omega.degree
    d = dec.dim
    n_base = x_cover.factors
    m = n - d
    if m < 1:
        raise ValueError("homotopy needs output degree n - d >= 1")

    def mixed_b(cell_idx: Idx, t: int) -> Idx:
        return (tuple(rho[i] for i in cell_idx[:t]) +
                tuple(rho2[i] for i in cell_idx[t - 1:]))

    def comp(a_idx: Idx) -> TrigForm:
        r = len(a_idx)
        deg = (m - 1) - (r - 1)
        total = TrigForm.zero(n_base, max(deg, 0))
        ks = range(1, d + 2) if r <= m else (d + 1,)
        for k in ks:
            sgn = 1 if (m * (k + 1)) % 2 == 0 else -1
            layer = TrigForm.zero(n_base, max(deg, 0))
            for cell_idx, cell in dec.faces.get(k, {}).items():
                inner = TrigForm.zero(omega.ambient_dim,
                                      max(n + 1 - r - k, 0))
                for t in range(1, k + 1):
                    term = t_symbol_form(omega, a_idx, mixed_b(cell_idx, t))
                    inner = inner - term if t % 2 == 1 else inner + term
                if inner.is_zero():
                    continue
                layer = layer + integrate_fiber_cell(inner, cell, n_base)
            total = total + sgn * layer
        return total

    def icomp(a_idx: Idx) -> int:
        k = d + 1
        sgn = 1 if (m * (k + 1)) % 2 == 0 else -1
        total = 0
        for cell_idx, cell in dec.faces.get(k, {}).items():
            inner = 0
            for t in range(1, k + 1):
                v = t_symbol_int(omega, a_idx, mixed_b(cell_idx, t))
                inner += -v if t % 2 == 1 else v
            total += cell.sign * inner
        return sgn * total

    return DiffCochain(m - 1, x_cover,
                       field_strength=TrigForm.zero(n_base, min(m, n_base)),
                       ambient_dim=n_base,
                       component_fn=comp, int_component_fn=icomp)


def homotopy_residual(omega: DiffCochain, dec: DualCellDecomposition,
                      rho: Sequence[int], rho2: Sequence[int],
                      omega_is_cocycle: bool = True) -> float:
    """Residual of: pushforward(rho) - pushforward(rho2) = d(homotopy(omega))
    [+ homotopy(d omega) when omega is not a cocycle]."""
    lhs = pushforward(omega, dec, rho) - pushforward(omega, dec, rho2)
    rhs = total_d(pushforward_homotopy(omega, dec, rho, rho2))
    if not omega_is_cocycle:
        rhs = rhs + pushforward_homotopy(total_d(omega), dec, rho, rho2)
    return (lhs - rhs).max_defect()
