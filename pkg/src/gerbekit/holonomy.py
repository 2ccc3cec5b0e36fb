"""Holonomy of differential cocycles along S^1 and T^2 via dual cell
decompositions.

For a degree-n cocycle omega, a dual cell decomposition with top cells
Delta_i and a subordination rho,

    hol(omega) = sum_{k=1}^{n+1} (-1)^{k+1}
                 sum_{i1 > ... > ik} int_{Delta_(i)} omega^{n+1-k}_{rho(i1)...rho(ik)}

where the k = n+1 layer integrates 0-forms over oriented points (evaluation
with the boundary-induced sign).  The value is well defined modulo 2*pi
under changes of rho and refinement of the decomposition.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

from .cochain import DiffCochain
from .covers import DualCellDecomposition


def holonomy_raw(omega: DiffCochain, dec: DualCellDecomposition,
                 rho: Sequence[int]) -> complex:
    """The signed cell-integral sum, without the reality check."""
    n = omega.degree
    if dec.dim != n:
        raise ValueError("decomposition dimension must equal cochain degree")
    total = 0.0 + 0.0j
    for k in range(1, n + 2):
        layer = 0.0 + 0.0j
        for idx, cell in dec.faces.get(k, {}).items():
            comp = omega.component(tuple(rho[i] for i in idx))
            if comp.is_zero():
                continue
            layer += comp.integrate_cell(cell)
        total += layer if k % 2 == 1 else -layer
    return total


def holonomy(omega: DiffCochain, dec: DualCellDecomposition,
             rho: Sequence[int]) -> float:
    total = holonomy_raw(omega, dec, rho)
    if abs(total.imag) > 1e-8:
        raise ValueError(f"holonomy came out non-real ({total}); "
                         "cochain data is not real-valued")
    return total.real


def holonomy_phase(omega: DiffCochain, dec: DualCellDecomposition,
                   rho: Sequence[int]) -> complex:
    return cmath.exp(1j * holonomy(omega, dec, rho))


def invariance_defect(omega: DiffCochain, dec: DualCellDecomposition,
                      rho: Sequence[int], rho2: Sequence[int]) -> float:
    """holonomy(rho) - holonomy(rho2); lies in 2*pi*Z for cocycles."""
    return holonomy(omega, dec, rho) - holonomy(omega, dec, rho2)


def nearest_2pi_multiple_defect(value: float) -> float:
    """Distance from value to the nearest integer multiple of 2*pi."""
    return abs(value - 2 * math.pi * round(value / (2 * math.pi)))
