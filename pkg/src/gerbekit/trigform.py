"""Differential forms on tori with finite trigonometric-polynomial coefficients.

Every coefficient is a finite sum of complex exponentials c * e^{i k.x} with
integer frequency vector k, so exterior derivative, wedge product, pullback
along integer-affine maps, and integration over cells all have closed forms.
"""

from __future__ import annotations

import cmath
import math
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (frequency, axes)

_DROP = 0.0  # coefficients exactly equal to zero are dropped


def _axes_sign(axes: Sequence[int]):
    """Sort an axis tuple, returning (sorted_axes, parity_sign) or None if repeated."""
    axes = list(axes)
    if len(set(axes)) != len(axes):
        return None
    sign = 1
    # insertion sort, counting swaps
    for i in range(1, len(axes)):
        j = i
        while j > 0 and axes[j - 1] > axes[j]:
            axes[j - 1], axes[j] = axes[j], axes[j - 1]
            sign = -sign
            j -= 1
    return tuple(axes), sign


class TrigForm:
    """A degree-p form on T^n with trig-polynomial coefficients."""

    __slots__ = ("ambient_dim", "degree", "terms")

    def __init__(self, ambient_dim: int, degree: int,
                 terms: Mapping[Key, complex] | None = None):
        if not (0 <= degree <= ambient_dim):
            raise ValueError(f"degree {degree} out of range for T^{ambient_dim}")
        self.ambient_dim = ambient_dim
        self.degree = degree
        clean: Dict[Key, complex] = {}
        if terms:
            for (freq, axes), c in terms.items():
                c = complex(c)
                if c == _DROP:
                    continue
                freq = tuple(int(f) for f in freq)
                axes = tuple(int(a) for a in axes)
                if len(freq) != ambient_dim:
                    raise ValueError("frequency length != ambient_dim")
                if len(axes) != degree:
                    raise ValueError("axes length != degree")
                if any(not (0 <= a < ambient_dim) for a in axes):
                    raise ValueError("axis out of range")
                if any(axes[i] >= axes[i + 1] for i in range(len(axes) - 1)):
                    raise ValueError("axes must be strictly increasing")
                clean[(freq, axes)] = clean.get((freq, axes), 0.0) + c
        self.terms = {k: v for k, v in clean.items() if v != _DROP}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(ambient_dim: int, degree: int) -> "TrigForm":
        return TrigForm(ambient_dim, degree)

    @staticmethod
    def constant(ambient_dim: int, value: complex) -> "TrigForm":
        return TrigForm(ambient_dim, 0, {((0,) * ambient_dim, ()): value})

    @staticmethod
    def monomial(ambient_dim: int, freq: Sequence[int], axes: Sequence[int],
                 coeff: complex = 1.0) -> "TrigForm":
        return TrigForm(ambient_dim, len(axes),
                        {(tuple(freq), tuple(axes)): coeff})

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "TrigForm") -> "TrigForm":
        self._check_compat(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0.0) + c
        return TrigForm(self.ambient_dim, self.degree, out)

    def __sub__(self, other: "TrigForm") -> "TrigForm":
        return self + (-1.0) * other

    def __neg__(self) -> "TrigForm":
        return (-1.0) * self

    def __rmul__(self, scalar: complex) -> "TrigForm":
        return TrigForm(self.ambient_dim, self.degree,
                        {k: scalar * c for k, c in self.terms.items()})

    def __mul__(self, scalar: complex) -> "TrigForm":
        return self.__rmul__(scalar)

    def _check_compat(self, other: "TrigForm"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if self.degree != other.degree:
            raise ValueError("degree mismatch")

    # -- calculus ----------------------------------------------------------

    def d(self) -> "TrigForm":
        """Exterior derivative; the (n+1)-degree overflow is the zero form."""
        n = self.ambient_dim
        if self.degree == n:
            # top forms are closed; keep degree at n so callers may still add
            return TrigForm(n, n)
        out: Dict[Key, complex] = {}
        for (freq, axes), c in self.terms.items():
            for j, kj in enumerate(freq):
                if kj == 0 or j in axes:
                    continue
                sorted_sign = _axes_sign((j,) + axes)
                if sorted_sign is None:
                    continue
                new_axes, sign = sorted_sign
                key = (freq, new_axes)
                out[key] = out.get(key, 0.0) + 1j * kj * sign * c
        return TrigForm(n, self.degree + 1, out)

    def wedge(self, other: "TrigForm") -> "TrigForm":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        p, q = self.degree, other.degree
        if p + q > self.ambient_dim:
            raise ValueError("wedge degree exceeds ambient dimension")
        out: Dict[Key, complex] = {}
        for (f1, a1), c1 in self.terms.items():
            for (f2, a2), c2 in other.terms.items():
                ss = _axes_sign(a1 + a2)
                if ss is None:
                    continue
                axes, sign = ss
                freq = tuple(x + y for x, y in zip(f1, f2))
                key = (freq, axes)
                out[key] = out.get(key, 0.0) + sign * c1 * c2
        return TrigForm(self.ambient_dim, p + q, out)

    def pullback(self, m: "AffineTorusMap") -> "TrigForm":
        """Pullback along x -> A x + b from T^{target} to T^{source}.

        The form lives on the target torus; the result lives on the source.
        """
        if m.target_dim != self.ambient_dim:
            raise ValueError("map target dim != form ambient dim")
        A = m.linear_part  # target_dim x source_dim
        b = m.shift
        ns = m.source_dim
        out: Dict[Key, complex] = {}
        for (freq, axes), c in self.terms.items():
            # e^{i k.(Ax+b)} = e^{i k.b} e^{i (A^T k).x}
            new_freq = tuple(int(v) for v in (A.T @ np.array(freq)))
            phase = cmath.exp(1j * float(np.dot(freq, b)))
            # dx_a pulls back to sum_s A[a,s] dy_s; expand the wedge product
            self._pullback_expand(out, new_freq, axes, A, phase * c, (), 0, 1)
        return TrigForm(ns, self.degree, out)

    def _pullback_expand(self, out, freq, axes, A, coeff, chosen, pos, sign_unused):
        if pos == len(axes):
            ss = _axes_sign(chosen)
            if ss is None:
                return
            new_axes, sign = ss
            key = (freq, new_axes)
            out[key] = out.get(key, 0.0) + sign * coeff
            return
        a = axes[pos]
        for s in range(A.shape[1]):
            entry = A[a, s]
            if entry == 0:
                continue
            self._pullback_expand(out, freq, axes, A, coeff * entry,
                                  chosen + (s,), pos + 1, 1)

    # -- integration -------------------------------------------------------

    def integrate_torus(self) -> complex:
        if self.degree != self.ambient_dim:
            raise ValueError("integrate_torus needs a top-degree form")
        zero = (0,) * self.ambient_dim
        top = tuple(range(self.ambient_dim))
        c = self.terms.get((zero, top), 0.0)
        return c * (2 * math.pi) ** self.ambient_dim

    def fiber_integrate_global(self, fiber_axes: Sequence[int]) -> "TrigForm":
        """Integrate over the full subtorus spanned by fiber_axes.

        Keeps terms with zero frequency on and full presence of the fiber
        axes; moves those axes to the last slots (collecting the sign),
        strips them, and multiplies by (2 pi)^d.
        """
        fiber = sorted(set(int(a) for a in fiber_axes))
        d = len(fiber)
        base = [a for a in range(self.ambient_dim) if a not in fiber]
        reindex = {a: i for i, a in enumerate(base)}
        if self.degree < d:
            return TrigForm(len(base), 0)
        out: Dict[Key, complex] = {}
        vol = (2 * math.pi) ** d
        for (freq, axes), c in self.terms.items():
            if any(freq[a] != 0 for a in fiber):
                continue
            if not all(a in axes for a in fiber):
                continue
            sign = _move_axes_to_end_sign(axes, fiber)
            new_axes = tuple(reindex[a] for a in axes if a not in fiber)
            new_freq = tuple(freq[a] for a in base)
            key = (new_freq, new_axes)
            out[key] = out.get(key, 0.0) + sign * vol * c
        return TrigForm(len(base), self.degree - d, out)

    def integrate_cell(self, cell) -> complex:
        """Integrate over an oriented point/segment/polygon in the torus."""
        if self.degree != cell.dim:
            raise ValueError("form degree must equal cell dimension")
        total = 0.0 + 0.0j
        for (freq, axes), c in self.terms.items():
            total += c * _integrate_monomial(np.array(freq, dtype=float), axes, cell)
        return total

    # -- evaluation & misc -------------------------------------------------

    def coefficient_at(self, x: Sequence[float]) -> Dict[Tuple[int, ...], complex]:
        """Evaluate the coefficient functions at a point, keyed by axes."""
        x = np.asarray(x, dtype=float)
        out: Dict[Tuple[int, ...], complex] = {}
        for (freq, axes), c in self.terms.items():
            out[axes] = out.get(axes, 0.0) + c * cmath.exp(1j * float(np.dot(freq, x)))
        return out

    def evaluate(self, x: Sequence[float], vectors: Sequence[Sequence[float]]) -> complex:
        """Evaluate the p-form on p tangent vectors at x."""
        if len(vectors) != self.degree:
            raise ValueError("need exactly degree-many vectors")
        vs = [np.asarray(v, dtype=float) for v in vectors]
        total = 0.0 + 0.0j
        for axes, coeff in self.coefficient_at(x).items():
            if self.degree == 0:
                total += coeff
            else:
                mat = np.array([[v[a] for a in axes] for v in vs])
                total += coeff * np.linalg.det(mat)
        return total

    def max_abs(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def prune(self, tol: float = 0.0) -> "TrigForm":
        return TrigForm(self.ambient_dim, self.degree,
                        {k: c for k, c in self.terms.items() if abs(c) > tol})

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.max_abs() <= tol

    def is_real(self, tol: float = 1e-12) -> bool:
        """Check Hermitian symmetry of the term set (real-valued form)."""
        for (freq, axes), c in self.terms.items():
            neg = tuple(-f for f in freq)
            if abs(self.terms.get((neg, axes), 0.0) - c.conjugate()) > tol:
                return False
        return True

    def __repr__(self):
        return (f"TrigForm(T^{self.ambient_dim}, deg {self.degree}, "
                f"{len(self.terms)} terms)")

    def to_records(self) -> list:
        recs = []
        for (freq, axes) in sorted(self.terms):
            c = self.terms[(freq, axes)]
            recs.append({"freq": list(freq), "axes": list(axes),
                         "re": c.real, "im": c.imag})
        return recs

    @staticmethod
    def from_records(ambient_dim: int, degree: int, records: Iterable[Mapping]) -> "TrigForm":
        terms = {}
        for r in records:
            key = (tuple(r["freq"]), tuple(r["axes"]))
            terms[key] = terms.get(key, 0.0) + complex(r["re"], r["im"])
        return TrigForm(ambient_dim, degree, terms)


def _move_axes_to_end_sign(axes: Tuple[int, ...], which: Sequence[int]) -> int:
    """Parity sign of moving the listed axes (in order) to the end of the tuple."""
    perm = [a for a in axes if a not in which] + [a for a in axes if a in which]
    # count inversions of perm relative to axes (both are sequences over the
    # same underlying set; axes is sorted ascending)
    order = {a: i for i, a in enumerate(axes)}
    seq = [order[a] for a in perm]
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class AffineTorusMap:
    """x -> A x + b with integer A, mapping T^{source} -> T^{target}."""

    def __init__(self, linear_part, shift=None):
        A = np.asarray(linear_part)
        if not np.allclose(A, np.round(A)):
            raise ValueError("linear part must be integer")
        self.linear_part = np.round(A).astype(int)
        self.target_dim, self.source_dim = self.linear_part.shape
        if shift is None:
            shift = np.zeros(self.target_dim)
        self.shift = np.asarray(shift, dtype=float)
        if self.shift.shape != (self.target_dim,):
            raise ValueError("shift length mismatch")

    @staticmethod
    def identity(n: int) -> "AffineTorusMap":
        return AffineTorusMap(np.eye(n, dtype=int))

    def compose(self, other: "AffineTorusMap") -> "AffineTorusMap":
        """self o other (apply other first)."""
        if other.target_dim != self.source_dim:
            raise ValueError("composition dimension mismatch")
        return AffineTorusMap(self.linear_part @ other.linear_part,
                              self.linear_part @ other.shift + self.shift)


# ---------------------------------------------------------------------------
# closed-form monomial integrals over cells


def _phi(t: float) -> complex:
    """int_0^1 e^{i t s} ds."""
    if abs(t) < 1e-6:
        # series: 1 + it/2 - t^2/6 - i t^3/24 + t^4/120
        return (1.0 + 1j * t / 2 - t * t / 6 - 1j * t ** 3 / 24 + t ** 4 / 120)
    return (cmath.exp(1j * t) - 1.0) / (1j * t)


def _psi(t: float) -> complex:
    """int_0^1 s e^{i t s} ds."""
    if abs(t) < 1e-6:
        return (0.5 + 1j * t / 3 - t * t / 8 - 1j * t ** 3 / 30)
    return (cmath.exp(1j * t) - _phi(t)) / (1j * t)


def _simplex_exp(alpha: float, beta: float) -> complex:
    """int over {u,v>=0, u+v<=1} of e^{i(alpha u + beta v)} du dv."""
    if abs(alpha - beta) < 1e-9:
        return _psi(0.5 * (alpha + beta))
    return (_phi(alpha) - _phi(beta)) / (1j * (alpha - beta))


def _integrate_monomial(freq: np.ndarray, axes: Tuple[int, ...], cell) -> complex:
    if cell.dim == 0:
        return cell.sign * cmath.exp(1j * float(np.dot(freq, cell.point)))
    if cell.dim == 1:
        P, Q = cell.start, cell.end
        j = axes[0]
        mu = float(np.dot(freq, Q - P))
        return (Q[j] - P[j]) * cmath.exp(1j * float(np.dot(freq, P))) * _phi(mu)
    if cell.dim == 2:
        j1, j2 = axes
        total = 0.0 + 0.0j
        verts = cell.vertices
        P0 = verts[0]
        for i in range(1, len(verts) - 1):
            E1 = verts[i] - P0
            E2 = verts[i + 1] - P0
            jac = E1[j1] * E2[j2] - E1[j2] * E2[j1]
            if jac == 0.0:
                continue
            a = float(np.dot(freq, E1))
            b = float(np.dot(freq, E2))
            total += jac * cmath.exp(1j * float(np.dot(freq, P0))) * _simplex_exp(a, b)
        return total
    raise ValueError("cells of dimension > 2 are not supported")
