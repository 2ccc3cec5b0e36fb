"""Lie-algebra-valued trig-polynomial forms on tori: graded bracket,
invariant pairing, curvature, Maurer-Cartan forms of closed-form gauge maps,
and the Chern-Simons 3-form with its gauge-variation identity.

Matrix coefficients live in a fixed matrix algebra (su(2), su(3) in tests);
the invariant pairing is -kappa * trace in the defining representation.
"""

from __future__ import annotations

import cmath
import math
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np

from .trigform import TrigForm, _axes_sign

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]


class LieValuedForm:
    """A degree-p form with matrix coefficients: sum of X * e^{i k.x} dx_I."""

    __slots__ = ("ambient_dim", "degree", "matrix_dim", "terms")

    def __init__(self, ambient_dim: int, degree: int, matrix_dim: int,
                 terms: Mapping[Key, np.ndarray] | None = None,
                 drop_tol: float = 0.0):
        self.ambient_dim = ambient_dim
        self.degree = degree
        self.matrix_dim = matrix_dim
        clean: Dict[Key, np.ndarray] = {}
        if terms:
            for (freq, axes), X in terms.items():
                X = np.asarray(X, dtype=complex)
                if X.shape != (matrix_dim, matrix_dim):
                    raise ValueError("matrix coefficient shape mismatch")
                if np.max(np.abs(X)) <= drop_tol:
                    continue
                key = (tuple(int(f) for f in freq), tuple(int(a) for a in axes))
                if len(key[1]) != degree:
                    raise ValueError("axes length != degree")
                if key in clean:
                    clean[key] = clean[key] + X
                else:
                    clean[key] = X
        self.terms = {k: v for k, v in clean.items() if np.max(np.abs(v)) > 0.0}

    @staticmethod
    def zero(ambient_dim: int, degree: int, matrix_dim: int) -> "LieValuedForm":
        return LieValuedForm(ambient_dim, degree, matrix_dim)

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "LieValuedForm") -> "LieValuedForm":
        out = {k: v.copy() for k, v in self.terms.items()}
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return LieValuedForm(self.ambient_dim, self.degree, self.matrix_dim, out)

    def __sub__(self, other: "LieValuedForm") -> "LieValuedForm":
        return self + (-1.0) * other

    def __rmul__(self, scalar: complex) -> "LieValuedForm":
        return LieValuedForm(self.ambient_dim, self.degree, self.matrix_dim,
                             {k: scalar * v for k, v in self.terms.items()})

    __mul__ = __rmul__

    def max_abs(self) -> float:
        return max((float(np.max(np.abs(v))) for v in self.terms.values()),
                   default=0.0)

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.max_abs() <= tol

    # -- calculus ----------------------------------------------------------

    def d(self) -> "LieValuedForm":
        if self.degree >= self.ambient_dim:
            return LieValuedForm.zero(self.ambient_dim, self.degree,
                                      self.matrix_dim)
        out: Dict[Key, np.ndarray] = {}
        for (freq, axes), X in self.terms.items():
            for j, kj in enumerate(freq):
                if kj == 0 or j in axes:
                    continue
                ss = _axes_sign((j,) + axes)
                if ss is None:
                    continue
                new_axes, sign = ss
                key = (freq, new_axes)
                add = (1j * kj * sign) * X
                out[key] = out[key] + add if key in out else add
        return LieValuedForm(self.ambient_dim, self.degree + 1,
                             self.matrix_dim, out)

    def evaluate(self, x: Sequence[float],
                 vectors: Sequence[Sequence[float]]) -> np.ndarray:
        """Evaluate the p-form on p tangent vectors at the point x."""
        x = np.asarray(x, dtype=float)
        vs = [np.asarray(v, dtype=float) for v in vectors]
        total = np.zeros((self.matrix_dim, self.matrix_dim), dtype=complex)
        for (freq, axes), X in self.terms.items():
            phase = cmath.exp(1j * float(np.dot(freq, x)))
            if self.degree == 0:
                total += phase * X
            else:
                mat = np.array([[v[a] for a in axes] for v in vs])
                total += phase * np.linalg.det(mat) * X
        return total

    def in_algebra(self, tol: float = 1e-12) -> bool:
        """Anti-Hermitian and traceless coefficient check (su(m) data).

        A real-valued form with su(m) coefficients has Hermitian-conjugate
        terms at opposite frequencies; we check the pointwise condition at
        a few sample points instead of term-by-term.
        """
        rng = np.random.default_rng(0)
        for _ in range(4):
            x = rng.uniform(0, 2 * math.pi, self.ambient_dim)
            vs = rng.standard_normal((max(self.degree, 1), self.ambient_dim))
            val = self.evaluate(x, vs[: self.degree])
            if abs(np.trace(val)) > tol * max(1.0, self.max_abs()):
                return False
            if np.max(np.abs(val + val.conj().T)) > 1e-6 * max(1.0, self.max_abs()):
                return False
        return True


def graded_bracket(a: LieValuedForm, b: LieValuedForm) -> LieValuedForm:
    """[X alpha, Y beta] = [X, Y] (alpha ^ beta), extended bilinearly."""
    if a.ambient_dim != b.ambient_dim or a.matrix_dim != b.matrix_dim:
        raise ValueError("mismatched forms")
    deg = a.degree + b.degree
    if deg > a.ambient_dim:      # forced repeated axes: identically zero
        return LieValuedForm.zero(a.ambient_dim, a.ambient_dim, a.matrix_dim)
    out: Dict[Key, np.ndarray] = {}
    for (f1, a1), X in a.terms.items():
        for (f2, a2), Y in b.terms.items():
            ss = _axes_sign(a1 + a2)
            if ss is None:
                continue
            axes, sign = ss
            key = (tuple(x + y for x, y in zip(f1, f2)), axes)
            add = sign * (X @ Y - Y @ X)
            out[key] = out[key] + add if key in out else add
    return LieValuedForm(a.ambient_dim, deg, a.matrix_dim, out)


def pairing(a: LieValuedForm, b: LieValuedForm, kappa: float = 1.0) -> TrigForm:
    """<X alpha, Y beta> = -kappa tr(XY) (alpha ^ beta)."""
    if a.ambient_dim != b.ambient_dim or a.matrix_dim != b.matrix_dim:
        raise ValueError("mismatched forms")
    deg = a.degree + b.degree
    if deg > a.ambient_dim:
        return TrigForm.zero(a.ambient_dim, a.ambient_dim)
    out: Dict[Key, complex] = {}
    for (f1, a1), X in a.terms.items():
        for (f2, a2), Y in b.terms.items():
            ss = _axes_sign(a1 + a2)
            if ss is None:
                continue
            axes, sign = ss
            key = (tuple(x + y for x, y in zip(f1, f2)), axes)
            out[key] = out.get(key, 0.0) - kappa * sign * complex(np.trace(X @ Y))
    return TrigForm(a.ambient_dim, deg, out)


def curvature(A: LieValuedForm) -> LieValuedForm:
    """F = dA + (1/2)[A, A] for a degree-1 connection form."""
    if A.degree != 1:
        raise ValueError("connection must be a 1-form")
    return A.d() + 0.5 * graded_bracket(A, A)


def cs_form(A: LieValuedForm, kappa: float = 1.0) -> TrigForm:
    """CS_A = <A, dA + (1/3)[A, A]>."""
    if A.degree != 1:
        raise ValueError("connection must be a 1-form")
    inner = A.d() + (1.0 / 3.0) * graded_bracket(A, A)
    return pairing(A, inner, kappa)


# ---------------------------------------------------------------------------
# gauge maps


class GaugeFactor:
    """U diag(e^{i w_j (m.x)}) U^dagger for a constant unitary U."""

    def __init__(self, U: np.ndarray, weights: Sequence[int], freq: Sequence[int]):
        self.U = np.asarray(U, dtype=complex)
        self.weights = tuple(int(w) for w in weights)
        self.freq = tuple(int(f) for f in freq)
        if self.U.shape[0] != self.U.shape[1] or len(self.weights) != self.U.shape[0]:
            raise ValueError("shape mismatch")

    def value(self, x: Sequence[float]) -> np.ndarray:
        phase = float(np.dot(self.freq, x))
        D = np.diag([cmath.exp(1j * w * phase) for w in self.weights])
        return self.U @ D @ self.U.conj().T


class GaugeMap:
    """An ordered product of gauge factors t = f1 f2 ... fm."""

    def __init__(self, factors: Sequence[GaugeFactor], ambient_dim: int):
        self.factors = list(factors)
        self.ambient_dim = ambient_dim
        if factors:
            self.matrix_dim = factors[0].U.shape[0]
        else:
            raise ValueError("need at least one factor")
        for f in factors:
            if len(f.freq) != ambient_dim:
                raise ValueError("factor frequency length mismatch")

    def value(self, x: Sequence[float]) -> np.ndarray:
        out = np.eye(self.matrix_dim, dtype=complex)
        for f in self.factors:
            out = out @ f.value(x)
        return out

    def inverse_value(self, x: Sequence[float]) -> np.ndarray:
        return self.value(x).conj().T

    def maurer_cartan(self) -> LieValuedForm:
        """t^{-1} dt as a trig-polynomial 1-form."""
        mc = LieValuedForm.zero(self.ambient_dim, 1, self.matrix_dim)
        for f in self.factors:
            mc = _conjugate_by_factor(mc, f) + _factor_mc(f, self.ambient_dim)
        return mc

    def conjugate(self, form: LieValuedForm) -> LieValuedForm:
        """t^{-1} (form) t."""
        out = form
        for f in self.factors:
            out = _conjugate_by_factor(out, f)
        return out


def _factor_mc(f: GaugeFactor, ambient_dim: int) -> LieValuedForm:
    """f^{-1} df = U diag(i w_j) U^dagger (m . dx)."""
    K = f.U @ np.diag([1j * w for w in f.weights]) @ f.U.conj().T
    terms: Dict[Key, np.ndarray] = {}
    zero = (0,) * ambient_dim
    for a, ma in enumerate(f.freq):
        if ma:
            terms[(zero, (a,))] = ma * K
    return LieValuedForm(ambient_dim, 1, f.U.shape[0], terms)


def _conjugate_by_factor(form: LieValuedForm, f: GaugeFactor) -> LieValuedForm:
    """f^{-1} (form) f; entries pick up phases e^{i (w_j - w_i)(m.x)}."""
    m = form.matrix_dim
    Ud = f.U.conj().T
    out: Dict[Key, np.ndarray] = {}
    shifts = {}
    for i in range(m):
        for j in range(m):
            shifts.setdefault(f.weights[j] - f.weights[i], []).append((i, j))
    for (freq, axes), X in form.terms.items():
        B = Ud @ X @ f.U
        for s, entries in shifts.items():
            M = np.zeros((m, m), dtype=complex)
            for (i, j) in entries:
                M[i, j] = B[i, j]
            if np.max(np.abs(M)) == 0.0:
                continue
            new_freq = tuple(k + s * mf for k, mf in zip(freq, f.freq))
            add = f.U @ M @ Ud
            key = (new_freq, axes)
            out[key] = out[key] + add if key in out else add
    return LieValuedForm(form.ambient_dim, form.degree, m, out)


def gauge_transform(A: LieValuedForm, t: GaugeMap) -> LieValuedForm:
    """psi* A = t^{-1} A t + t^{-1} dt."""
    return t.conjugate(A) + t.maurer_cartan()


def pulled_back_wg(t: GaugeMap, kappa: float = 1.0) -> TrigForm:
    """t* W_G = -(1/6) <theta, [theta, theta]> with theta = t^{-1}dt."""
    theta = t.maurer_cartan()
    return (-1.0 / 6.0) * pairing(theta, graded_bracket(theta, theta), kappa)


def gauge_variation_defect(A: LieValuedForm, t: GaugeMap,
                           kappa: float = 1.0) -> float:
    """Residual of CS(psi*A) - CS(A) = d<t^{-1}At, t^{-1}dt> + t*W_G."""
    lhs = cs_form(gauge_transform(A, t), kappa) - cs_form(A, kappa)
    cross = pairing(t.conjugate(A), t.maurer_cartan(), kappa)
    rhs = cross.d() + pulled_back_wg(t, kappa)
    return (lhs - rhs).max_abs()


# ---------------------------------------------------------------------------
# the shuffle-sum oracle for the graded bracket


def bracket_oracle_value(a: LieValuedForm, b: LieValuedForm,
                         x: Sequence[float],
                         vectors: Sequence[Sequence[float]]) -> np.ndarray:
    """[a, b](v_1..v_{p+q}) via the full permutation sum with 1/(p! q!).

    [a,b](v_1,...,v_{p+q}) = (1/(p! q!)) sum_{sigma} sign(sigma)
        [a(v_{sigma(1)},...,v_{sigma(p)}), b(v_{sigma(p+1)},...)].
    """
    import itertools
    p, q = a.degree, b.degree
    n = p + q
    vs = [np.asarray(v, dtype=float) for v in vectors]
    total = np.zeros((a.matrix_dim, a.matrix_dim), dtype=complex)
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        av = a.evaluate(x, [vs[i] for i in perm[:p]])
        bv = b.evaluate(x, [vs[i] for i in perm[p:]])
        total += sign * (av @ bv - bv @ av)
    return total / (math.factorial(p) * math.factorial(q))


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# -- convenient algebra bases ----------------------------------------------

def su2_basis() -> List[np.ndarray]:
    """i/2 times the Pauli matrices."""
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    return [0.5j * s1, 0.5j * s2, 0.5j * s3]


def su3_basis() -> List[np.ndarray]:
    """i/2 times the Gell-Mann matrices."""
    l = []
    def M(rows):
        return np.array(rows, dtype=complex)
    g = [
        M([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
        M([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]),
        M([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
        M([[0, 0, 1], [0, 0, 0], [1, 0, 0]]),
        M([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]),
        M([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
        M([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]),
        (1 / math.sqrt(3)) * M([[1, 0, 0], [0, 1, 0], [0, 0, -2]]),
    ]
    for m in g:
        l.append(0.5j * m)
    return l
