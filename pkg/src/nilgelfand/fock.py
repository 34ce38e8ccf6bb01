"""Truncated Bargmann-Fock model of the Schroedinger representations of H_n.

Group elements are pairs ``(z, v)`` where z is the real coefficient of i in
the center Im C and v is in C^n, with

    (z, v)(z', v') = (z + z' + Im(v . conj v'), v + v').

For t > 0 the representation is ``pi_t(z, v) = e^{itz} (x)_k D(sqrt(t) v_k)``
with the displacement operator ``D(a) = exp(a a^+ - conj(a) a)`` acting on
the orthonormal monomials ``w[m] = w^m / sqrt(m!)``.  For t < 0 each
``v_k`` is replaced by its conjugate.  Matrix entries are exact finite sums,
so truncation only enters when operators are multiplied.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

import numpy as np

from .nilpotent import heisenberg, pfaffian_at

MultiIndex = tuple[int, ...]

GUARD = 10


# ------------------------------------------------------------------- basis


def multi_indices(n: int, d: int) -> list[MultiIndex]:
    """All multi-indices of total degree d, lexicographically decreasing."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        m = [0] * n
        for c in combo:
            m[c] += 1
        out.append(tuple(m))
    return sorted(out, reverse=True)


@dataclass(frozen=True)
class FockBasis:
    """Monomials ``w[m]`` with ``|m| <= cutoff`` in graded-lexicographic order."""

    n: int
    cutoff: int

    def __post_init__(self):
        if self.n < 1 or self.cutoff < 0:
            raise ValueError("need n >= 1 and cutoff >= 0")

    @property
    def index_list(self) -> list[MultiIndex]:
        return _index_list(self.n, self.cutoff)

    @property
    def size(self) -> int:
        return math.comb(self.n + self.cutoff, self.n)

    def position(self, m: Sequence[int]) -> int:
        return _positions(self.n, self.cutoff)[tuple(m)]

    def degrees(self) -> np.ndarray:
        return np.array([sum(m) for m in self.index_list])


@lru_cache(maxsize=None)
def _index_list(n: int, cutoff: int) -> list[MultiIndex]:
    return [m for d in range(cutoff + 1) for m in multi_indices(n, d)]


@lru_cache(maxsize=None)
def _positions(n: int, cutoff: int) -> dict[MultiIndex, int]:
    return {m: i for i, m in enumerate(_index_list(n, cutoff))}


# ------------------------------------------------------------------- group


@dataclass(frozen=True)
class GroupElement:
    z: float
    v: tuple[complex, ...]

    def __init__(self, z: float, v: Sequence[complex]):
        object.__setattr__(self, "z", float(z))
        object.__setattr__(self, "v", tuple(complex(x) for x in v))

    @property
    def n(self) -> int:
        return len(self.v)

    def inverse(self) -> "GroupElement":
        return GroupElement(-self.z, [-x for x in self.v])

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(0.0, [0j] * n)


def group_multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.n != b.n:
        raise ValueError("group elements have different dimensions")
    h = sum(x * y.conjugate() for x, y in zip(a.v, b.v))
    return GroupElement(a.z + b.z + h.imag, [x + y for x, y in zip(a.v, b.v)])


# ------------------------------------------------------- matrix elements


def _alphas(t: float, v: Sequence[complex]) -> list[complex]:
    if t == 0:
        raise ValueError("t must be nonzero")
    s = math.sqrt(abs(t))
    return [s * (x if t > 0 else x.conjugate()) for x in v]


@lru_cache(maxsize=None)
def _coeff(l: int, m: int, k: int) -> float:
    """``sqrt(l! m!) / (k! (l-k)! (m-k)!)`` via exact integers."""
    num = math.comb(l, k) * math.comb(m, k) * math.factorial(k)
    return num / math.sqrt(math.factorial(l) * math.factorial(m))


def displacement_poly(l: int, m: int, alpha):
    """``<l| D(alpha) |m> * e^{|alpha|^2 / 2}``, a polynomial in alpha, conj(alpha).

    Works elementwise on numpy arrays.
    """
    alpha = np.asarray(alpha, dtype=complex)
    nb = -np.conj(alpha)
    total = np.zeros_like(alpha)
    for k in range(min(l, m) + 1):
        total = total + _coeff(l, m, k) * alpha ** (l - k) * nb ** (m - k)
    return total


def displacement_matrix(alpha: complex, cutoff: int) -> np.ndarray:
    """Single-mode ``<l| D(alpha) |m>`` for ``0 <= l, m <= cutoff``."""
    out = np.empty((cutoff + 1, cutoff + 1), dtype=complex)
    damp = math.exp(-abs(alpha) ** 2 / 2)
    for l in range(cutoff + 1):
        for m in range(cutoff + 1):
            out[l, m] = damp * complex(displacement_poly(l, m, alpha))
    return out


@dataclass(frozen=True)
class FockOperator:
    basis: FockBasis
    t: float
    matrix: np.ndarray
    element: GroupElement

    def column_norms(self) -> np.ndarray:
        return np.linalg.norm(self.matrix, axis=0)

    def norm_defects(self) -> np.ndarray:
        """``1 - |column|^2``: mass of each column escaping past the cutoff."""
        return 1.0 - self.column_norms() ** 2


def operator_matrix(t: float, h: GroupElement, basis: FockBasis) -> FockOperator:
    """Compression of ``pi_t(h)`` to the span of ``basis``."""
    if h.n != basis.n:
        raise ValueError("element and basis have different n")
    alphas = _alphas(t, h.v)
    idx = np.array(basis.index_list, dtype=int)
    mat = np.full((basis.size, basis.size), np.exp(1j * t * h.z), dtype=complex)
    for k, a in enumerate(alphas):
        d1 = displacement_matrix(a, basis.cutoff)
        mat *= d1[idx[:, k][:, None], idx[:, k][None, :]]
    return FockOperator(basis, t, mat, h)


def tail_mass(t: float, h: GroupElement, m: Sequence[int], cutoff: int, band: int = GUARD) -> float:
    """Mass of ``pi_t(h) w[m]`` in degrees ``cutoff < |l| <= cutoff + band``.

    Estimates the norm defect of column m at the given cutoff; the remainder
    beyond the band is negligible for the bands used here.
    """
    wide = operator_matrix(t, h, FockBasis(h.n, cutoff + band))
    col = wide.matrix[:, wide.basis.position(m)]
    deg = wide.basis.degrees()
    return float(np.sum(np.abs(col[deg > cutoff]) ** 2))


def verify_group_law(t: float, a: GroupElement, b: GroupElement, cutoff: int,
                     guard: int = GUARD, window: int | None = None) -> float:
    """Max-entry residual of ``pi(ab) - pi(a) pi(b)`` on low-degree columns.

    Columns of degree at most ``window`` are compared (default
    ``cutoff - guard``).  Fixing the window across cutoffs measures the
    truncation error on a common set of vectors.
    """
    basis = FockBasis(a.n, cutoff)
    win = cutoff - guard if window is None else window
    if win < 0:
        raise ValueError("cutoff too small for the guard band")
    pa = operator_matrix(t, a, basis).matrix
    pb = operator_matrix(t, b, basis).matrix
    pab = operator_matrix(t, group_multiply(a, b), basis).matrix
    cols = basis.degrees() <= win
    diff = pab[:, cols] - (pa @ pb)[:, cols]
    return float(np.max(np.abs(diff))) if diff.size else 0.0


# ------------------------------------------------------------ coefficients


def coefficient(l: Sequence[int], m: Sequence[int], t: float, h: GroupElement) -> complex:
    """``f_{l,m;t}(h) = <w[l], pi_t(h) w[m]>``.

    Entries of the compressed operator do not depend on the cutoff, so this
    evaluates the closed form directly.
    """
    if len(l) != h.n or len(m) != h.n:
        raise ValueError("multi-index length differs from n")
    alphas = _alphas(t, h.v)
    val = complex(np.exp(1j * t * h.z))
    for lk, mk, a in zip(l, m, alphas):
        val *= math.exp(-abs(a) ** 2 / 2) * complex(displacement_poly(lk, mk, a))
    return val


def coefficient_stable(l: Sequence[int], m: Sequence[int], t: float, h: GroupElement,
                       guard: int = GUARD, tol: float = 1e-10) -> bool:
    """Whether the entry read from truncated matrices is unchanged under cutoff + 5."""
    cut = max(sum(l), sum(m)) + guard
    vals = []
    for c in (cut, cut + 5):
        op = operator_matrix(t, h, FockBasis(h.n, c))
        vals.append(op.matrix[op.basis.position(l), op.basis.position(m)])
    return abs(vals[0] - vals[1]) <= tol and abs(vals[0] - coefficient(l, m, t, h)) <= tol


@lru_cache(maxsize=None)
def _grid(n: int, order: int):
    """Gauss-Hermite product nodes in R^{2n} and their weights, flattened."""
    u, w = np.polynomial.hermite.hermgauss(order)
    nodes = [g.ravel() for g in np.meshgrid(*([u] * (2 * n)), indexing="ij")]
    weights = np.ones(order ** (2 * n))
    for g in np.meshgrid(*([w] * (2 * n)), indexing="ij"):
        weights = weights * g.ravel()
    return nodes, weights


def _poly_rows(pairs, t: float, n: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Polynomial parts of ``f_{l,m;t}(0, v)`` at the quadrature nodes."""
    nodes, weights = _grid(n, order)
    # sqrt|t| v = x + i y turns e^{-|t||v|^2} into the Hermite weight
    alphas = []
    for k in range(n):
        vk = nodes[2 * k] + 1j * nodes[2 * k + 1]
        alphas.append(vk if t > 0 else np.conj(vk))
    rows = np.empty((len(pairs), weights.size), dtype=complex)
    for r, (l, m) in enumerate(pairs):
        val = np.ones(weights.size, dtype=complex)
        for k in range(n):
            val = val * displacement_poly(l[k], m[k], alphas[k])
        rows[r] = val
    return rows, weights


def _gram_at(pairs, t: float, n: int, order: int) -> np.ndarray:
    rows, weights = _poly_rows(pairs, t, n, order)
    # d^2v / pi per coordinate; the substitution contributes |t|^{-n}
    return (rows * weights) @ rows.conj().T / (math.pi ** n * abs(t) ** n)


@dataclass(frozen=True)
class QuadratureGram:
    pairs: tuple[tuple[MultiIndex, MultiIndex], ...]
    gram: np.ndarray
    order: int
    converged: bool


def orthogonality_gram(pairs: Sequence[tuple[Sequence[int], Sequence[int]]], t: float,
                       quad_order: int = 8, tol: float = 1e-8, max_order: int = 120) -> QuadratureGram:
    """All inner products ``<f_{l,m;t}, f_{l',m';t}>`` over C^n with ``d^2v / pi``.

    Lebesgue measure divided by pi per complex coordinate is the Haar
    normalization under which the relation reads ``|t|^{-n} d_{ll'} d_{mm'}``.
    The Gaussian factor ``e^{-|t||v|^2}`` is absorbed by Gauss-Hermite nodes
    and the order is doubled until successive results agree to ``tol``.
    """
    pairs = tuple((tuple(l), tuple(m)) for l, m in pairs)
    if not pairs:
        raise ValueError("no index pairs")
    n = len(pairs[0][0])
    if any(len(l) != n or len(m) != n for l, m in pairs):
        raise ValueError("multi-indices must share the same length")
    if n > 2:
        raise ValueError("quadrature is limited to n <= 2")
    if t == 0:
        raise ValueError("t must be nonzero")
    order = quad_order
    prev = _gram_at(pairs, t, n, order)
    while order < max_order:
        nxt = min(2 * order, max_order)
        cur = _gram_at(pairs, t, n, nxt)
        if np.max(np.abs(cur - prev)) < tol:
            return QuadratureGram(pairs, cur, nxt, True)
        order, prev = nxt, cur
    return QuadratureGram(pairs, prev, order, False)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    order: int
    converged: bool


def orthogonality_integral(l: Sequence[int], m: Sequence[int], lp: Sequence[int], mp: Sequence[int],
                           t: float, quad_order: int = 8, tol: float = 1e-8,
                           max_order: int = 120) -> QuadratureResult:
    """``int f_{l,m;t}(0, v) conj(f_{l',m';t}(0, v)) d^2v / pi`` over C^n."""
    g = orthogonality_gram([(l, m), (lp, mp)], t, quad_order, tol, max_order)
    return QuadratureResult(complex(g.gram[0, 1]), g.order, g.converged)


# ------------------------------------------------------- injections zeta'


def zeta_prime_scale(n_small: int, n_large: int, t) -> float:
    """``|t|^{(n_small - n_large)/2}``, the factor applied to coefficients."""
    if n_large < n_small:
        raise ValueError("n_large must be at least n_small")
    if t == 0:
        raise ValueError("t must be nonzero")
    return abs(float(t)) ** ((n_small - n_large) / 2)


def zeta_prime_scale_squared(n_small: int, n_large: int, t) -> Fraction:
    """Exact square of the scale, ``|t|^{n_small - n_large}``."""
    if n_large < n_small or t == 0:
        raise ValueError("need n_large >= n_small and t != 0")
    return abs(Fraction(t)) ** (n_small - n_large)


def pfaffian_ratio_scale_squared(n_small: int, n_large: int, t) -> Fraction:
    """``|Pf(b_{n_small,t}) / Pf(b_{n_large,t})|`` from the Heisenberg algebras."""
    t = Fraction(t)
    return abs(pfaffian_at(heisenberg(n_small), [t]) / pfaffian_at(heisenberg(n_large), [t]))


def pad(m: Sequence[int], n_large: int) -> MultiIndex:
    return tuple(m) + (0,) * (n_large - len(m))


def inject(phi: Mapping[tuple[MultiIndex, MultiIndex], complex], n_large: int):
    """Coefficients of ``zeta'(Psi_{n, phi})`` in the scaled orthonormal set at n_large."""
    return {(pad(l, n_large), pad(m, n_large)): c for (l, m), c in phi.items()}


def project(psi: Mapping[tuple[MultiIndex, MultiIndex], complex], n_small: int):
    """Adjoint of ``inject``: keep terms supported on the first n_small coordinates."""
    out = {}
    for (l, m), c in psi.items():
        if any(l[n_small:]) or any(m[n_small:]):
            continue
        out[(tuple(l[:n_small]), tuple(m[:n_small]))] = c
    return out


@dataclass(frozen=True)
class IsometryReport:
    norm_small: float
    norm_large: float
    defect: float
    round_trip_exact: bool
    quadrature: bool


def _norm_squared(phi, t: float, quad_order: int) -> float:
    """``||sum phi_{lm} |t|^{n/2} f_{l,m;t}||^2`` through the quadrature Gram matrix."""
    keys = sorted(phi)
    n = len(keys[0][0])
    g = orthogonality_gram(keys, t, quad_order).gram * abs(t) ** n
    c = np.array([phi[k] for k in keys], dtype=complex)
    return float((c @ g @ c.conj()).real)


def verify_injection_isometry(n_small: int, n_large: int, t: float,
                              phi: Mapping[tuple[MultiIndex, MultiIndex], complex],
                              quad_order: int = 8) -> IsometryReport:
    """Compare ``||Psi_{n_small, phi}||`` with the norm of its image at n_large.

    Norms are computed by quadrature of the coefficient functions when
    ``n_large <= 2`` and from orthonormality of the scaled set otherwise.
    """
    psi = inject(phi, n_large)
    quad = n_large <= 2
    if quad:
        a = _norm_squared(phi, t, quad_order)
        b = _norm_squared(psi, t, quad_order)
    else:
        a = float(sum(abs(c) ** 2 for c in phi.values()))
        b = float(sum(abs(c) ** 2 for c in psi.values()))
    back = project(psi, n_small)
    return IsometryReport(math.sqrt(a), math.sqrt(b), abs(math.sqrt(a) - math.sqrt(b)),
                          back == dict(phi), quad)
