"""Centralizers in sp(2) and the stabilizer groups acting on v.

Quaternions are realized as 4x4 real matrices of left multiplication, so a
2x2 quaternionic matrix is an 8x8 rational matrix.  The complexification
unit ``b`` is kept formal: a complex element is a pair ``(X, Y)`` standing
for ``X + bY``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exactla
from .carcano import GroupSpec, RepAction, make_group
from .weights import UnsupportedRootSystem

Mat = tuple[tuple[Fraction, ...], ...]


class NotSquareIntegrableError(ValueError):
    """The central parameter lies on the Pfaffian-zero set."""


def _mat(rows) -> Mat:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def _zero(n: int) -> Mat:
    return tuple((Fraction(0),) * n for _ in range(n))


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in bt) for r in a)


def mat_add(a: Mat, b: Mat, s: int = 1) -> Mat:
    return tuple(tuple(x + s * y for x, y in zip(r, q)) for r, q in zip(a, b))


def mat_scale(a: Mat, c) -> Mat:
    return tuple(tuple(c * x for x in r) for r in a)


def bracket(a: Mat, b: Mat) -> Mat:
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


def is_zero(a: Mat) -> bool:
    return all(x == 0 for r in a for x in r)


def flatten(a: Mat) -> list[Fraction]:
    return [x for r in a for x in r]


# --- quaternions -----------------------------------------------------------------

_QMUL = {
    # (left unit, basis element) -> (sign, result index); basis order 1, i, j, k
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion(a=0, b=0, c=0, d=0) -> Mat:
    """Left-multiplication matrix of ``a + b i + c j + d k``."""
    coeffs = (a, b, c, d)
    m = [[Fraction(0)] * 4 for _ in range(4)]
    for u, cu in enumerate(coeffs):
        if not cu:
            continue
        for e in range(4):
            s, r = _QMUL[(u, e)]
            m[r][e] += s * Fraction(cu)
    return _mat(m)


def quaternion_matrix(entries: Sequence[Sequence[Mat]]) -> Mat:
    """Block matrix from a square array of 4x4 quaternion blocks."""
    n = len(entries)
    rows = []
    for i in range(n):
        for r in range(4):
            row = []
            for j in range(n):
                row.extend(entries[i][j][r])
            rows.append(tuple(row))
    return tuple(rows)


Q0, QI, QJ, QK = quaternion(), quaternion(b=1), quaternion(c=1), quaternion(d=1)
Q1 = quaternion(a=1)


def qm(a, b, c, d) -> Mat:
    """2x2 quaternionic matrix."""
    return quaternion_matrix([[a, b], [c, d]])


def _neg(q: Mat) -> Mat:
    return mat_scale(q, -1)


# --- Lie algebras -------------------------------------------------------------------


@dataclass
class MatrixLieAlgebra:
    name: str
    basis: list[Mat]
    labels: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, x: Mat) -> list[Fraction] | None:
        cols = [flatten(b) for b in self.basis]
        a = [list(r) for r in zip(*cols)]
        return exactla.solve(a, flatten(x))

    def element(self, coeffs: Sequence) -> Mat:
        out = _zero(len(self.basis[0]))
        for c, b in zip(coeffs, self.basis):
            if c:
                out = mat_add(out, mat_scale(b, Fraction(c)))
        return out

    def is_closed(self) -> bool:
        return all(
            self.coordinates(bracket(a, b)) is not None
            for i, a in enumerate(self.basis)
            for b in self.basis[i + 1:]
        )

    def derived_dim(self) -> int:
        vecs = [flatten(bracket(a, b)) for i, a in enumerate(self.basis) for b in self.basis[i + 1:]]
        return exactla.rank(vecs) if vecs else 0

    def center(self) -> list[Mat]:
        sub = centralizer_basis(self.basis, self.basis)
        return sub


def sp2() -> MatrixLieAlgebra:
    """sp(2) as 2x2 quaternionic skew-Hermitian matrices."""
    basis = [
        qm(QI, Q0, Q0, Q0), qm(QJ, Q0, Q0, Q0), qm(QK, Q0, Q0, Q0),
        qm(Q0, Q0, Q0, QI), qm(Q0, Q0, Q0, QJ), qm(Q0, Q0, Q0, QK),
        qm(Q0, Q1, _neg(Q1), Q0), qm(Q0, QI, QI, Q0), qm(Q0, QJ, QJ, Q0), qm(Q0, QK, QK, Q0),
    ]
    labels = ["i|0", "j|0", "k|0", "0|i", "0|j", "0|k", "1 off", "i off", "j off", "k off"]
    return MatrixLieAlgebra("sp(2)", basis, labels)


def centralizer_basis(span: Sequence[Mat], targets: Sequence[Mat]) -> list[Mat]:
    """Elements of span(span) commuting with every matrix in ``targets``."""
    rows: list[list[Fraction]] = []
    images = [[flatten(bracket(t, b)) for b in span] for t in targets]
    for img in images:
        for r in zip(*img):
            if any(r):
                rows.append(list(r))
    ns = exactla.nullspace(rows, len(span))
    out = []
    for v in ns:
        m = _zero(len(span[0]))
        for c, b in zip(v, span):
            if c:
                m = mat_add(m, mat_scale(b, c))
        out.append(m)
    return out


@dataclass
class CentralizerResult:
    element: Mat
    basis: list[Mat]
    dim: int
    tag: str
    fingerprint: tuple


def _tag(sub: MatrixLieAlgebra, total_dim: int, total_name: str) -> tuple[str, tuple]:
    d = sub.dim
    der = sub.derived_dim() if d else 0
    cen = sub.center() if d else []
    fp: tuple = (d, der, len(cen))
    if d == total_dim:
        return total_name, fp
    if der == 0:
        return ("cartan" if d == 2 else f"abelian({d})"), fp
    if (d, der, len(cen)) == (4, 3, 1):
        # u(2) and sp(1)+u(1) share this fingerprint; the center acts invertibly only for u(2)
        z = cen[0]
        kernel = len(exactla.nullspace([list(r) for r in z], len(z)))
        fp = fp + (kernel,)
        return ("u(2)" if kernel == 0 else "sp(1)+u(1)"), fp
    return f"dim{d}", fp


def centralizer(alg: MatrixLieAlgebra, x: Mat) -> CentralizerResult:
    """Exact centralizer of ``x`` in ``alg``."""
    if alg.coordinates(x) is None:
        raise ValueError("element is not in the algebra")
    basis = centralizer_basis(alg.basis, [x])
    sub = MatrixLieAlgebra(f"z({alg.name})", basis)
    tag, fp = _tag(sub, alg.dim, alg.name)
    return CentralizerResult(x, basis, len(basis), tag, fp)


def z_element(a1, a2) -> Mat:
    """``diag(a1 i, a2 i)`` in sp(2)."""
    return qm(quaternion(b=a1), Q0, Q0, quaternion(b=a2))


Z_CASES = {
    # case name -> (a1, a2, expected dimension, expected tag)
    "a1=0": (0, 1, 4, "sp(1)+u(1)"),
    "a2=0": (1, 0, 4, "sp(1)+u(1)"),
    "generic": (1, 2, 2, "cartan"),
    "a1=a2": (1, 1, 4, "u(2)"),
    "a1=-a2": (1, -1, 4, "u(2)"),
}


# --- complexified root vectors ---------------------------------------------------


def cbracket(p, q):
    """Bracket of ``X1 + bY1`` and ``X2 + bY2``."""
    (x1, y1), (x2, y2) = p, q
    return (mat_add(bracket(x1, x2), bracket(y1, y2), -1), mat_add(bracket(x1, y2), bracket(y1, x2)))


def eigen_functional(z, cartan: Sequence[Mat]) -> tuple[Fraction, ...] | None:
    """Coefficients lambda with ``[H_l, Z] = -b lambda_l Z`` for each Cartan element.

    Returns None when Z is not a simultaneous eigenvector.  The sign
    convention identifies the quaternion unit i with ``-b``.
    """
    x, y = z
    out = []
    for h in cartan:
        bx, by = cbracket((h, _zero(len(h))), z)
        # -b c (x + b y) = c y - b c x
        c = None
        for u, v in zip(flatten(by), flatten(x)):
            if v:
                c = -u / v
                break
        if c is None:
            for u, v in zip(flatten(bx), flatten(y)):
                if v:
                    c = u / v
                    break
        if c is None:
            return None
        if mat_add(bx, mat_scale(y, c), -1) != _zero(len(h)) or mat_add(by, mat_scale(x, -c), -1) != _zero(len(h)):
            return None
        out.append(c)
    return tuple(out)


def listed_root_vectors() -> list[tuple[str, tuple, tuple[int, int]]]:
    """The eight complexified root vectors with their listed functionals."""
    vecs = []
    for s in (1, -1):
        vecs.append((f"(j{'+' if s > 0 else '-'}bk, 0; 0, 0)", (qm(QJ, Q0, Q0, Q0), qm(mat_scale(QK, s), Q0, Q0, Q0)), (s, 0)))
        vecs.append((f"(0, 0; 0, j{'+' if s > 0 else '-'}bk)", (qm(Q0, Q0, Q0, QJ), qm(Q0, Q0, Q0, mat_scale(QK, s))), (0, s)))
        vecs.append(
            (f"(0, 1{'+' if s > 0 else '-'}bi; -1{'+' if s > 0 else '-'}bi, 0)",
             (qm(Q0, Q1, _neg(Q1), Q0), qm(Q0, mat_scale(QI, s), mat_scale(QI, s), Q0)), (s, -s))
        )
        vecs.append(
            (f"(0, j{'+' if s > 0 else '-'}bk; j{'+' if s > 0 else '-'}bk, 0)",
             (qm(Q0, QJ, QJ, Q0), qm(Q0, mat_scale(QK, s), mat_scale(QK, s), Q0)), (s, s))
        )
    return vecs


@dataclass
class RootVectorCheck:
    name: str
    listed: tuple[int, int]
    computed: tuple[Fraction, ...] | None
    scale: Fraction | None

    @property
    def eigen(self) -> bool:
        return self.computed is not None

    @property
    def proportional(self) -> bool:
        return self.scale is not None and self.scale > 0


def verify_root_vectors_sp2() -> list[RootVectorCheck]:
    """Check each listed vector is an exact ad-eigenvector and compare functionals.

    ``scale`` is the positive factor relating the computed functional to the
    listed one: 1 on the short roots, 2 on the long roots ``2 eps_l``.
    """
    cartan = [z_element(1, 0), z_element(0, 1)]
    out = []
    for name, z, listed in listed_root_vectors():
        comp = eigen_functional(z, cartan)
        scale = None
        if comp is not None:
            ratios = {c / l for c, l in zip(comp, listed) if l}
            zeros_ok = all(c == 0 for c, l in zip(comp, listed) if not l)
            if len(ratios) == 1 and zeros_ok:
                scale = ratios.pop()
        out.append(RootVectorCheck(name, listed, comp, scale))
    return out


# --- stabilizer group specs -----------------------------------------------------------

STABILIZER_ROWS = {
    "17": "U(1) x Sp(n) on C^{2n}",
    "18": "centralizer of a torus of Sp(2), times Sp(n), on C^2 (x) C^{2n}",
    "20a": "U(1) x SU(n) on C^n_+ + C^n_-",
    "20b": "U(1)^2 x SU(n) on C^n_1 + C^n_2",
    "22": "T^2 x Sp(n) on C^{2n}_+ + C^{2n}_-",
    "ubd1": "maximal torus of U(n) on C^n",
    "11a": "U(1) x Sp(n) x Sp(m) on C^{2n}",
    "11b": "{+-1} x Sp(n) x Sp(m) on C^{2n} (identity component)",
    "11c": "Sp(n) x Sp(m) on C^{2n}",
}

MIN_PARAMS = {"17": {"n": 1}, "18": {"n": 1}, "20a": {"n": 3}, "20b": {"n": 3}, "22": {"n": 1},
              "ubd1": {"n": 2}, "11a": {"n": 1, "m": 1}, "11b": {"n": 1, "m": 1}, "11c": {"n": 1, "m": 1}}


def stabilizer_spec(row: str, params: dict | None = None, case: str = "generic") -> GroupSpec:
    """GroupSpec of the stabilizer of a generic (or specified) central parameter."""
    if row not in STABILIZER_ROWS:
        raise UnsupportedRootSystem(f"no stabilizer case for row {row!r}")
    p = dict(MIN_PARAMS[row])
    p.update(params or {})
    n = p["n"]
    src = ("stabilizer", row)
    if row == "17":
        return GroupSpec(make_group([f"Sp({n})"], 1), RepAction("standard", (0,), (1,)), f"U(1)xSp({n})", src)
    if row == "18":
        if case in ("a1=0", "a2=0"):
            raise NotSquareIntegrableError("z_a with a vanishing entry is not square integrable")
        if case in ("a1=a2", "a1=-a2"):
            return GroupSpec(make_group(["U(2)", f"Sp({n})"]), RepAction("tensor", (0, 1)), f"U(2)xSp({n})", src)
        if case == "generic":
            act = RepAction.direct_sum(RepAction("standard", (0,), (1, 0)), RepAction("standard", (0,), (0, 1)))
            return GroupSpec(make_group([f"Sp({n})"], 2), act, f"U(1)^2xSp({n})", src)
        raise UnsupportedRootSystem(f"unknown case {case!r} for row 18")
    if row == "20a":
        if n < 3:
            raise ValueError("entry 20a needs n >= 3")
        act = RepAction.direct_sum(RepAction("standard", (0,), (1,)), RepAction("standard", (0,), (-1,)))
        return GroupSpec(make_group([f"SU({n})"], 1), act, f"U(1)xSU({n})", src)
    if row == "20b":
        act = RepAction.direct_sum(RepAction("standard", (0,), (1, 0)), RepAction("standard", (0,), (0, 1)))
        return GroupSpec(make_group([f"SU({n})"], 2), act, f"U(1)^2xSU({n})", src)
    if row == "22":
        act = RepAction.direct_sum(RepAction("standard", (0,), (1, 0)), RepAction("standard", (0,), (0, 1)))
        return GroupSpec(make_group([f"Sp({n})"], 2), act, f"T^2xSp({n})", src)
    if row == "ubd1":
        parts = [RepAction("trivial", (), tuple(int(i == j) for j in range(n))) for i in range(n)]
        return GroupSpec(make_group([], n), RepAction.direct_sum(*parts), f"T^{n}", src)
    m = p["m"]
    if row == "11a":
        return GroupSpec(make_group([f"Sp({n})", f"Sp({m})"], 1), RepAction("standard", (0,), (1,)), f"U(1)xSp({n})xSp({m})", src)
    return GroupSpec(make_group([f"Sp({n})", f"Sp({m})"], 0), RepAction("standard", (0,)), f"Sp({n})xSp({m})", src)
