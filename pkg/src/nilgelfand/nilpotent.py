"""Two-step nilpotent Lie algebras n = z + v with exact structure constants.

A basis of v is ``v_0 .. v_{dimV-1}`` and a basis of z is ``z_0 .. z_{dimZ-1}``.
The bracket is stored sparsely as ``[v_i, v_j] = sum_k c[i][j][k] z_k`` for
``i < j``; brackets with z vanish.  For t in z^* the skew form
``b_t(x, y) = t([x, y])`` and its Pfaffian decide square integrability of the
generic representations with central character t.

Hermitian algebras are built from ``Im h(v, w)`` with ``h(v, w) = sum
conj(v_a) w_a`` over C, H or O, with the real basis of each coordinate taken in
the order (1, i [, j, k, ...]).  With this choice ``Pf(b_t) = t^n`` on the
complex Heisenberg algebra, so the global basis sign is +1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

import yaml

from .exactla import det

Bracket = Mapping[tuple[int, int], Mapping[int, Fraction]]


class UnsupportedAlgebra(ValueError):
    pass


# ---------------------------------------------------------------- algebras


@dataclass(frozen=True)
class NilpotentAlgebra:
    """Structure constants of a 2-step nilpotent algebra.

    ``z_split`` is the dimension of the derived part z' = [n, n] when the
    algebra is built as n' + z''; the trailing ``dim_z - z_split`` central
    coordinates then form z''.
    """

    name: str
    dim_z: int
    dim_v: int
    bracket: Bracket
    z_split: int | None = None
    # sign relating Pf(b_t) to its positive model (t^n, |t|^{2n}, ...) in this basis
    pfaffian_sign: int = 1
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        for (i, j), col in self.bracket.items():
            if not (0 <= i < j < self.dim_v):
                raise ValueError(f"bracket key {(i, j)} must satisfy 0 <= i < j < dimV")
            for k in col:
                if not 0 <= k < self.dim_z:
                    raise ValueError(f"central index {k} out of range")

    @property
    def dim(self) -> int:
        return self.dim_z + self.dim_v

    @property
    def derived_dim(self) -> int:
        return self.dim_z if self.z_split is None else self.z_split

    def c(self, i: int, j: int, k: int) -> Fraction:
        """Coefficient of z_k in [v_i, v_j]."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self.bracket.get((i, j), {}).get(k, Fraction(0))
        return -self.bracket.get((j, i), {}).get(k, Fraction(0))

    def tensor(self) -> list[list[list[Fraction]]]:
        """Dense ``c[i][j][k]``."""
        return [[[self.c(i, j, k) for k in range(self.dim_z)]
                 for j in range(self.dim_v)] for i in range(self.dim_v)]

    def entries(self) -> list[tuple[int, int, int, Fraction]]:
        """Structure constants as sorted ``(i, j, k, value)`` with i < j."""
        return sorted((i, j, k, v) for (i, j), col in self.bracket.items()
                      for k, v in col.items() if v != 0)

    def bracket_vectors(self, x: Sequence, y: Sequence) -> list[Fraction]:
        """[x, y] for x, y in v, as a vector in z."""
        out = [Fraction(0)] * self.dim_z
        for (i, j), col in self.bracket.items():
            s = Fraction(x[i]) * y[j] - Fraction(x[j]) * y[i]
            if s:
                for k, v in col.items():
                    out[k] += s * v
        return out

    def full_bracket(self, x: Sequence, y: Sequence) -> list[Fraction]:
        """Bracket on n = z + v; vectors are z-coordinates then v-coordinates."""
        zpart = self.bracket_vectors(x[self.dim_z:], y[self.dim_z:])
        return zpart + [Fraction(0)] * self.dim_v

    def jacobi_holds(self) -> bool:
        """Jacobi identity on basis triples of n."""
        n = self.dim
        basis = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                ab = self.full_bracket(basis[a], basis[b])
                if not any(ab):
                    continue
                for c in range(n):
                    s = [x + y + w for x, y, w in zip(
                        self.full_bracket(ab, basis[c]),
                        self.full_bracket(self.full_bracket(basis[b], basis[c]), basis[a]),
                        self.full_bracket(self.full_bracket(basis[c], basis[a]), basis[b]))]
                    if any(s):
                        return False
        return True


def from_entries(name: str, dim_z: int, dim_v: int,
                 entries: Iterable[tuple[int, int, int, object]],
                 z_split: int | None = None) -> NilpotentAlgebra:
    """Algebra from ``(i, j, k, value)`` records; entries with i > j are flipped."""
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i, j, k, v in entries:
        v = Fraction(v)
        if i == j:
            if v:
                raise ValueError("diagonal bracket entry must vanish")
            continue
        if i > j:
            i, j, v = j, i, -v
        col = br.setdefault((i, j), {})
        col[k] = col.get(k, Fraction(0)) + v
    br = {key: {k: v for k, v in col.items() if v} for key, col in br.items()}
    br = {key: col for key, col in br.items() if col}
    return NilpotentAlgebra(name, dim_z, dim_v, br, z_split)


# ------------------------------------------------------ hypercomplex numbers


@lru_cache(maxsize=None)
def _octonion_triples() -> tuple[tuple[int, int, int], ...]:
    text = resources.files(__package__).joinpath("data/octonions.yaml").read_text()
    return tuple(tuple(t) for t in yaml.safe_load(text)["triples"])


@lru_cache(maxsize=None)
def unit_table(field_name: str) -> dict[tuple[int, int], tuple[int, int]]:
    """``(a, b) -> (sign, c)`` with ``u_a u_b = sign * u_c`` for the real units."""
    dims = {"C": 2, "H": 4, "O": 8}
    if field_name not in dims:
        raise UnsupportedAlgebra(f"unknown division algebra {field_name!r}")
    d = dims[field_name]
    table: dict[tuple[int, int], tuple[int, int]] = {}
    for a in range(d):
        table[(0, a)] = (1, a)
        table[(a, 0)] = (1, a)
    for a in range(1, d):
        table[(a, a)] = (-1, 0)
    if field_name == "C":
        return table
    triples = ((1, 2, 3),) if field_name == "H" else _octonion_triples()
    for a, b, c in triples:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            table[(x, y)] = (1, z)
            table[(y, x)] = (-1, z)
    return table


def hc_mul(x: Sequence, y: Sequence, field_name: str) -> list:
    """Product of two elements given by real coordinates."""
    table = unit_table(field_name)
    out = [0] * len(x)
    for a, xa in enumerate(x):
        if not xa:
            continue
        for b, yb in enumerate(y):
            if yb:
                s, c = table[(a, b)]
                out[c] += s * xa * yb
    return out


def hc_conj(x: Sequence) -> list:
    return [x[0]] + [-v for v in x[1:]]


_FIELD_DIM = {"C": 2, "H": 4, "O": 8}


def _unit(d: int, a: int) -> list[int]:
    return [int(b == a) for b in range(d)]


def hermitian_heisenberg(n: int, field_name: str = "C") -> NilpotentAlgebra:
    """h_{n;F}: v = F^n, z = Im F, [v, w] = Im sum conj(v_a) w_a."""
    if n < 0:
        raise UnsupportedAlgebra("n must be nonnegative")
    if field_name == "O" and n != 1:
        raise UnsupportedAlgebra("the octonionic Heisenberg algebra exists only for n = 1")
    d = _FIELD_DIM[field_name]
    entries = []
    for a in range(n):
        for p in range(d):
            for q in range(p + 1, d):
                prod = hc_mul(hc_conj(_unit(d, p)), _unit(d, q), field_name)
                for k in range(1, d):
                    if prod[k]:
                        entries.append((a * d + p, a * d + q, k - 1, prod[k]))
    label = {"C": "heisenberg", "H": "quaternionic_heisenberg", "O": "octonionic_heisenberg"}
    alg = from_entries(f"{label[field_name]}({n})", d - 1, n * d, entries)
    # Pf(b_t) is t^n over C, (-|t|^2)^n over H and |t|^4 over O in this basis
    sign = (-1) ** n if field_name == "H" else 1
    return replace(alg, pfaffian_sign=sign)


def heisenberg(n: int) -> NilpotentAlgebra:
    return hermitian_heisenberg(n, "C")


def quaternionic_heisenberg(n: int) -> NilpotentAlgebra:
    return hermitian_heisenberg(n, "H")


def octonionic_heisenberg() -> NilpotentAlgebra:
    return hermitian_heisenberg(1, "O")


def matrix_heisenberg(p: int, n: int, field_name: str = "C") -> NilpotentAlgebra:
    """Im F^{p x p} + F^{p x n} with [v, w] the skew-hermitian part of v w^*.

    z is coordinatized by the imaginary parts of the diagonal entries, then
    the real coordinates of each entry (a, b) with a < b.  For F = C this is
    u(p) + C^{p x n}; for F = H it is sp(p) + H^{p x n}.
    """
    if field_name not in ("C", "H"):
        raise UnsupportedAlgebra("matrix Heisenberg algebras are built over C or H")
    d = _FIELD_DIM[field_name]
    zindex: dict[tuple[int, int, int], int] = {}
    for a in range(p):
        for u in range(1, d):
            zindex[(a, a, u)] = len(zindex)
    for a in range(p):
        for b in range(a + 1, p):
            for u in range(d):
                zindex[(a, b, u)] = len(zindex)
    coords = [(a, c, u) for a in range(p) for c in range(n) for u in range(d)]
    half = Fraction(1, 2)
    entries = []
    for x, (a1, c1, u1) in enumerate(coords):
        for y, (a2, c2, u2) in enumerate(coords):
            if y <= x or c1 != c2:
                continue
            # v w^* has the single entry m at (a1, a2); keep its skew-hermitian part
            m = hc_mul(_unit(d, u1), hc_conj(_unit(d, u2)), field_name)
            s = {}
            s[(a1, a2)] = [half * v for v in m]
            mc = [half * v for v in hc_conj(m)]
            prev = s.get((a2, a1), [Fraction(0)] * d)
            s[(a2, a1)] = [q - v for q, v in zip(prev, mc)]
            for (r, c), val in s.items():
                if r == c:
                    for u in range(1, d):
                        if val[u]:
                            entries.append((x, y, zindex[(r, r, u)], val[u]))
                elif r < c:
                    for u in range(d):
                        if val[u]:
                            entries.append((x, y, zindex[(r, c, u)], val[u]))
    label = "u" if field_name == "C" else "sp"
    return from_entries(f"{label}({p})+{field_name}^({p}x{n})", len(zindex), len(coords), entries)


# ------------------------------------------------------------ constructions


def zero_algebra(dim_v: int) -> NilpotentAlgebra:
    """Abelian algebra with no center coordinates."""
    return NilpotentAlgebra(f"abelian({dim_v})", 0, dim_v, {})


def direct_sum(*algs: NilpotentAlgebra) -> NilpotentAlgebra:
    """Block-diagonal sum; z and v coordinates are concatenated in order."""
    entries = []
    zo = vo = 0
    for alg in algs:
        for i, j, k, v in alg.entries():
            entries.append((i + vo, j + vo, k + zo, v))
        zo += alg.dim_z
        vo += alg.dim_v
    name = " + ".join(a.name for a in algs) if algs else "abelian(0)"
    sign = 1
    for alg in algs:
        sign *= alg.pfaffian_sign
    return replace(from_entries(name, zo, vo, entries), pfaffian_sign=sign)


def with_center(alg: NilpotentAlgebra, extra: int, label: str | None = None) -> NilpotentAlgebra:
    """n' + z'' with z'' a bracket-trivial center of dimension ``extra``."""
    name = f"{alg.name} + R^{extra}" if label is None else f"{alg.name} + {label}"
    return NilpotentAlgebra(name, alg.dim_z + extra, alg.dim_v, alg.bracket,
                            z_split=alg.dim_z, pfaffian_sign=alg.pfaffian_sign)


def split_control() -> NilpotentAlgebra:
    """h_{1;C} + R where the extra central line is hit by the bracket.

    ``[v_0, v_1] = z'_0 + z''_0``, so ``Pf(b_{(t', t'')}) = t' + t''`` and the
    t''-independence fails.  Used as a negative control.
    """
    return NilpotentAlgebra("split_control", 2, 2,
                            {(0, 1): {0: Fraction(1), 1: Fraction(1)}}, z_split=1)


def _int(params: Mapping, key: str) -> int:
    if key not in params:
        raise UnsupportedAlgebra(f"missing parameter {key!r}")
    return int(params[key])


def _h(k: int) -> NilpotentAlgebra:
    return heisenberg(k)


def _hq(k: int) -> NilpotentAlgebra:
    return quaternionic_heisenberg(k)


# Table-8 algebras: z is the whole center, n' = n.
_INDVIN: dict[str, object] = {
    "4a": lambda p: _h(2 * _int(p, "n")),
    "4b": lambda p: _h(2 * _int(p, "n") + 1),
    "7": lambda p: _h(_int(p, "n")),
    "10": lambda p: _h(_int(p, "n") * (_int(p, "n") + 1) // 2),
    "11": lambda p: _h(_int(p, "n") * (_int(p, "n") - 1) // 2),
    "17": lambda p: _hq(_int(p, "n")),
    "18": lambda p: matrix_heisenberg(2, _int(p, "n"), "H"),
    "19": lambda p: _h(_int(p, "m") * _int(p, "n")),
    "20a": lambda p: matrix_heisenberg(2, _int(p, "n"), "C"),
    "20b": lambda p: matrix_heisenberg(2, _int(p, "n"), "C"),
    "21": lambda p: _h(4 * _int(p, "n")),
    "22": lambda p: matrix_heisenberg(2, 2 * _int(p, "n"), "C"),
    "23": lambda p: _h(6 * _int(p, "n")),
}


def _ipms(row: str, p: Mapping) -> NilpotentAlgebra:
    base = row.rstrip("abc") if row[:2] in ("11", "18", "19", "20", "21") else row
    if base == "1":
        n = _int(p, "n")
        return with_center(_h(n), n * n - 1, f"su({n})")
    if base == "3":
        n = _int(p, "n")
        return with_center(direct_sum(_h(n), _h(n * (n - 1) // 2)), 0)
    if base == "6":
        return with_center(_h(4 * _int(p, "m")), 6)
    if base == "7":
        m, n = _int(p, "m"), _int(p, "n")
        return with_center(direct_sum(_h(m * n), _h(m)), 0)
    if base == "8":
        n = _int(p, "n")
        return with_center(direct_sum(_h(2 * n), _h(2 * n)), 0)
    if base == "9":
        n = _int(p, "n")
        return with_center(direct_sum(_hq(n), _h(2 * n)), 0)
    if base == "10":
        n = _int(p, "n")
        return with_center(direct_sum(_hq(n), _hq(n)), 0)
    if base == "11":
        n, m = _int(p, "n"), _int(p, "m")
        return with_center(_hq(n), 4 * n * m, f"H^({n}x{m})")
    if base == "18":
        return with_center(_h(2 * _int(p, "n")), 3, "su(2)")
    if base == "19":
        return with_center(direct_sum(_h(2 * _int(p, "n")), _h(2)), 0)
    if base == "20":
        return with_center(direct_sum(_h(2 * _int(p, "n")), _h(2 * _int(p, "m"))), 0)
    if base == "21":
        return with_center(direct_sum(_h(2 * _int(p, "n")), _h(8)), 6)
    raise UnsupportedAlgebra(f"no strict direct system row {row!r}")


def build_algebra(name: str, params: Mapping | None = None) -> NilpotentAlgebra:
    """Build a named algebra.

    Names: ``heisenberg`` (n), ``quaternionic_heisenberg`` (n),
    ``octonionic_heisenberg``, ``matrix_heisenberg`` (p, n, field),
    ``abelian`` (n), ``indVin`` (row, rank parameters) and ``indIpms``
    (row, rank parameters).
    """
    p = dict(params or {})
    if name == "heisenberg":
        return heisenberg(_int(p, "n"))
    if name == "quaternionic_heisenberg":
        return quaternionic_heisenberg(_int(p, "n"))
    if name == "octonionic_heisenberg":
        return octonionic_heisenberg()
    if name == "matrix_heisenberg":
        return matrix_heisenberg(_int(p, "p"), _int(p, "n"), p.get("field", "C"))
    if name == "abelian":
        return zero_algebra(_int(p, "n"))
    if name == "indVin":
        row = str(p.pop("row"))
        if row not in _INDVIN:
            raise UnsupportedAlgebra(f"no direct system row {row!r} with a built algebra")
        alg = _INDVIN[row](p)
        return replace(alg, name=f"indVin[{row}]: {alg.name}")
    if name == "indIpms":
        row = str(p.pop("row"))
        alg = _ipms(row, p)
        return replace(alg, name=f"indIpms[{row}]: {alg.name}")
    raise UnsupportedAlgebra(f"unsupported algebra {name!r}")


INDVIN_ROWS = tuple(_INDVIN)
INDIPMS_ROWS = ("1", "3", "6", "7", "8", "9", "10", "11a", "11b", "11c",
                "18a", "18b", "18c", "19a", "19b", "19c",
                "20aa", "20ab", "20ac", "20ba", "20bb", "20bc", "20ca", "20cb", "20cc",
                "21a", "21b", "21c")


# ------------------------------------------------------------- skew forms


@dataclass(frozen=True)
class CentralFunctional:
    t: tuple[Fraction, ...]

    def __init__(self, t: Iterable):
        object.__setattr__(self, "t", tuple(Fraction(x) for x in t))


@dataclass(frozen=True)
class SkewForm:
    matrix: tuple[tuple[Fraction, ...], ...]

    def __init__(self, matrix: Iterable[Iterable]):
        m = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        n = len(m)
        for i in range(n):
            if len(m[i]) != n:
                raise ValueError("skew form must be square")
            for j in range(n):
                if m[i][j] != -m[j][i]:
                    raise ValueError("matrix is not skew-symmetric")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return len(self.matrix)


def _as_t(alg: NilpotentAlgebra, t) -> tuple[Fraction, ...]:
    vals = t.t if isinstance(t, CentralFunctional) else tuple(
        Fraction(x) for x in (t if isinstance(t, (list, tuple)) else [t]))
    if len(vals) != alg.dim_z:
        raise ValueError(f"functional has length {len(vals)}, algebra has dimZ = {alg.dim_z}")
    return vals


def b_form(alg: NilpotentAlgebra, t) -> SkewForm:
    """``b_t(v_i, v_j) = sum_k t_k c[i][j][k]``."""
    tv = _as_t(alg, t)
    n = alg.dim_v
    m = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), col in alg.bracket.items():
        s = sum((tv[k] * v for k, v in col.items()), Fraction(0))
        m[i][j] = s
        m[j][i] = -s
    return SkewForm(m)


def congruent(form: SkewForm, a: Sequence[Sequence]) -> SkewForm:
    """Form in the basis ``u_i = sum_j a[j][i] v_j``, i.e. ``a^T B a``."""
    b = form.matrix
    n = len(b)
    ba = [[sum((b[i][k] * Fraction(a[k][j]) for k in range(n)), Fraction(0))
           for j in range(n)] for i in range(n)]
    return SkewForm([[sum((Fraction(a[k][i]) * ba[k][j] for k in range(n)), Fraction(0))
                      for j in range(n)] for i in range(n)])


def restrict(form: SkewForm, k: int) -> SkewForm:
    """Restriction to the span of the first k basis vectors."""
    return SkewForm([row[:k] for row in form.matrix[:k]])


def pfaffian_expand(matrix: Sequence[Sequence]) -> Fraction:
    """Pfaffian by expansion along the first remaining row, memoized per call."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    if n % 2:
        return Fraction(0)
    memo: dict[tuple[int, ...], Fraction] = {}

    def pf(idx: tuple[int, ...]) -> Fraction:
        if not idx:
            return Fraction(1)
        if idx in memo:
            return memo[idx]
        first, rest = idx[0], idx[1:]
        total = Fraction(0)
        for pos, j in enumerate(rest):
            a = m[first][j]
            if a:
                sub = rest[:pos] + rest[pos + 1:]
                term = a * pf(sub)
                total += term if pos % 2 == 0 else -term
        memo[idx] = total
        return total

    return pf(tuple(range(n)))


def pfaffian_tridiagonal(matrix: Sequence[Sequence]) -> Fraction:
    """Pfaffian by exact skew Gaussian elimination (Parlett-Reid style)."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    if n % 2:
        return Fraction(0)
    pf = Fraction(1)
    for k in range(0, n - 1, 2):
        p = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k + 1:
            a[k + 1], a[p] = a[p], a[k + 1]
            for row in a:
                row[k + 1], row[p] = row[p], row[k + 1]
            pf = -pf
        piv = a[k][k + 1]
        pf *= piv
        if k + 2 < n:
            tau = [a[k][j] / piv for j in range(k + 2, n)]
            r1 = a[k + 1][k + 2:]
            for ii, i in enumerate(range(k + 2, n)):
                row = a[i]
                ti, ri = tau[ii], r1[ii]
                if ti == 0 and ri == 0:
                    continue
                for jj, j in enumerate(range(k + 2, n)):
                    row[j] += ri * tau[jj] - ti * r1[jj]
    return pf


EXPANSION_LIMIT = 12


def pfaffian(form: SkewForm | Sequence[Sequence], *, check: bool = True) -> Fraction:
    """Exact Pfaffian; odd dimension gives 0.

    Expansion is used up to dimension 12 and elimination beyond.  With
    ``check`` the identity Pf^2 = det is confirmed against an independent
    determinant.
    """
    m = form.matrix if isinstance(form, SkewForm) else form
    n = len(m)
    if n % 2:
        return Fraction(0)
    pf = pfaffian_expand(m) if n <= EXPANSION_LIMIT else pfaffian_tridiagonal(m)
    if check and pf * pf != det(m):
        raise ArithmeticError("Pfaffian squared differs from determinant")
    return pf


def is_square_integrable(alg: NilpotentAlgebra, t) -> bool:
    return pfaffian(b_form(alg, t)) != 0


def pfaffian_at(alg: NilpotentAlgebra, t) -> Fraction:
    return pfaffian(b_form(alg, t))


def random_functional(dim: int, rng: random.Random, box: int = 5,
                      allow_zero: bool = False) -> tuple[Fraction, ...]:
    """Random lattice point of ``[-box, box]^dim`` divided by a small denominator."""
    while True:
        den = rng.randint(1, 3)
        t = tuple(Fraction(rng.randint(-box, box), den) for _ in range(dim))
        if allow_zero or any(t) or dim == 0:
            return t


@dataclass(frozen=True)
class GenericSetReport:
    algebra: str
    trials: int
    nonzero: int
    polynomial_nonzero: bool
    note: str

    @property
    def fraction(self) -> float:
        return self.nonzero / self.trials


def generic_set_witness(alg: NilpotentAlgebra, trials: int = 100, seed: int = 0) -> GenericSetReport:
    """Sample lattice functionals and count those with nonzero Pfaffian."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    nonzero = 0
    for _ in range(trials):
        if pfaffian_at(alg, random_functional(alg.dim_z, rng)) != 0:
            nonzero += 1
    poly_nonzero = nonzero > 0
    if not poly_nonzero and alg.dim_v % 2 == 0:
        # a polynomial vanishing on a grid may still be nonzero; try a point
        # with rapidly growing coordinates, where any nonzero polynomial of
        # degree dimV/2 is nonzero.
        big = alg.dim_v + 1
        t = tuple(Fraction(big) ** (big ** k) for k in range(alg.dim_z))
        poly_nonzero = alg.dim_z > 0 and pfaffian_at(alg, t) != 0
    if poly_nonzero:
        note = "Pfaffian polynomial is not identically zero; its zero set has measure zero"
    else:
        note = "Pfaffian vanishes identically: no square-integrable representations"
    return GenericSetReport(alg.name, trials, nonzero, poly_nonzero, note)


def pfaffian_split_check(alg: NilpotentAlgebra, t_prime: Sequence | None = None,
                         samples: int = 10, seed: int = 0) -> bool:
    """Whether Pf(b_{(t', t'')}) = Pf(b_{(t', 0)}) for sampled t''."""
    if alg.z_split is None:
        raise ValueError("algebra has no declared split z = z' + z''")
    rng = random.Random(seed)
    zp, zpp = alg.z_split, alg.dim_z - alg.z_split
    tp = tuple(Fraction(x) for x in t_prime) if t_prime is not None else random_functional(zp, rng)
    base = pfaffian_at(alg, tp + (Fraction(0),) * zpp)
    for _ in range(samples):
        tpp = random_functional(zpp, rng, allow_zero=True)
        if pfaffian_at(alg, tp + tpp) != base:
            return False
    return True


def formal_degree(alg: NilpotentAlgebra, t, kappa_dim: int = 1) -> Fraction:
    """``|Pf(b_t)| * kappa_dim``; the Haar normalization constant is 1."""
    if kappa_dim < 1:
        raise ValueError("kappa_dim must be a positive integer")
    return abs(pfaffian_at(alg, t)) * kappa_dim


def induced_formal_degree_finite(index: int, deg_gamma) -> Fraction:
    """Formal degree of a representation induced from a finite-index subgroup.

    Returns ``|L/M| * deg(gamma)``.  This holds when the Haar measure of L is
    the invariant measure of L/M normalized to total mass 1 times the Haar
    measure of M; with counting measure on L/M the formal degree is
    ``deg(gamma)`` itself.
    """
    if int(index) != index or index < 1:
        raise ValueError("index must be a positive integer")
    d = Fraction(deg_gamma)
    if d <= 0:
        raise ValueError("formal degree must be positive")
    return index * d
