"""Root systems, integral weights and Weyl group folding.

Weights are stored as integer tuples in a per-family lattice coordinate
system:

* ``A`` (unitary): epsilon coordinates of U(n), length n.
* ``A`` (special): epsilon coordinates of SU(n) modulo the all-ones vector,
  normalized so the last coordinate is 0.
* ``B`` and ``D``: doubled epsilon coordinates, so spin weights are integral.
  All coordinates of a genuine weight share one parity.
* ``C`` and ``G2``: epsilon coordinates (G2 lives in the sum-zero plane of R^3).
* ``E6``: fundamental-weight (Dynkin label) coordinates.

Every computation is exact.  Pairings with coroots are integers, and the
invariant form is rational.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Weight = tuple[int, ...]


class UnsupportedRootSystem(ValueError):
    pass


class NotDominantError(ValueError):
    pass


def _cartan_A(r):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)] for i in range(r)]


def standard_cartan(family: str, rank: int) -> list[list[int]]:
    """Textbook Cartan matrix with ``C[i][j] = <alpha_i, alpha_j^vee>``."""
    if rank == 0:
        return []
    if family == "A":
        return _cartan_A(rank)
    if family == "B":
        c = _cartan_A(rank)
        if rank >= 2:
            c[rank - 2][rank - 1] = -2
        return c
    if family == "C":
        c = _cartan_A(rank)
        if rank >= 2:
            c[rank - 1][rank - 2] = -2
        return c
    if family == "D":
        if rank == 1:
            return [[2]]
        if rank == 2:
            return [[2, 0], [0, 2]]
        c = _cartan_A(rank)
        c[rank - 2][rank - 1] = c[rank - 1][rank - 2] = 0
        c[rank - 3][rank - 1] = c[rank - 1][rank - 3] = -1
        return c
    if family == "G2":
        return [[2, -1], [-3, 2]]
    if family == "E6":
        c = [[2 if i == j else 0 for j in range(6)] for i in range(6)]
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]:
            c[i][j] = c[j][i] = -1
        return c
    raise UnsupportedRootSystem(f"unknown family {family!r}")


_POSITIVE_ROOT_COUNT = {
    "A": lambda r: r * (r + 1) // 2,
    "B": lambda r: r * r,
    "C": lambda r: r * r,
    "D": lambda r: r * (r - 1),
    "G2": lambda r: 6,
    "E6": lambda r: 36,
}


def _unit(n, i, s=1):
    v = [0] * n
    v[i] = s
    return v


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Root datum of one simple (or low-rank degenerate) factor.

    Build instances with :func:`build_root_system`; the constructor does no
    validation of its own.
    """

    family: str
    rank: int
    ambient: int
    simple_roots: tuple[Weight, ...]
    fundamental_weights: tuple[Weight, ...]
    scale: int = 1
    unitary: bool = False
    gram: tuple[tuple[Fraction, ...], ...] | None = None  # None means dot product
    positive_roots: tuple[Weight, ...] = field(default=(), repr=False)
    _coroot: tuple[tuple[tuple[int, ...], int], ...] = field(default=(), repr=False)
    _height: tuple[Fraction, ...] = field(default=(), repr=False)

    @property
    def name(self) -> str:
        if self.family == "A":
            return f"{'U' if self.unitary else 'SU'}({self.rank + 1})"
        if self.family == "D" and self.rank == 0:
            return "SO(2)"
        if self.family in ("G2", "E6"):
            return self.family
        return f"{self.family}{self.rank}"

    @property
    def quotient(self) -> bool:
        """True for SU(n): weights are taken modulo the all-ones vector."""
        return self.family == "A" and not self.unitary

    def normalize(self, w: Sequence[int]) -> Weight:
        if self.quotient:
            last = w[-1]
            return tuple(x - last for x in w)
        return tuple(w)

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        """Invariant bilinear form (up to a positive family constant)."""
        if self.gram is not None:
            return sum(
                (self.gram[i][j] * x[i] * y[j] for i in range(self.ambient) for j in range(self.ambient) if x[i] and y[j]),
                Fraction(0),
            )
        if self.quotient:
            return Fraction(self.ambient * sum(a * b for a, b in zip(x, y)) - sum(x) * sum(y))
        return Fraction(sum(a * b for a, b in zip(x, y)))

    def pairing(self, w: Sequence[int], i: int) -> int:
        """<w, alpha_i^vee> as an exact integer."""
        num, den = self._coroot[i]
        p = sum(a * b for a, b in zip(num, w))
        q, r = divmod(p, den)
        if r:
            raise ValueError(f"{w} is not an integral weight of {self.name}")
        return q

    def pairings(self, w: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.pairing(w, i) for i in range(self.rank))

    def reflect(self, w: Sequence[int], i: int) -> Weight:
        p = self.pairing(w, i)
        a = self.simple_roots[i]
        return self.normalize(tuple(x - p * y for x, y in zip(w, a)))

    def is_dominant(self, w: Sequence[int]) -> bool:
        return all(self.pairing(w, i) >= 0 for i in range(self.rank))

    def cartan_matrix(self) -> list[list[int]]:
        return [[self.pairing(self.simple_roots[i], j) for j in range(self.rank)] for i in range(self.rank)]

    @property
    def zero(self) -> Weight:
        return (0,) * self.ambient

    @property
    def rho2(self) -> Weight:
        """Twice the half-sum of positive roots (always integral)."""
        s = self.zero
        for a in self.positive_roots:
            s = _add(s, a)
        return self.normalize(s)

    def height(self, w: Sequence[int]) -> Fraction:
        """<w, rho^vee>: strictly increasing along every positive root."""
        return sum((c * x for c, x in zip(self._height, w) if x), Fraction(0))

    def to_epsilon(self, w: Sequence[int]) -> tuple[Fraction, ...]:
        if self.family == "E6":
            raise UnsupportedRootSystem("E6 weights are kept in fundamental-weight coordinates")
        return tuple(Fraction(x, self.scale) for x in w)

    def from_epsilon(self, eps: Sequence) -> Weight:
        if self.family == "E6":
            raise UnsupportedRootSystem("E6 weights are kept in fundamental-weight coordinates")
        out = []
        for x in eps:
            y = Fraction(x) * self.scale
            if y.denominator != 1:
                raise ValueError(f"{eps} is not representable in {self.name} coordinates")
            out.append(int(y))
        return self.normalize(out)

    def from_dynkin(self, labels: Sequence[int]) -> Weight:
        """Weight with the given fundamental-weight coefficients."""
        if len(labels) != self.rank:
            raise ValueError("wrong number of Dynkin labels")
        w = self.zero
        for c, f in zip(labels, self.fundamental_weights):
            w = _add(w, tuple(c * x for x in f))
        return self.normalize(w)


def _positive_roots_simple_coords(cartan):
    """Positive roots as coefficient vectors over the simple roots (root strings)."""
    r = len(cartan)
    simple = [tuple(_unit(r, i)) for i in range(r)]
    roots = list(simple)
    seen = set(roots)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                # p = how far beta - k alpha_i stays a root
                p = 0
                cur = beta
                while True:
                    cur = tuple(c - (1 if j == i else 0) for j, c in enumerate(cur))
                    if cur in seen:
                        p += 1
                    else:
                        break
                pair = sum(beta[j] * cartan[j][i] for j in range(r))
                q = p - pair
                if q > 0:
                    new = tuple(c + (1 if j == i else 0) for j, c in enumerate(beta))
                    if new not in seen:
                        seen.add(new)
                        roots.append(new)
                        nxt.append(new)
        frontier = nxt
    return roots


def _invert(mat):
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_LOW_RANK = {"A": 1, "B": 1, "C": 1, "D": 1}


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int, *, unitary: bool = False, low_rank: bool = False) -> RootSystem:
    """Build the root datum for ``family`` and ``rank``.

    Parameters
    ----------
    family : {"A", "B", "C", "D", "G2", "E6"}
    rank : int
        Semisimple rank.  G2 needs 2 and E6 needs 6.
    unitary : bool
        For type A only: use the U(rank+1) weight lattice instead of SU(rank+1).
        ``A`` with rank 0 and ``unitary=True`` is the circle U(1).
    low_rank : bool
        Admit the degenerate members B1 = SO(3), C1 = Sp(1), D1 = SO(2) (a
        torus with no roots) and D2 = SO(4), which the classification tables
        reach at their smallest parameters.

    Raises
    ------
    UnsupportedRootSystem
        For unknown families or ranks outside the admitted range.
    """
    if family in ("G2", "E6"):
        want = 2 if family == "G2" else 6
        if rank != want:
            raise UnsupportedRootSystem(f"{family} has rank {want}, not {rank}")
    elif family in _MIN_RANK:
        lo = _LOW_RANK[family] if low_rank else _MIN_RANK[family]
        if family == "A" and unitary:
            lo = 0
        if rank < lo:
            raise UnsupportedRootSystem(f"{family}{rank} is not supported (minimum rank {lo})")
        if unitary and family != "A":
            raise UnsupportedRootSystem("unitary=True only applies to type A")
    else:
        raise UnsupportedRootSystem(f"unknown family {family!r}")

    r = rank
    gram = None
    scale = 1
    if family == "A":
        n = r + 1
        simple = [_sub(_unit(n, i), _unit(n, i + 1)) for i in range(r)]
        fund = [tuple([1] * (j + 1) + [0] * (n - j - 1)) for j in range(r)]
        ambient = n
    elif family == "B":
        scale = 2
        simple = [tuple(2 * x for x in _sub(_unit(r, i), _unit(r, i + 1))) for i in range(r - 1)]
        simple.append(tuple(_unit(r, r - 1, 2)))
        fund = [tuple([2] * (j + 1) + [0] * (r - j - 1)) for j in range(r - 1)]
        fund.append(tuple([1] * r))
        ambient = r
    elif family == "C":
        simple = [_sub(_unit(r, i), _unit(r, i + 1)) for i in range(r - 1)]
        simple.append(tuple(_unit(r, r - 1, 2)))
        fund = [tuple([1] * (j + 1) + [0] * (r - j - 1)) for j in range(r)]
        ambient = r
    elif family == "D":
        scale = 2
        ambient = r
        if r == 1:
            simple, fund = [], []
            r = 0
        else:
            simple = [tuple(2 * x for x in _sub(_unit(r, i), _unit(r, i + 1))) for i in range(r - 1)]
            simple.append(tuple(2 * x for x in _add(_unit(r, r - 2), _unit(r, r - 1))))
            fund = [tuple([2] * (j + 1) + [0] * (r - j - 1)) for j in range(r - 2)]
            fund.append(tuple([1] * (r - 1) + [-1]))
            fund.append(tuple([1] * r))
    elif family == "G2":
        ambient = 3
        simple = [(1, -1, 0), (-2, 1, 1)]
        fund = [(0, -1, 1), (-1, -1, 2)]
    else:  # E6 in Dynkin coordinates
        ambient = 6
        cart = standard_cartan("E6", 6)
        simple = [tuple(row) for row in cart]
        fund = [tuple(_unit(6, j)) for j in range(6)]
        gram = _invert(cart)

    simple = tuple(tuple(a) for a in simple)
    proto = RootSystem(family, r, ambient, simple, tuple(map(tuple, fund)), scale, unitary, gram)
    coroot = []
    for a in simple:
        aa = proto.form(a, a)
        vec = [proto.form(_unit(ambient, k), a) * 2 / aa for k in range(ambient)]
        den = 1
        for x in vec:
            den = den * x.denominator // _gcd(den, x.denominator)
        coroot.append((tuple(int(x * den) for x in vec), den))
    object.__setattr__(proto, "_coroot", tuple(coroot))

    cart = proto.cartan_matrix()
    # Positive roots from root strings, converted to lattice coordinates.
    pos = []
    for coeffs in _positive_roots_simple_coords(cart):
        v = proto.zero
        for c, a in zip(coeffs, simple):
            v = _add(v, tuple(c * x for x in a))
        pos.append(proto.normalize(v))
    object.__setattr__(proto, "positive_roots", tuple(pos))
    hvec = [Fraction(0)] * ambient
    for a in pos:
        aa = proto.form(a, a)
        for k in range(ambient):
            hvec[k] += proto.form(_unit(ambient, k), a) / aa
    object.__setattr__(proto, "_height", tuple(hvec))
    _check(proto, family)
    return proto


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _check(rs: RootSystem, family: str) -> None:
    """Type invariants; a failure here is a bug in the tables above."""
    if rs.cartan_matrix() != standard_cartan(family, rs.rank):
        raise AssertionError(f"Cartan matrix mismatch for {rs.name}")
    if rs.rank and len(rs.positive_roots) != _POSITIVE_ROOT_COUNT[family](rs.rank):
        raise AssertionError(f"positive root count mismatch for {rs.name}")
    for i, f in enumerate(rs.fundamental_weights):
        if rs.pairings(f) != tuple(int(i == j) for j in range(rs.rank)):
            raise AssertionError(f"fundamental weight {i} of {rs.name} misaligned")


def dominant_representative(w: Sequence[int], rs: RootSystem, shifted: bool = True) -> tuple[Weight, int, bool]:
    """Fold ``w`` into the dominant chamber.

    With ``shifted`` (the default) the dot action ``w -> s(w + rho) - rho`` is
    used, as in Brauer-Klimyk.  Returns ``(representative, sign, stabilized)``
    where ``sign`` is the determinant of the folding element and
    ``stabilized`` is True when the (shifted) weight sits on a wall.
    """
    if shifted:
        r2 = rs.rho2
        v = rs.normalize(tuple(2 * x + y for x, y in zip(w, r2)))
    else:
        v = tuple(w)
    sign = 1
    while True:
        for i in range(rs.rank):
            if rs.pairing(v, i) < 0:
                v = rs.reflect(v, i)
                sign = -sign
                break
        else:
            break
    stabilized = any(rs.pairing(v, i) == 0 for i in range(rs.rank))
    if shifted:
        v = rs.normalize(tuple((x - y) // 2 for x, y in zip(v, rs.rho2)))
    return v, sign, stabilized


def weyl_orbit(w: Sequence[int], rs: RootSystem) -> set[Weight]:
    """Full Weyl orbit of ``w`` by breadth-first reflection."""
    start = rs.normalize(w)
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for i in range(rs.rank):
            y = rs.reflect(x, i)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def weyl_dim_rs(w: Sequence[int], rs: RootSystem) -> int:
    if not rs.is_dominant(w):
        raise NotDominantError(f"{tuple(w)} is not dominant for {rs.name}")
    r2 = rs.rho2
    lam2 = tuple(2 * x + y for x, y in zip(w, r2))
    num = Fraction(1)
    for a in rs.positive_roots:
        num *= rs.form(lam2, a) / rs.form(r2, a)
    assert num.denominator == 1
    return int(num)


@dataclass(frozen=True)
class CompactGroup:
    """Product of simple factors and central circles.

    A weight is the concatenation of one block per factor followed by one
    integer charge per circle.
    """

    factors: tuple[RootSystem, ...] = ()
    circles: int = 0

    @property
    def ambient(self) -> int:
        return sum(f.ambient for f in self.factors) + self.circles

    @property
    def offsets(self) -> tuple[int, ...]:
        out, k = [], 0
        for f in self.factors:
            out.append(k)
            k += f.ambient
        out.append(k)
        return tuple(out)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def zero(self) -> Weight:
        return (0,) * self.ambient

    @property
    def name(self) -> str:
        parts = ["U(1)"] * self.circles + [f.name for f in self.factors]
        return "x".join(parts) if parts else "trivial"

    def split(self, w: Sequence[int]) -> tuple[list[Weight], Weight]:
        off = self.offsets
        blocks = [tuple(w[off[i]:off[i + 1]]) for i in range(len(self.factors))]
        return blocks, tuple(w[off[-1]:])

    def join(self, blocks: Sequence[Sequence[int]], charges: Sequence[int]) -> Weight:
        out: list[int] = []
        for b in blocks:
            out.extend(b)
        out.extend(charges)
        return tuple(out)

    def normalize(self, w: Sequence[int]) -> Weight:
        blocks, ch = self.split(w)
        return self.join([f.normalize(b) for f, b in zip(self.factors, blocks)], ch)

    def is_dominant(self, w: Sequence[int]) -> bool:
        blocks, _ = self.split(w)
        return all(f.is_dominant(b) for f, b in zip(self.factors, blocks))

    def height(self, w: Sequence[int]) -> Fraction:
        blocks, _ = self.split(w)
        return sum((f.height(b) for f, b in zip(self.factors, blocks)), Fraction(0))

    def simple_reflections(self):
        """Yield ``(factor index, simple index)`` pairs."""
        for k, f in enumerate(self.factors):
            for i in range(f.rank):
                yield k, i

    def reflect(self, w: Sequence[int], k: int, i: int) -> Weight:
        blocks, ch = self.split(w)
        blocks[k] = self.factors[k].reflect(blocks[k], i)
        return self.join(blocks, ch)

    def dominant_representative(self, w: Sequence[int], shifted: bool = True) -> tuple[Weight, int, bool]:
        blocks, ch = self.split(w)
        out, sign, stab = [], 1, False
        for f, b in zip(self.factors, blocks):
            v, s, st = dominant_representative(b, f, shifted)
            out.append(v)
            sign *= s
            stab = stab or st
        return self.join(out, ch), sign, stab

    def weyl_dim(self, w: Sequence[int]) -> int:
        blocks, _ = self.split(w)
        d = 1
        for f, b in zip(self.factors, blocks):
            d *= weyl_dim_rs(b, f)
        return d

    def sort_key(self, w: Sequence[int]):
        """Peeling order: height first, then lexicographic."""
        return (self.height(w), tuple(w))


def as_group(x) -> CompactGroup:
    if isinstance(x, CompactGroup):
        return x
    if isinstance(x, RootSystem):
        return CompactGroup((x,), 0)
    raise TypeError(f"expected RootSystem or CompactGroup, got {type(x).__name__}")


@dataclass(frozen=True)
class DominantLabel:
    """Highest weight of an irreducible representation of ``group``."""

    weight: Weight
    group: CompactGroup

    def __post_init__(self):
        object.__setattr__(self, "group", as_group(self.group))
        w = self.group.normalize(self.weight)
        if len(w) != self.group.ambient:
            raise ValueError(f"weight {self.weight} has the wrong length for {self.group.name}")
        if not self.group.is_dominant(w):
            raise NotDominantError(f"{self.weight} is not dominant for {self.group.name}")
        object.__setattr__(self, "weight", w)


def weyl_dim(label: DominantLabel | tuple, group=None) -> int:
    """Weyl dimension formula.

    Accepts a :class:`DominantLabel` or a ``(weight, group)`` pair.
    """
    if isinstance(label, DominantLabel):
        return label.group.weyl_dim(label.weight)
    g = as_group(group)
    if not g.is_dominant(label):
        raise NotDominantError(f"{label} is not dominant for {g.name}")
    return g.weyl_dim(label)
