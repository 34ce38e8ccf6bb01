"""Characters as exact weight multisets, and their decomposition.

Two independent decomposition routes are provided and kept separate on
purpose: highest-weight peeling (:func:`decompose`) and the Brauer-Klimyk
formula (:func:`tensor_decompose_klimyk`).
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .weights import (
    CompactGroup,
    DominantLabel,
    NotDominantError,
    RootSystem,
    Weight,
    as_group,
    dominant_representative,
    weyl_orbit,
)


class InvalidCharacterError(ValueError):
    """Raised when peeling leaves a residual: the input was not a character."""

    def __init__(self, message, decomposition=None):
        super().__init__(message)
        self.decomposition = decomposition


class WeightMultiset:
    """Exact map from weights to positive multiplicities over one group."""

    __slots__ = ("group", "_d")

    def __init__(self, group, entries: Mapping[Weight, int] | Iterable[tuple[Weight, int]] = ()):
        self.group = as_group(group)
        items = entries.items() if isinstance(entries, Mapping) else entries
        d: dict[Weight, int] = {}
        n = self.group.ambient
        for w, m in items:
            w = tuple(w)
            if len(w) != n:
                raise ValueError(f"weight {w} has length {len(w)}, expected {n}")
            d[w] = d.get(w, 0) + m
        self._d = {w: m for w, m in d.items() if m}

    @classmethod
    def _raw(cls, group, d):
        obj = cls.__new__(cls)
        obj.group = group
        obj._d = {w: m for w, m in d.items() if m}
        return obj

    def __getitem__(self, w) -> int:
        return self._d.get(tuple(w), 0)

    def __iter__(self):
        return iter(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def __contains__(self, w) -> bool:
        return tuple(w) in self._d

    def items(self):
        return self._d.items()

    def as_dict(self) -> dict[Weight, int]:
        return dict(self._d)

    @property
    def dim(self) -> int:
        """Total size counted with multiplicity."""
        return sum(self._d.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightMultiset) and self.group == other.group and self._d == other._d

    def __repr__(self) -> str:
        body = ", ".join(f"{w}: {m}" for w, m in sorted(self._d.items()))
        return f"WeightMultiset({self.group.name}, {{{body}}})"

    def is_weyl_invariant(self) -> bool:
        g = self.group
        for w, m in self._d.items():
            for k, i in g.simple_reflections():
                if self._d.get(g.reflect(w, k, i), 0) != m:
                    return False
        return True

    def dominant_part(self) -> dict[Weight, int]:
        g = self.group
        return {w: m for w, m in self._d.items() if g.is_dominant(w)}


def trivial(group) -> WeightMultiset:
    g = as_group(group)
    return WeightMultiset._raw(g, {g.zero: 1})


# --- irreducible characters ------------------------------------------------


@lru_cache(maxsize=None)
def _freudenthal(rs: RootSystem, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    """Dominant weights of the irrep with highest weight ``lam`` and their multiplicities."""
    dom = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in rs.positive_roots:
                nu = rs.normalize(tuple(x - y for x, y in zip(mu, a)))
                if nu not in dom and rs.is_dominant(nu):
                    dom.add(nu)
                    nxt.append(nu)
        frontier = nxt
    order = sorted(dom, key=lambda w: (-rs.height(w), w))
    r2 = rs.rho2

    def shifted_norm(w):
        v = tuple(2 * x + y for x, y in zip(w, r2))
        return rs.form(v, v)

    top = shifted_norm(lam)
    mult: dict[Weight, int] = {lam: 1}
    fold_cache: dict[Weight, Weight] = {}

    def m_of(w):
        d = fold_cache.get(w)
        if d is None:
            d = dominant_representative(w, rs, shifted=False)[0]
            fold_cache[w] = d
        return mult.get(d, 0)

    for mu in order[1:]:
        acc = Fraction(0)
        for a in rs.positive_roots:
            k = 1
            while True:
                nu = rs.normalize(tuple(x + k * y for x, y in zip(mu, a)))
                m = m_of(nu)
                if not m:
                    break
                acc += m * rs.form(nu, a)
                k += 1
        # (lam+rho)^2 - (mu+rho)^2 in the doubled normalization carries a factor 4
        val = 8 * acc / (top - shifted_norm(mu))
        if val.denominator != 1 or val <= 0:
            raise AssertionError(f"Freudenthal produced {val} at {mu} for {lam}")
        mult[mu] = int(val)
    return tuple(sorted(mult.items()))


@lru_cache(maxsize=None)
def _factor_irrep(rs: RootSystem, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    out: dict[Weight, int] = {}
    for mu, m in _freudenthal(rs, lam):
        for w in weyl_orbit(mu, rs):
            out[w] = m
    return tuple(out.items())


def irrep_weights(label: DominantLabel | Weight, group=None) -> WeightMultiset:
    """Full weight multiset of the irreducible representation with highest weight ``label``."""
    if not isinstance(label, DominantLabel):
        label = DominantLabel(tuple(label), as_group(group))
    g = label.group
    blocks, charges = g.split(label.weight)
    parts = [_factor_irrep(f, b) for f, b in zip(g.factors, blocks)]
    d: dict[Weight, int] = {}
    for combo in itertools.product(*parts):
        w: list[int] = []
        m = 1
        for wt, mm in combo:
            w.extend(wt)
            m *= mm
        w.extend(charges)
        d[tuple(w)] = m
    return WeightMultiset._raw(g, d)


# --- operations on characters -----------------------------------------------


def _same_group(a: WeightMultiset, b: WeightMultiset) -> CompactGroup:
    if a.group != b.group:
        raise ValueError(f"group mismatch: {a.group.name} vs {b.group.name}")
    return a.group


def _convolve(a: Mapping[Weight, int], b: Mapping[Weight, int]) -> dict[Weight, int]:
    out: dict[Weight, int] = defaultdict(int)
    for w1, m1 in a.items():
        for w2, m2 in b.items():
            out[tuple(x + y for x, y in zip(w1, w2))] += m1 * m2
    return out


def tensor(a: WeightMultiset, b: WeightMultiset) -> WeightMultiset:
    g = _same_group(a, b)
    return WeightMultiset._raw(g, _convolve(a._d, b._d))


def direct_sum(*parts: WeightMultiset) -> WeightMultiset:
    g = parts[0].group
    d: dict[Weight, int] = defaultdict(int)
    for p in parts:
        _same_group(parts[0], p)
        for w, m in p.items():
            d[w] += m
    return WeightMultiset._raw(g, d)


def dual(a: WeightMultiset) -> WeightMultiset:
    g = a.group
    return WeightMultiset._raw(g, {g.normalize(tuple(-x for x in w)): m for w, m in a.items()})


def adams(a: WeightMultiset, k: int) -> WeightMultiset:
    """Power-sum operation: every weight scaled by ``k``."""
    return WeightMultiset._raw(a.group, {tuple(k * x for x in w): m for w, m in a.items()})


def sym_power(a: WeightMultiset, d: int) -> WeightMultiset:
    """Character of the ``d``-th symmetric power by Newton's identity.

    ``h_d = (1/d) * sum_{k=1..d} p_k h_{d-k}``.  Intermediate sums can be
    large, so multiplicities stay as Python integers.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return sym_powers(a, d)[d]


def sym_powers(a: WeightMultiset, dmax: int) -> list[WeightMultiset]:
    """``[S^0 a, S^1 a, ..., S^dmax a]`` sharing one Newton recursion."""
    g = a.group
    h: list[dict[Weight, int]] = [{g.zero: 1}]
    p = [None] + [adams(a, k)._d for k in range(1, dmax + 1)]
    for n in range(1, dmax + 1):
        acc: dict[Weight, int] = defaultdict(int)
        for k in range(1, n + 1):
            for w, m in _convolve(p[k], h[n - k]).items():
                acc[w] += m
        hn = {}
        for w, m in acc.items():
            q, r = divmod(m, n)
            if r:
                raise AssertionError("Newton recursion produced a non-integral coefficient")
            if q:
                hn[w] = q
        h.append(hn)
    return [WeightMultiset._raw(g, x) for x in h]


def sym_power_enumerate(a: WeightMultiset, d: int) -> WeightMultiset:
    """Oracle: sum over all degree-``d`` monomials in a basis of weight vectors."""
    g = a.group
    basis = [w for w, m in a.items() for _ in range(m)]
    out: dict[Weight, int] = defaultdict(int)
    for combo in itertools.combinations_with_replacement(range(len(basis)), d):
        w = g.zero
        for i in combo:
            w = tuple(x + y for x, y in zip(w, basis[i]))
        out[w] += 1
    return WeightMultiset._raw(g, out)


def sym_power_dim(n: int, d: int) -> int:
    return comb(n + d - 1, d)


def exterior_power(a: WeightMultiset, d: int) -> WeightMultiset:
    """Character of the ``d``-th exterior power, ``e_d = (1/d) sum (-1)^{k-1} p_k e_{d-k}``."""
    g = a.group
    e: list[dict[Weight, int]] = [{g.zero: 1}]
    for n in range(1, d + 1):
        acc: dict[Weight, int] = defaultdict(int)
        for k in range(1, n + 1):
            s = 1 if k % 2 else -1
            for w, m in _convolve(adams(a, k)._d, e[n - k]).items():
                acc[w] += s * m
        e.append({w: m // n for w, m in acc.items() if m})
    return WeightMultiset._raw(g, e[d])


def with_charges(a: WeightMultiset, target: CompactGroup, place) -> WeightMultiset:
    """Re-embed ``a`` into ``target`` using ``place(weight) -> weight``."""
    return WeightMultiset._raw(target, {place(w): m for w, m in a.items()})


# --- decomposition -----------------------------------------------------------


@dataclass
class Decomposition:
    """Irreducible constituents (highest weight -> multiplicity) and peeling residual."""

    group: CompactGroup
    terms: dict[Weight, int] = field(default_factory=dict)
    residual: WeightMultiset | None = None

    def labels(self) -> list[DominantLabel]:
        return [DominantLabel(w, self.group) for w in self.terms]

    @property
    def dim(self) -> int:
        return sum(m * self.group.weyl_dim(w) for w, m in self.terms.items())

    @property
    def multiplicity_free(self) -> bool:
        return all(m == 1 for m in self.terms.values())

    def ordered(self) -> list[tuple[Weight, int]]:
        return sorted(self.terms.items(), key=lambda kv: self.group.sort_key(kv[0]), reverse=True)

    def __eq__(self, other) -> bool:
        return isinstance(other, Decomposition) and self.group == other.group and self.terms == other.terms


def decompose(a: WeightMultiset) -> Decomposition:
    """Highest-weight peeling.

    Repeatedly take the dominant weight of greatest height (ties broken
    lexicographically) and subtract the full character of that irrep.

    Raises
    ------
    InvalidCharacterError
        If the input is not a nonnegative combination of irreducible
        characters; the partial decomposition and residual are attached.
    """
    g = a.group
    res = dict(a._d)
    dominant = {w for w in res if g.is_dominant(w)}
    terms: dict[Weight, int] = {}
    while True:
        live = [w for w in dominant if res.get(w, 0) != 0]
        if not live:
            break
        top = max(live, key=g.sort_key)
        c = res[top]
        if c < 0:
            break
        terms[top] = c
        for w, m in irrep_weights(top, g).items():
            v = res.get(w, 0) - c * m
            if v:
                res[w] = v
            else:
                res.pop(w, None)
        dominant.intersection_update(res)
    residual = WeightMultiset._raw(g, res)
    dec = Decomposition(g, terms, residual)
    if len(residual):
        raise InvalidCharacterError(f"peeling left {len(residual)} residual weights", dec)
    return dec


def tensor_decompose_klimyk(lam: DominantLabel | Weight, mu: DominantLabel | Weight, group=None) -> Decomposition:
    """Brauer-Klimyk: sum over weights nu of V(mu) of sign * [fold(lam + nu + rho) - rho]."""
    if not isinstance(lam, DominantLabel):
        lam = DominantLabel(tuple(lam), as_group(group))
    if not isinstance(mu, DominantLabel):
        mu = DominantLabel(tuple(mu), lam.group)
    if lam.group != mu.group:
        raise ValueError("labels belong to different groups")
    g = lam.group
    acc: dict[Weight, int] = defaultdict(int)
    for nu, m in irrep_weights(mu).items():
        w = tuple(x + y for x, y in zip(lam.weight, nu))
        rep, sign, stab = g.dominant_representative(w, shifted=True)
        if not stab:
            acc[rep] += sign * m
    terms = {w: m for w, m in acc.items() if m}
    if any(m < 0 for m in terms.values()):
        raise AssertionError("Klimyk sum produced a negative multiplicity")
    return Decomposition(g, terms, WeightMultiset._raw(g, {}))


def sp_tensor_terms(r: int, s: int, n: int) -> dict[tuple[int, int], int]:
    """Decompose ``S^r(C^{2n}) (x) S^s(C^{2n})`` for Sp(n), n >= 2.

    Each constituent has highest weight ``a*xi_1 + u*xi_2``; it is reported
    under the key ``(v, u)`` with ``a = r + s - 2v``, matching the indexing of
    the two-parameter branching sum.
    """
    from .weights import build_root_system

    rs = build_root_system("C", n, low_rank=True)
    A = rs.from_dynkin([r] + [0] * (n - 1))
    B = rs.from_dynkin([s] + [0] * (n - 1))
    dec = decompose(tensor(irrep_weights(A, rs), irrep_weights(B, rs)))
    out = {}
    for w, m in dec.terms.items():
        labels = rs.pairings(w)
        if any(labels[2:]):
            raise AssertionError(f"unexpected constituent {labels}")
        a, u = labels[0], labels[1]
        v, rem = divmod(r + s - a, 2)
        if rem:
            raise AssertionError("parity mismatch in Sp branching")
        out[(v, u)] = m
    return out
