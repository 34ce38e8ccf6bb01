"""Explicit weight-basis models of v and of the polynomial spaces S^d(v).

A :class:`LinearModel` holds a basis of v indexed by rank-independent keys,
the weight of each basis vector, the diagonal Gram matrix of an invariant
Hermitian form, and exact matrices of the simple raising and lowering
operators.  Keys are chosen so that the model at rank n is literally a
sub-basis of the model at the next rank, which makes embeddings trivial.

Polynomials of degree d are modeled as S^d(v) with the Fock form, in which
distinct monomials are orthogonal and ``|w^a|^2 = prod a_i! g_i^{a_i}``.
"""
from __future__ import annotations

import heapq
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import exactla
from .weights import CompactGroup, RootSystem, UnsupportedRootSystem, Weight

SparseOp = dict[int, list[tuple[int, Fraction]]]  # column -> [(row, coefficient)]


# --- defining representations of single factors --------------------------------


@dataclass(frozen=True)
class _StdModel:
    keys: tuple
    weights: tuple[Weight, ...]
    raising: tuple[tuple[tuple[int, int, Fraction], ...], ...]  # per simple root: (row, col, c)


def _form_matrix(rs: RootSystem, keys) -> list[list[int]] | None:
    """Invariant bilinear form on the defining module, or None for type A."""
    n = len(keys)
    idx = {k: i for i, k in enumerate(keys)}
    if rs.family == "A":
        return None
    J = [[0] * n for _ in range(n)]
    for k in keys:
        if k[0] == "e":
            i, j = idx[k], idx[("f", k[1])]
            J[i][j] = 1
            J[j][i] = -1 if rs.family == "C" else 1
        elif k[0] == "z":
            J[idx[k]][idx[k]] = 1
    return J


@lru_cache(maxsize=None)
def std_model(rs: RootSystem) -> _StdModel:
    """Defining module of a classical factor in an isotropic weight basis."""
    fam = rs.family
    if fam == "A":
        n = rs.rank + 1
        keys = tuple(("e", i) for i in range(1, n + 1))
        eps = [tuple(int(j == i) for j in range(n)) for i in range(n)]
    elif fam in ("B", "C", "D"):
        r = rs.ambient
        keys = tuple(("e", i) for i in range(1, r + 1)) + tuple(("f", i) for i in range(1, r + 1))
        eps = [tuple(int(j == i) for j in range(r)) for i in range(r)]
        eps += [tuple(-int(j == i) for j in range(r)) for i in range(r)]
        if fam == "B":
            keys += (("z",),)
            eps.append((0,) * r)
    else:
        raise UnsupportedRootSystem(f"no explicit model for {rs.name}")
    weights = tuple(rs.from_epsilon(e) for e in eps)
    J = _form_matrix(rs, keys)
    n = len(keys)
    raising = []
    for alpha in rs.simple_roots:
        alpha = rs.normalize(alpha)
        pairs = [
            (a, b)
            for a in range(n)
            for b in range(n)
            if rs.normalize(tuple(x - y for x, y in zip(weights[a], weights[b]))) == alpha
        ]
        if J is None:
            coeffs = [Fraction(1)] * len(pairs)
        else:
            # X = sum c_k E_{a_k b_k} must satisfy X^T J + J X = 0
            rows = []
            for p in range(n):
                for q in range(n):
                    row = []
                    for a, b in pairs:
                        # (E_ab^T J)[p,q] = [p==b] J[a][q];  (J E_ab)[p,q] = J[p][a] [q==b]
                        row.append((J[a][q] if p == b else 0) + (J[p][a] if q == b else 0))
                    if any(row):
                        rows.append(row)
            ns = exactla.nullspace(rows, len(pairs))
            if len(ns) != 1:
                raise AssertionError(f"root space for {alpha} in {rs.name} has dimension {len(ns)}")
            coeffs = ns[0]
        raising.append(tuple((a, b, c) for (a, b), c in zip(pairs, coeffs) if c))
    return _StdModel(keys, weights, tuple(raising))


# --- linear model of v ----------------------------------------------------------


@dataclass
class LinearModel:
    group: CompactGroup
    keys: list = field(default_factory=list)
    weights: list[Weight] = field(default_factory=list)
    gram: list[Fraction] = field(default_factory=list)
    raising: list[SparseOp] = field(default_factory=list)
    lowering: list[SparseOp] = field(default_factory=list)
    index: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.keys)

    def weight_of(self, mono) -> Weight:
        """Weight of a monomial given as a tuple of keys."""
        if not mono:
            return self.group.zero
        return self.group.normalize(_add_weights([self.weights[self.index[k]] for k in mono]))


def _matrices(sm: _StdModel, lower: bool):
    """Dense-by-dict matrices ``X[row][col]`` for each simple root."""
    out = []
    for triples in sm.raising:
        m: dict[int, dict[int, Fraction]] = defaultdict(dict)
        for a, b, c in triples:
            if lower:
                m[b][a] = Fraction(c)
            else:
                m[a][b] = Fraction(c)
        out.append(m)
    return out


def _apply(mat, i):
    """Column i of a dict matrix as {row: coeff}."""
    return {r: row[i] for r, row in mat.items() if i in row}


def build_linear_model(group: CompactGroup, summands) -> LinearModel:
    """Model of a direct sum of summands.

    ``summands`` is a list of ``(kind, factor_indices, charges)`` with kind in
    standard, sym2, wedge2, tensor.
    """
    model = LinearModel(group)
    nops = sum(f.rank for f in group.factors)
    op_offset = [0]
    for f in group.factors:
        op_offset.append(op_offset[-1] + f.rank)
    raising: list[dict] = [defaultdict(dict) for _ in range(nops)]
    lowering: list[dict] = [defaultdict(dict) for _ in range(nops)]
    off = group.offsets

    def place(blocks: dict[int, Weight], charges) -> Weight:
        w = list(group.zero)
        for k, b in blocks.items():
            for j, x in enumerate(b):
                w[off[k] + j] += x
        w[off[-1]:] = list(charges)
        return group.normalize(w)

    for s_idx, (kind, fidx, charges) in enumerate(summands):
        charges = tuple(charges) if charges else (0,) * group.circles
        if kind in ("standard", "sym2", "wedge2"):
            (k,) = fidx
            rs = group.factors[k]
            sm = std_model(rs)
            n = len(sm.keys)
            if kind == "standard":
                local = [((i,), Fraction(1)) for i in range(n)]
            elif kind == "sym2":
                local = [((i, j), Fraction(1 if i == j else 2)) for i in range(n) for j in range(i, n)]
            else:
                local = [((i, j), Fraction(2)) for i in range(n) for j in range(i + 1, n)]
            base = len(model.keys)
            lidx = {t: base + p for p, (t, _) in enumerate(local)}
            for t, g in local:
                model.keys.append((s_idx, kind) + tuple(sm.keys[i] for i in t))
                wt = tuple(sum(x) for x in zip(*(sm.weights[i] for i in t)))
                model.weights.append(place({k: rs.normalize(wt)}, charges))
                model.gram.append(g)
            for lower, target in ((False, raising), (True, lowering)):
                for r, X in enumerate(_matrices(sm, lower)):
                    op = target[op_offset[k] + r]
                    for t, _ in local:
                        img: dict = defaultdict(Fraction)
                        if kind == "standard":
                            for row, c in _apply(X, t[0]).items():
                                img[(row,)] += c
                        else:
                            i, j = (t[0], t[0]) if len(t) == 1 else t
                            if i == j:
                                pure = [(i, i, 1)]
                            else:
                                pure = [(i, j, 1), (j, i, -1 if kind == "wedge2" else 1)]
                            terms: dict = defaultdict(Fraction)
                            for a, b, coef in pure:
                                for row, c in _apply(X, a).items():
                                    terms[(row, b)] += coef * c
                                for row, c in _apply(X, b).items():
                                    terms[(a, row)] += coef * c
                            for (p, q), c in terms.items():
                                if c and (p < q or (p == q and kind == "sym2")):
                                    img[(p, q)] += c
                        col = lidx[t]
                        for tt, c in img.items():
                            if c:
                                op[col][lidx[tt]] = c
        elif kind == "tensor":
            k1, k2 = fidx
            if k1 == k2:
                raise ValueError("tensor action needs two distinct factors")
            r1, r2 = group.factors[k1], group.factors[k2]
            s1, s2 = std_model(r1), std_model(r2)
            base = len(model.keys)
            n2 = len(s2.keys)
            for a in range(len(s1.keys)):
                for b in range(n2):
                    model.keys.append((s_idx, kind, s1.keys[a], s2.keys[b]))
                    model.weights.append(place({k1: s1.weights[a], k2: s2.weights[b]}, charges))
                    model.gram.append(Fraction(1))
            for lower, target in ((False, raising), (True, lowering)):
                for r, X in enumerate(_matrices(s1, lower)):
                    op = target[op_offset[k1] + r]
                    for a in range(len(s1.keys)):
                        for row, c in _apply(X, a).items():
                            for b in range(n2):
                                op[base + a * n2 + b][base + row * n2 + b] = c
                for r, X in enumerate(_matrices(s2, lower)):
                    op = target[op_offset[k2] + r]
                    for b in range(n2):
                        for row, c in _apply(X, b).items():
                            for a in range(len(s1.keys)):
                                op[base + a * n2 + b][base + a * n2 + row] = c
        else:
            raise UnsupportedRootSystem(f"no explicit model for action kind {kind!r}")
    model.index = {k: i for i, k in enumerate(model.keys)}
    model.raising = [{col: sorted(rows.items()) for col, rows in op.items()} for op in raising]
    model.lowering = [{col: sorted(rows.items()) for col, rows in op.items()} for op in lowering]
    return model


# --- polynomial spaces ----------------------------------------------------------

Monomial = tuple  # sorted tuple of basis keys (rank independent)
Vector = dict  # Monomial -> Fraction


def _add_weights(ws):
    return tuple(sum(x) for x in zip(*ws))


class PolySpace:
    """S^d(v) for a :class:`LinearModel`, blocked by weight."""

    def __init__(self, model: LinearModel, d: int):
        self.model = model
        self.d = d
        g = model.group
        self.blocks: dict[Weight, list[Monomial]] = defaultdict(list)
        self.weight_of: dict[Monomial, Weight] = {}
        for combo in itertools.combinations_with_replacement(range(model.dim), d):
            mono = tuple(sorted(model.keys[i] for i in combo))
            w = g.normalize(_add_weights([model.weights[i] for i in combo])) if d else g.zero
            self.blocks[w].append(mono)
            self.weight_of[mono] = w

    def norm2(self, mono: Monomial) -> Fraction:
        out = Fraction(1)
        for k, grp in itertools.groupby(mono):
            a = len(list(grp))
            out *= factorial(a) * self.model.gram[self.model.index[k]] ** a
        return out

    def inner(self, x: Vector, y: Vector) -> Fraction:
        return sum((c * y[m] * self.norm2(m) for m, c in x.items() if m in y), Fraction(0))

    def apply(self, op: SparseOp, vec: Vector) -> Vector:
        """Derivation action of a linear operator on v."""
        out: dict = defaultdict(Fraction)
        idx = self.model.index
        keys = self.model.keys
        for mono, c in vec.items():
            seen = set()
            for pos, k in enumerate(mono):
                if k in seen:
                    continue
                seen.add(k)
                a = mono.count(k)
                rest = mono[:pos] + mono[pos + 1:]
                for row, coef in op.get(idx[k], ()):
                    new = tuple(sorted(rest + (keys[row],)))
                    out[new] += c * a * coef
        return {m: c for m, c in out.items() if c}

    def highest_weight_vectors(self, weight: Weight) -> list[Vector]:
        """Exact basis of the kernel of every simple raising operator on one block."""
        cols = self.blocks.get(weight, [])
        if not cols:
            return []
        rows: dict = {}
        images = []
        for mono in cols:
            img = {}
            for j, op in enumerate(self.model.raising):
                for m, c in self.apply(op, {mono: Fraction(1)}).items():
                    img[(j, m)] = c
                    rows.setdefault((j, m), len(rows))
            images.append(img)
        mat = [[Fraction(0)] * len(cols) for _ in range(len(rows))]
        for ci, img in enumerate(images):
            for key, c in img.items():
                mat[rows[key]][ci] = c
        ns = exactla.nullspace(mat, len(cols))
        return [{cols[i]: x for i, x in enumerate(v) if x} for v in ns]

    def highest_weights(self) -> dict[Weight, int]:
        """Dominant labels of S^d(v) with multiplicities, from explicit vectors."""
        g = self.model.group
        out = {}
        for w in self.blocks:
            if g.is_dominant(w):
                n = len(self.highest_weight_vectors(w))
                if n:
                    out[w] = n
        return out

    def isotypic(self, weight: Weight) -> dict[Weight, list[Vector]]:
        """Echelon basis, per weight block, of the submodule generated by the highest weight vectors."""
        g = self.model.group
        seeds = self.highest_weight_vectors(weight)
        spans: dict[Weight, list[Vector]] = {}
        pending: dict[Weight, list[Vector]] = defaultdict(list)
        pending[weight] = seeds
        heap = [(-g.height(weight), weight)]
        queued = {weight}
        while heap:
            _, w = heapq.heappop(heap)
            basis = self._echelon(w, pending.pop(w, []))
            if not basis:
                continue
            spans[w] = basis
            for op in self.model.lowering:
                for v in basis:
                    img = self.apply(op, v)
                    if not img:
                        continue
                    nw = self.weight_of[next(iter(img))]
                    pending[nw].append(img)
                    if nw not in queued:
                        queued.add(nw)
                        heapq.heappush(heap, (-g.height(nw), nw))
        return spans

    def _echelon(self, w: Weight, vecs: list[Vector]) -> list[Vector]:
        cols = self.blocks[w]
        dense = [[v.get(m, Fraction(0)) for m in cols] for v in vecs]
        red = exactla.row_space_basis(dense)
        return [{cols[i]: x for i, x in enumerate(r) if x} for r in red]

    def restrict(self, vec: Vector, keys: set) -> Vector:
        """Set every variable outside ``keys`` to zero."""
        return {m: c for m, c in vec.items() if all(k in keys for k in m)}


def projector_image(space: PolySpace, basis: list[Vector], x: Vector) -> Vector:
    """Orthogonal projection of ``x`` onto span(basis) for the Fock form."""
    if not basis:
        return {}
    gram = [[space.inner(a, b) for b in basis] for a in basis]
    rhs = [space.inner(x, a) for a in basis]
    coef = exactla.solve(gram, rhs)
    out: dict = defaultdict(Fraction)
    for c, b in zip(coef, basis):
        for m, v in b.items():
            out[m] += c * v
    return {m: v for m, v in out.items() if v}
