"""Multiplicity-free certification of polynomial rings under compact groups.

A :class:`GroupSpec` is a product group together with its action on a
complex vector space v.  The polynomial ring on v is decomposed degree by
degree as ``S^d(v*)`` and searched for repeated constituents across all
degrees up to a bound.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import polymodel
from .repcalc import (
    Decomposition,
    WeightMultiset,
    decompose,
    direct_sum,
    dual,
    irrep_weights,
    sym_power,
    sym_powers,
    tensor,
)
from .weights import (
    CompactGroup,
    RootSystem,
    UnsupportedRootSystem,
    Weight,
    build_root_system,
)

_FACTOR_RE = re.compile(r"^(SU|U|Sp|SO|Spin)\((\d+)\)$")


def parse_factor(name: str) -> RootSystem:
    """Root system for a factor name such as ``SU(3)``, ``Sp(2)``, ``Spin(10)`` or ``G2``."""
    name = name.strip()
    if name in ("G2", "E6"):
        return build_root_system(name, 2 if name == "G2" else 6)
    m = _FACTOR_RE.match(name)
    if not m:
        raise UnsupportedRootSystem(f"cannot parse group factor {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "SU":
        return build_root_system("A", n - 1)
    if kind == "U":
        return build_root_system("A", n - 1, unitary=True)
    if kind == "Sp":
        return build_root_system("C", n, low_rank=True)
    if n % 2:
        return build_root_system("B", (n - 1) // 2, low_rank=True)
    return build_root_system("D", n // 2, low_rank=True)


def make_group(factors: Sequence[str | RootSystem], circles: int = 0) -> CompactGroup:
    return CompactGroup(tuple(f if isinstance(f, RootSystem) else parse_factor(f) for f in factors), circles)


@dataclass(frozen=True)
class RepAction:
    """How a group acts on v.

    ``kind`` is one of standard, sym2, wedge2, tensor, spin, halfspin,
    directSum or dual.  ``factors`` indexes the group factors acted on and
    ``charges`` gives the weight of each central circle on the summand.
    """

    kind: str
    factors: tuple[int, ...] = ()
    charges: tuple[int, ...] = ()
    parts: tuple["RepAction", ...] = ()

    @staticmethod
    def direct_sum(*parts: "RepAction") -> "RepAction":
        return RepAction("directSum", parts=tuple(parts))

    @staticmethod
    def dual_of(part: "RepAction") -> "RepAction":
        return RepAction("dual", parts=(part,))


@dataclass(frozen=True)
class Summand:
    kind: str
    factors: tuple[int, ...]
    charges: tuple[int, ...]
    highest: Weight


def _block_hw(rs: RootSystem, kind: str) -> list[Weight]:
    first = tuple(int(i == 0) for i in range(rs.ambient))
    if kind == "standard":
        if rs.family in ("G2", "E6"):
            return [rs.from_dynkin([1] + [0] * (rs.rank - 1))]
        if rs.family == "D" and rs.rank == 0:
            # SO(2) on C^2 splits into the two characters
            return [rs.from_epsilon((1,)), rs.from_epsilon((-1,))]
        return [rs.from_epsilon(first)]
    if kind == "sym2":
        return [rs.from_epsilon(tuple(2 * x for x in first))]
    if kind == "wedge2":
        if rs.ambient < 2:
            raise ValueError(f"wedge2 needs rank at least 1 in {rs.name}")
        return [rs.from_epsilon(tuple(int(i < 2) for i in range(rs.ambient)))]
    if kind == "spin" and rs.family == "B":
        return [rs.fundamental_weights[-1]]
    if kind == "halfspin" and rs.family == "D":
        return [rs.normalize(rs.fundamental_weights[-1])]
    raise UnsupportedRootSystem(f"action {kind!r} is not defined for {rs.name}")


def compile_action(group: CompactGroup, action: RepAction) -> list[Summand]:
    """Irreducible summands of the action, each with its full highest weight."""
    if action.kind == "directSum":
        out: list[Summand] = []
        for p in action.parts:
            out.extend(compile_action(group, p))
        return out
    if action.kind == "dual":
        out = []
        for s in compile_action(group, action.parts[0]):
            neg = tuple(-x for x in s.highest)
            hw = group.dominant_representative(neg, shifted=False)[0]
            out.append(Summand("dual:" + s.kind, s.factors, tuple(-c for c in s.charges), hw))
        return out
    charges = tuple(action.charges) if action.charges else (0,) * group.circles
    if len(charges) != group.circles:
        raise ValueError(f"{len(charges)} charges given for {group.circles} circles")
    if action.kind == "trivial":
        return [Summand("trivial", (), charges, group.zero[: group.ambient - group.circles] + charges)]
    kind = "standard" if action.kind == "tensor" else action.kind
    if action.kind == "tensor" and len(action.factors) != 2:
        raise ValueError("tensor action needs two factors")
    options = [_block_hw(group.factors[k], kind) for k in action.factors]
    out = []
    for combo in itertools.product(*options):
        blocks = [f.zero for f in group.factors]
        for k, b in zip(action.factors, combo):
            blocks[k] = b
        out.append(Summand(action.kind, tuple(action.factors), charges, group.join(blocks, charges)))
    return out


@dataclass(frozen=True)
class GroupSpec:
    """A compact group acting on v."""

    group: CompactGroup
    action: RepAction
    name: str = ""
    source: tuple[str, str] | None = None

    @property
    def summands(self) -> list[Summand]:
        return compile_action(self.group, self.action)

    def summand_weights(self) -> list[WeightMultiset]:
        return [irrep_weights(s.highest, self.group) for s in self.summands]

    def weights(self) -> WeightMultiset:
        return direct_sum(*self.summand_weights())

    @property
    def dim(self) -> int:
        return sum(self.group.weyl_dim(s.highest) for s in self.summands)

    def linear_model(self) -> polymodel.LinearModel:
        """Explicit weight basis of v with raising and lowering operators."""
        items = []

        def walk(a: RepAction):
            if a.kind == "directSum":
                for p in a.parts:
                    walk(p)
            elif a.kind in ("standard", "sym2", "wedge2", "tensor"):
                items.append((a.kind, tuple(a.factors), tuple(a.charges)))
            else:
                raise UnsupportedRootSystem(f"no explicit model for action {a.kind!r}")

        walk(self.action)
        return polymodel.build_linear_model(self.group, items)


def polynomial_ring_characters(spec: GroupSpec, dmax: int) -> list[WeightMultiset]:
    """Characters of the homogeneous polynomials of degree 0..dmax on v."""
    return sym_powers(dual(spec.weights()), dmax)


def polynomial_decompose(spec: GroupSpec, dmax: int) -> list[Decomposition]:
    """Entry d is the decomposition of the degree-d polynomials on v."""
    if dmax < 0:
        raise ValueError("dmax must be nonnegative")
    return [decompose(c) for c in polynomial_ring_characters(spec, dmax)]


def bigraded_decompose(spec: GroupSpec, degrees: Sequence[int], *, polynomial: bool = True) -> Decomposition:
    """Decompose the multi-degree piece ``S^{m_1}(v_1) (x) ... (x) S^{m_k}(v_k)``.

    The summands v_i are taken in the order of ``spec.summands``.  With
    ``polynomial=True`` each v_i is replaced by its dual, giving polynomial
    functions on v; otherwise the symmetric algebra of v itself is used.
    """
    parts = spec.summand_weights()
    if len(parts) != len(degrees):
        raise ValueError(f"{len(degrees)} degrees given for {len(parts)} summands")
    acc = WeightMultiset(spec.group, {spec.group.zero: 1})
    for w, m in zip(parts, degrees):
        acc = tensor(acc, sym_power(dual(w) if polynomial else w, m))
    return decompose(acc)


@dataclass
class MFReport:
    """Bounded-degree multiplicity-free verdict."""

    spec_name: str
    dmax: int
    per_degree: list[Decomposition]
    verdict: str
    witness: dict | None = None
    checks: dict = field(default_factory=dict)
    note: str = ""

    @property
    def multiplicity_free(self) -> bool:
        return self.verdict == "multiplicity-free"


def _mf_verdict(per_degree: Sequence[Decomposition]) -> tuple[str, dict | None]:
    seen: dict[Weight, int] = {}
    for d, dec in enumerate(per_degree):
        for w, m in dec.ordered():
            if m >= 2:
                return "violation", {"label": w, "degrees": (d,), "multiplicity": m}
            if w in seen:
                return "violation", {"label": w, "degrees": (seen[w], d), "multiplicity": 2}
            seen[w] = d
    return "multiplicity-free", None


def is_multiplicity_free(spec: GroupSpec, dmax: int = 4) -> MFReport:
    """Search the polynomial ring for a repeated constituent in degrees 0..dmax.

    A multiplicity-free verdict only certifies the degrees that were examined.
    """
    if dmax < 1:
        raise ValueError("dmax must be at least 1")
    per = polynomial_decompose(spec, dmax)
    verdict, witness = _mf_verdict(per)
    note = f"certified through degree {dmax} only" if witness is None else ""
    return MFReport(spec.name or spec.group.name, dmax, per, verdict, witness, note=note)


# --- stabilizer groups ----------------------------------------------------------


def sum_of_two_pattern(n: int, m1: int, m2: int, *, literal: bool = False) -> dict[Weight, int]:
    """Constituents of ``S^{m1}(C^n_+) (x) S^{m2}(C^n_-)`` under U(1) x SU(n).

    Labels are ``p*xi_1 + q*xi_2`` with charge ``m1 - m2`` and
    ``p + 2q = m1 + m2``.  The correct range is ``0 <= q <= min(m1, m2)``;
    ``literal=True`` instead lets q run over every nonnegative solution.
    """
    rs = build_root_system("A", n - 1)
    group = CompactGroup((rs,), 1)
    qmax = (m1 + m2) // 2 if literal else min(m1, m2)
    out = {}
    for q in range(qmax + 1):
        p = m1 + m2 - 2 * q
        dyn = [0] * (n - 1)
        dyn[0] += p
        dyn[1] += q
        out[group.join([rs.from_dynkin(dyn)], (m1 - m2,))] = 1
    return out


def stabilizer_mf_check(row: str, params: dict | None = None, case: str = "generic", dmax: int = 4) -> MFReport:
    """Multiplicity-free check of a stabilizer acting on the polynomials on v.

    For entry 20a the bigraded pieces are also compared with the closed-form
    pattern of :func:`sum_of_two_pattern` for every multi-degree of total
    degree at most ``dmax``.
    """
    from .stabilizers import stabilizer_spec

    params = dict(params or {})
    spec = stabilizer_spec(row, params, case)
    report = is_multiplicity_free(spec, dmax)
    if row == "20a":
        n = spec.group.factors[0].rank + 1
        rows = []
        for total in range(dmax + 1):
            for m1 in range(total + 1):
                m2 = total - m1
                got = bigraded_decompose(spec, (m1, m2), polynomial=False).terms
                want = sum_of_two_pattern(n, m1, m2)
                lit = sum_of_two_pattern(n, m1, m2, literal=True)
                rows.append({"m": (m1, m2), "matches": got == want, "literal_matches": got == lit})
        report.checks["pattern"] = rows
        report.checks["pattern_ok"] = all(r["matches"] for r in rows)
        report.checks["literal_pattern_ok"] = all(r["literal_matches"] for r in rows)
    return report


# --- highest weight stability ------------------------------------------------------


def embed_label(small: CompactGroup, large: CompactGroup, w: Weight) -> Weight:
    """Pad each factor's epsilon coordinates with zeros.

    This is the fundamental-weight correspondence for unitary, orthogonal and
    symplectic factors.  It is not a function on SU(n) labels (a trivial
    SU(3) label can become xi_3 in SU(4)), so stability checks match labels
    through explicit vectors instead.
    """
    if len(small.factors) != len(large.factors) or small.circles != large.circles:
        raise ValueError("groups have different shapes")
    blocks, ch = small.split(w)
    out = []
    for fs, fl, b in zip(small.factors, large.factors, blocks):
        if fs.family != fl.family or fs.unitary != fl.unitary:
            raise ValueError(f"cannot embed {fs.name} in {fl.name}")
        eps = list(fs.to_epsilon(b)) + [Fraction(0)] * (fl.ambient - fs.ambient)
        out.append(fl.from_epsilon(eps))
    return large.join(out, ch)


@dataclass
class StabilityReport:
    d: int
    small_labels: dict[Weight, int]
    large_labels: dict[Weight, int]
    label_map: dict[Weight, Weight]
    label_inclusion: bool
    literal: bool
    restriction: bool
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.label_inclusion and self.literal and self.restriction


def highest_weight_stability(small: GroupSpec, large: GroupSpec, d: int) -> StabilityReport:
    """Compare explicit highest weight vectors in degree ``d`` at two consecutive ranks.

    Labels are matched through the vectors themselves: a small-rank label is
    sent to the large-rank weight of its highest weight vector.  Three checks
    are reported.  ``label_inclusion``: every matched label occurs at the
    large rank.  ``literal``: every small-rank highest weight vector, read as
    a polynomial on the larger space, is killed by all large-rank raising
    operators (with multiplicity one this is the scalar-multiple statement).
    ``restriction``: every large-rank highest weight vector restricts on the
    smaller space to a small-rank highest weight vector.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    ms, ml = small.linear_model(), large.linear_model()
    if not set(ms.keys) <= set(ml.keys):
        raise ValueError("small model is not a sub-basis of the large model")
    ps, pl = polymodel.PolySpace(ms, d), polymodel.PolySpace(ml, d)
    hs, hl = ps.highest_weights(), pl.highest_weights()
    failures: list[dict] = []
    label_map: dict[Weight, Weight] = {}
    inclusion = literal = restriction = True
    for w in hs:
        vecs = ps.highest_weight_vectors(w)
        wl = ml.weight_of(next(iter(vecs[0])))
        label_map[w] = wl
        if wl not in hl:
            inclusion = False
            failures.append({"kind": "label", "label": w, "image": wl})
        for v in vecs:
            if any(pl.apply(op, v) for op in ml.raising):
                literal = False
                failures.append({"kind": "literal", "label": w})
                break
    small_keys = set(ms.keys)
    for wl in hl:
        for v in pl.highest_weight_vectors(wl):
            r = pl.restrict(v, small_keys)
            if not r:
                continue
            w = ms.weight_of(next(iter(r)))
            basis = ps.highest_weight_vectors(w) if w in ps.blocks else []
            cols = ps.blocks.get(w, [])
            dense_basis = [[b.get(m, Fraction(0)) for m in cols] for b in basis]
            dense = [r.get(m, Fraction(0)) for m in cols]
            if set(r) - set(cols) or not polymodel.exactla.in_span(dense, dense_basis):
                restriction = False
                failures.append({"kind": "restriction", "label": wl})
    return StabilityReport(d, hs, hl, label_map, inclusion, literal, restriction, failures)
