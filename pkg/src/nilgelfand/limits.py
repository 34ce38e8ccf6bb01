"""Finite stages of direct systems of representations and their injections.

A chain is a list of stages, each a set of labels carrying a density or
dimension datum, together with injections between consecutive stages.  An
injection maps labels to labels and multiplies by a positive scale factor;
scales are stored squared as exact rationals so that composition can be
compared exactly.  Continuous families are represented by finite samples of
the central parameter t.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import carcano, polymodel
from .carcano import GroupSpec
from .nilpotent import heisenberg, pfaffian_at
from .weights import Weight


class ParabolicCorrespondenceError(ValueError):
    """A label at one rank has no matching label at the next rank."""


@dataclass(frozen=True, order=True)
class StageLabel:
    """A primary component at one stage: central parameter t and optional label."""

    stage: int
    t: Fraction
    weight: Weight | None = None

    def key(self) -> tuple:
        return (self.t, self.weight)


@dataclass
class Injection:
    """Map from stage ``src`` to stage ``dst``.

    ``pairs`` lists (source, target) label pairs; a well formed injection has
    exactly one pair per source label.  ``scale2`` gives the squared scale
    factor per source label.
    """

    src: int
    dst: int
    pairs: list[tuple[StageLabel, StageLabel]]
    scale2: dict[StageLabel, Fraction]

    def mapping(self) -> dict[StageLabel, StageLabel]:
        return dict(self.pairs)

    def scale(self, label: StageLabel) -> float:
        return math.sqrt(self.scale2[label])


@dataclass
class StageChain:
    name: str
    stages: list[dict[StageLabel, Fraction]]
    injections: list[Injection]
    # exact direct injection between any two stages, computed independently
    direct: Callable[[int, int], Injection] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.stages)


def compose(first: Injection, second: Injection) -> Injection:
    if first.dst != second.src:
        raise ValueError("injections are not composable")
    m2 = second.mapping()
    pairs, scale2 = [], {}
    for a, b in first.pairs:
        if b not in m2:
            raise ParabolicCorrespondenceError(f"label {b} has no image at stage {second.dst}")
        pairs.append((a, m2[b]))
        scale2[a] = first.scale2[a] * second.scale2[b]
    return Injection(first.src, second.dst, pairs, scale2)


def composed(chain: StageChain, i: int, j: int) -> Injection:
    """Composite of the consecutive injections from stage i to stage j."""
    inj = chain.injections[i]
    for k in range(i + 1, j):
        inj = compose(inj, chain.injections[k])
    return inj


def composition_consistent(chain: StageChain) -> bool:
    """Composed consecutive injections equal the direct ones for all i < j."""
    if chain.direct is None:
        raise ValueError("chain has no direct injections to compare with")
    for i in range(len(chain)):
        for j in range(i + 2, len(chain)):
            a, b = composed(chain, i, j), chain.direct(i, j)
            if a.mapping() != b.mapping() or a.scale2 != b.scale2:
                return False
    return True


# ---------------------------------------------------------------- Heisenberg


def _fractions(ts: Iterable) -> list[Fraction]:
    out = sorted({Fraction(t) for t in ts})
    if any(t == 0 for t in out):
        raise ValueError("t samples must be nonzero")
    return out


def build_heisenberg_chain(n_max: int, t_samples: Iterable) -> StageChain:
    """Stages n = 1..n_max of L^2(H_n), labels t with density |t|^n.

    Stage index k holds H_{k+1}; the injection n -> m scales by
    ``|t|^{(n-m)/2}``.
    """
    if n_max < 2:
        raise ValueError("need at least two stages")
    ts = _fractions(t_samples)
    stages = [{StageLabel(k, t): abs(t) ** (k + 1) for t in ts} for k in range(n_max)]

    def direct(i: int, j: int) -> Injection:
        pairs = [(StageLabel(i, t), StageLabel(j, t)) for t in ts]
        return Injection(i, j, pairs, {StageLabel(i, t): abs(t) ** (i - j) for t in ts})

    injections = [direct(k, k + 1) for k in range(n_max - 1)]
    return StageChain(f"heisenberg(1..{n_max})", stages, injections, direct)


def heisenberg_scales_match_pfaffian(chain: StageChain) -> bool:
    """Every squared Heisenberg scale equals ``|Pf(b_{n,t}) / Pf(b_{m,t})|``."""
    for inj in chain.injections:
        for label, s2 in inj.scale2.items():
            pn = pfaffian_at(heisenberg(inj.src + 1), [label.t])
            pm = pfaffian_at(heisenberg(inj.dst + 1), [label.t])
            if s2 != abs(pn / pm):
                return False
    return True


# ------------------------------------------------------------ semidirect


def _resolve_specs(row, ranks) -> list[GroupSpec]:
    if ranks is None:
        specs = list(row)
    else:
        specs = [row.instantiate(r) for r in ranks]
    if len(specs) < 2:
        raise ValueError("need at least two ranks")
    return specs


def matched_labels(small: GroupSpec, large: GroupSpec, d: int) -> dict[Weight, Weight]:
    """Match the degree-d labels of two ranks through highest weight vectors."""
    rep = carcano.highest_weight_stability(small, large, d)
    for w, wl in rep.label_map.items():
        if wl not in rep.large_labels:
            raise ParabolicCorrespondenceError(
                f"label {w} of {small.name} in degree {d} has no match in {large.name}")
    return rep.label_map


def build_semidirect_chain(row, ranks: Sequence | None, t_samples: Iterable,
                           degrees: Sequence[int] = (0, 1)) -> StageChain:
    """Stages labeled by (t, lambda) with lambda running over the labels of S^d(v).

    ``row`` is either an object with ``instantiate(rank) -> GroupSpec`` (used
    with ``ranks``) or a sequence of GroupSpecs (with ``ranks=None``).  The
    squared scale of an injection n -> m is
    ``|t|^{N_n - N_m} * dim(kappa_n) / dim(kappa_m)`` with ``N = dim_C v``.
    """
    specs = _resolve_specs(row, ranks)
    ts = _fractions(t_samples)
    labels: list[list[Weight]] = []
    for spec in specs:
        seen: list[Weight] = []
        for d in degrees:
            for w in polymodel.PolySpace(spec.linear_model(), d).highest_weights():
                if w not in seen:
                    seen.append(w)
        labels.append(seen)
    # highest weight labels in S^d are tracked per degree so matching is by vectors
    per_degree: dict[tuple[int, int], dict[Weight, Weight]] = {}

    def label_map(i: int, j: int) -> dict[Weight, Weight]:
        out: dict[Weight, Weight] = {}
        for d in degrees:
            key = (i, j, d)
            if key not in per_degree:
                per_degree[key] = matched_labels(specs[i], specs[j], d)
            out.update(per_degree[key])
        return out

    stages = []
    for k, spec in enumerate(specs):
        g = spec.group
        stages.append({StageLabel(k, t, w): abs(t) ** spec.dim * g.weyl_dim(w)
                       for t in ts for w in labels[k]})

    def direct(i: int, j: int) -> Injection:
        lm = label_map(i, j)
        gi, gj = specs[i].group, specs[j].group
        pairs, scale2 = [], {}
        for t in ts:
            for w in labels[i]:
                src = StageLabel(i, t, w)
                pairs.append((src, StageLabel(j, t, lm[w])))
                scale2[src] = (abs(t) ** (specs[i].dim - specs[j].dim)
                               * Fraction(gi.weyl_dim(w), gj.weyl_dim(lm[w])))
        return Injection(i, j, pairs, scale2)

    injections = [direct(k, k + 1) for k in range(len(specs) - 1)]
    return StageChain(" -> ".join(s.name or s.group.name for s in specs), stages, injections, direct)


# --------------------------------------------------------------- alignment


@dataclass(frozen=True)
class AlignmentVerdict:
    aligned: bool
    witness: dict | None = None


def check_limit_aligned(chain: StageChain) -> AlignmentVerdict:
    """Each injection sends every label of its source stage to one label of its target.

    The central parameter must be preserved, targets must exist, and labels
    of the target stage are hit by at most one source label.
    """
    for inj in chain.injections:
        targets: dict[StageLabel, set[StageLabel]] = defaultdict(set)
        for a, b in inj.pairs:
            targets[a].add(b)
        src_stage, dst_stage = chain.stages[inj.src], chain.stages[inj.dst]
        for a in sorted(src_stage):
            if a not in targets:
                return AlignmentVerdict(False, {"label": a, "reason": "no image"})
            if len(targets[a]) != 1:
                return AlignmentVerdict(False, {"label": a, "reason": "several images",
                                                "images": sorted(targets[a])})
            (b,) = targets[a]
            if b not in dst_stage:
                return AlignmentVerdict(False, {"label": a, "reason": "image not a label", "image": b})
            if b.t != a.t:
                return AlignmentVerdict(False, {"label": a, "reason": "central parameter changed", "image": b})
            if inj.scale2.get(a, 0) <= 0:
                return AlignmentVerdict(False, {"label": a, "reason": "nonpositive scale"})
        hit: dict[StageLabel, StageLabel] = {}
        for a in sorted(targets):
            (b,) = targets[a]
            if b in hit:
                return AlignmentVerdict(False, {"label": a, "reason": "two labels share an image",
                                                "other": hit[b], "image": b})
            hit[b] = a
    return AlignmentVerdict(True)


def multiplicity_free_verdict(chain: StageChain, per_stage_mf: Sequence[bool]) -> bool:
    """Every stage multiplicity free and the chain limit-aligned."""
    return all(per_stage_mf) and check_limit_aligned(chain).aligned


# ------------------------------------------------------------------ nesting


@dataclass
class NestingReport:
    small: str
    large: str
    d: int
    label: Weight
    large_label: Weight | None
    vacuous: bool
    q_small: int = 0
    q_large: int = 0
    constant: Fraction | None = None
    proportional: bool = False

    @property
    def exact(self) -> bool:
        """Projection of the large invariant equals the small invariant."""
        return self.vacuous or (self.proportional and self.constant == 1)

    @property
    def nonzero(self) -> bool:
        return self.vacuous or (self.proportional and bool(self.constant))


def _dim(spans: dict) -> int:
    return sum(len(b) for b in spans.values())


def invariant_nesting_check(small: GroupSpec, large: GroupSpec, label: Weight, d: int) -> NestingReport:
    """Project the large-rank invariant ``sum x_i (x) x_i^*`` onto the small rank.

    The invariant of the lambda-isotypic space E is the orthogonal projector
    onto E.  With Q the projector onto the small space E_n (inside the large
    polynomial space) and P onto the matched large space E_m, the Hilbert-
    Schmidt projection of P onto End(E_n) is Q P Q.  Schur's lemma makes it
    ``c Q``; c is computed on every basis vector of E_n, and c = 1 means the
    invariant vectors nest exactly.
    """
    ms, ml = small.linear_model(), large.linear_model()
    ps, pl = polymodel.PolySpace(ms, d), polymodel.PolySpace(ml, d)
    hs = ps.highest_weights()
    if label not in hs:
        return NestingReport(small.name, large.name, d, label, None, True)
    seed = ps.highest_weight_vectors(label)[0]
    large_label = ml.weight_of(next(iter(seed)))
    small_spans = ps.isotypic(label)
    report = NestingReport(small.name, large.name, d, label, large_label, False,
                           q_small=_dim(small_spans))
    if large_label not in pl.highest_weights():
        report.constant = Fraction(0)
        report.proportional = True
        return report
    large_spans = pl.isotypic(large_label)
    report.q_large = _dim(large_spans)
    constant: Fraction | None = None
    for w, basis in small_spans.items():
        wl = ml.weight_of(next(iter(basis[0])))
        big = large_spans.get(wl, [])
        for x in basis:
            y = polymodel.projector_image(pl, big, x)
            # Q projects onto E_n inside the large space
            back = polymodel.projector_image(pl, basis, y)
            m = next(iter(x))
            c = back.get(m, Fraction(0)) / x[m]
            if any(back.get(k, Fraction(0)) != c * v for k, v in x.items()) or set(back) - set(x):
                report.constant = None
                report.proportional = False
                return report
            if constant is None:
                constant = c
            elif c != constant:
                report.proportional = False
                report.constant = None
                return report
    report.constant = constant
    report.proportional = True
    return report


def nesting_checks(small: GroupSpec, large: GroupSpec, d: int) -> list[NestingReport]:
    """Nesting reports for every label of S^d(v) at the small rank."""
    ps = polymodel.PolySpace(small.linear_model(), d)
    return [invariant_nesting_check(small, large, w, d) for w in sorted(ps.highest_weights())]
