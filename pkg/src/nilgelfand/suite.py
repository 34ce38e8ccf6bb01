"""Verification driver.

A job is a (kind, table, row) triple plus a :class:`SuiteConfig`.  Jobs run
in a bounded process pool and their reports are returned sorted by job id,
so the output depends only on the filter and the configuration.

Besides the classification tables, two pseudo-tables are understood:
``heisenberg`` (rows ``1``..``4`` are h_n) and ``stabilizers`` (rows are the
stabilizer cases and the sp(2) centralizer data).
"""

from __future__ import annotations

import json
import math
import random
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Any, Callable, Iterable

import numpy as np

from . import __version__, carcano, exactla, fock, limits, nilpotent, stabilizers
from .tables import TABLE_IDS, TableRow, load_table

SCHEMA_VERSION = "1"
CHECK_KINDS = ("mf", "pfaffian", "split", "fock", "chain", "nesting", "stability", "stabilizer")
PSEUDO_TABLES = ("heisenberg", "stabilizers")
HEISENBERG_ROWS = ("1", "2", "3", "4")
FLOAT_DIGITS = 6


@dataclass(frozen=True)
class SuiteFilter:
    """Selects jobs.  Each field lists accepted values; an empty field selects nothing.

    ``SuiteFilter()`` therefore selects no jobs; :meth:`everything` selects all.
    """

    tables: tuple[str, ...] = ()
    rows: tuple[str, ...] | None = None
    kinds: tuple[str, ...] = ()

    @classmethod
    def everything(cls) -> "SuiteFilter":
        return cls(TABLE_IDS + PSEUDO_TABLES, None, CHECK_KINDS)

    def accepts(self, kind: str, table: str, row: str) -> bool:
        return (kind in self.kinds and table in self.tables
                and (self.rows is None or row in self.rows))


@dataclass(frozen=True)
class SuiteConfig:
    """Inputs shared by all jobs.

    ``dmax`` overrides the per-row degree bound (default 4, or the row's
    own bound).  ``stage`` is the rank stage of the first group in two-stage
    checks.  ``t_samples`` are rationals written as strings.
    """

    dmax: int | None = None
    stage: int = 0
    nesting_degree: int = 3
    seed: int = 0
    t_samples: tuple[str, ...] = ("1/2", "1", "2", "-1")
    pfaffian_samples: int = 50
    cutoff: int = 30
    coarse_cutoff: int = 15
    guard: int = fock.GUARD
    window: int = 5
    quad_order: int = 16
    workers: int = 4


@dataclass
class VerificationReport:
    """Outcome of one job.  Failures always carry a witness."""

    job_id: str
    kind: str
    table: str
    row: str
    inputs: dict
    passed: bool
    results: dict = field(default_factory=dict)
    witness: Any = None
    error: str | None = None
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return encode(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def encode(obj: Any) -> Any:
    """JSON-safe form: Fractions as ``p/q``, floats as fixed-precision decimal strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return str(obj)
        return f"{obj:.{FLOAT_DIGITS}e}"
    if isinstance(obj, complex):
        return [encode(obj.real), encode(obj.imag)]
    if isinstance(obj, dict):
        return {_key(k): encode(v) for k, v in sorted(obj.items(), key=lambda kv: _key(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return encode(obj.item())
    return str(obj)


def _key(k: Any) -> str:
    return k if isinstance(k, str) else json.dumps(encode(k))


# ------------------------------------------------------------------- jobs


@dataclass(frozen=True)
class Job:
    kind: str
    table: str
    row: str

    @property
    def job_id(self) -> str:
        return f"{self.kind}:{self.table}:{self.row}"


def _applicable(kind: str, table: str, row: TableRow) -> bool:
    if kind == "mf":
        return row.group is not None
    if kind in ("pfaffian",):
        return row.algebra is not None
    if kind == "split":
        return row.algebra is not None and "center" in row.algebra
    if kind in ("chain", "nesting", "stability"):
        return table == "jaw"
    return False


def _stabilizer_rows() -> list[str]:
    rows = ["centralizers", "sp2-roots"]
    for r in stabilizers.STABILIZER_ROWS:
        rows += [f"{r}/{c}" for c in ("generic", "a1=a2", "a1=-a2")] if r == "18" else [r]
    return rows


def plan(filt: SuiteFilter) -> list[Job]:
    """Jobs selected by the filter, sorted by job id."""
    jobs = []
    for table in filt.tables:
        if table == "heisenberg":
            ids = list(HEISENBERG_ROWS)
            for kind in filt.kinds:
                if kind == "fock":
                    ids_k = ["1", "2"]
                elif kind == "chain":
                    ids_k = ["chain"]
                elif kind == "pfaffian":
                    ids_k = ids
                else:
                    ids_k = []
                jobs += [Job(kind, table, r) for r in ids_k if filt.accepts(kind, table, r)]
            continue
        if table == "stabilizers":
            jobs += [Job("stabilizer", table, r) for r in _stabilizer_rows()
                     if filt.accepts("stabilizer", table, r)]
            continue
        if table not in TABLE_IDS:
            raise ValueError(f"unknown table {table!r}")
        for row in load_table(table):
            for kind in filt.kinds:
                if filt.accepts(kind, table, row.row_id) and _applicable(kind, table, row):
                    jobs.append(Job(kind, table, row.row_id))
    return sorted(set(jobs), key=lambda j: j.job_id)


def run_suite(filt: SuiteFilter, config: SuiteConfig | None = None) -> list[VerificationReport]:
    """Run the selected jobs; errors are captured per job."""
    config = config or SuiteConfig()
    jobs = plan(filt)
    if not jobs:
        return []
    if config.workers <= 1 or len(jobs) == 1:
        reports = [run_job(j, config) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            reports = list(pool.map(run_job, jobs, [config] * len(jobs)))
    return sorted(reports, key=lambda r: r.job_id)


def exit_status(reports: Iterable[VerificationReport]) -> int:
    return 0 if all(r.passed for r in reports) else 1


def suite_document(reports: list[VerificationReport], config: SuiteConfig) -> dict:
    return encode({
        "schema": SCHEMA_VERSION,
        "version": __version__,
        "config": asdict(config),
        "passed": exit_status(reports) == 0,
        "reports": [r.to_dict() for r in reports],
    })


def run_job(job: Job, config: SuiteConfig) -> VerificationReport:
    inputs = {"stage": config.stage, "seed": config.seed}
    report = VerificationReport(job.job_id, job.kind, job.table, job.row, inputs, False,
                                provenance={"version": __version__, "schema": SCHEMA_VERSION,
                                            "seed": config.seed})
    try:
        _RUNNERS[job.kind](job, config, report)
    except Exception as exc:  # captured so sibling jobs are unaffected
        report.passed = False
        report.error = f"{type(exc).__name__}: {exc}"
        report.witness = {"traceback": traceback.format_exc(limit=3).splitlines()[-3:]}
    if not report.passed and report.witness is None:
        report.witness = {"results": report.results}
    return report


def _row(job: Job) -> TableRow:
    for row in load_table(job.table):
        if row.row_id == job.row:
            return row
    raise KeyError(f"no row {job.row!r} in {job.table!r}")


def _ts(config: SuiteConfig) -> list[Fraction]:
    return [Fraction(t) for t in config.t_samples]


def _weight(w) -> list:
    return list(w) if isinstance(w, tuple) else w


# ------------------------------------------------------------ job bodies


def _mf(job: Job, config: SuiteConfig, report: VerificationReport) -> None:
    row = _row(job)
    dmax = config.dmax or row.dmax or 4
    stage = 0 if row.rank_param is None else config.stage
    spec = row.instantiate(stage)
    report.inputs.update({"dmax": dmax, "params": row.params_at(stage)})
    mf = carcano.is_multiplicity_free(spec, dmax)
    report.passed = mf.multiplicity_free
    report.results = {"verdict": mf.verdict, "note": mf.note, "group": spec.name,
                      "constituents": [len(d.terms) for d in mf.per_degree]}
    if mf.witness:
        report.witness = {k: (_weight(v) if k == "label" else v) for k, v in mf.witness.items()}


def _pfaffian(job: Job, config: SuiteConfig, report: VerificationReport) -> None:
    rng = random.Random(config.seed)
    if job.table == "heisenberg":
        n = int(job.row)
        alg = nilpotent.heisenberg(n)
        ts = _ts(config)
        bad = [str(t) for t in ts if nilpotent.pfaffian_at(alg, [t]) != alg.pfaffian_sign * t ** n]
        report.inputs.update({"n": n, "t": [str(t) for t in ts]})
        report.results = {"sign": alg.pfaffian_sign, "formula": f"Pf(b_t) = {alg.pfaffian_sign:+d} t^{n}"}
        report.passed = not bad
        if bad:
            report.witness = {"t": bad}
        return
    row = _row(job)
    params = row.params_at(config.stage if row.rank_param else 0)
    alg = row.build_algebra(params)
    report.inputs.update({"params": params, "samples": config.pfaffian_samples})
    mismatches = []
    for _ in range(config.pfaffian_samples):
        t = nilpotent.random_functional(alg.dim_z, rng)
        form = nilpotent.b_form(alg, t)
        pf = nilpotent.pfaffian(form, check=False)
        if pf * pf != exactla.det(form.matrix):
            mismatches.append([str(x) for x in t])
    generic = nilpotent.generic_set_witness(alg, trials=20, seed=config.seed)
    report.results = {"algebra": alg.name, "dim_z": alg.dim_z, "dim_v": alg.dim_v,
                      "pf_squared_is_det": not mismatches, "generic_nonzero": generic.polynomial_nonzero,
                      "nonzero_fraction": generic.fraction}
    report.passed = not mismatches and generic.polynomial_nonzero
    if not report.passed:
        report.witness = {"t": mismatches[:3], "generic": generic.note}


def _split(job: Job, config: SuiteConfig, report: VerificationReport) -> None:
    row = _row(job)
    params = row.params_at(config.stage if row.rank_param else 0)
    alg = row.build_algebra(params)
    report.inputs.update({"params": params})
    ok = nilpotent.pfaffian_split_check(alg, samples=10, seed=config.seed)
    report.results = {"algebra": alg.name, "z1": alg.z_split, "z2": alg.dim_z - alg.z_split,
                      "independent_of_t2": ok}
    report.passed = ok
    if not ok:
        report.witness = {"algebra": alg.name}


def _fock(job: Job, config: SuiteConfig, report: VerificationReport) -> None:
    n = int(job.row)
    rng = random.Random(config.seed)

    def element(scale: float) -> fock.GroupElement:
        v = []
        for _ in range(n):
            r, th = scale * rng.random(), 2 * math.pi * rng.random()
            v.append(complex(r * math.cos(th), r * math.sin(th)))
        return fock.GroupElement(rng.uniform(-1, 1), tuple(v))

    a, b = element(1 / math.sqrt(n)), element(1 / math.sqrt(n))
    fine = fock.verify_group_law(1.0, a, b, config.cutoff, config.guard, config.window)
    coarse = fock.verify_group_law(1.0, a, b, config.coarse_cutoff, config.guard, config.window)
    idx = [m for d in range(3) for m in fock.multi_indices(n, d)]
    pairs = [(l, m) for l in idx for m in idx]
    orth = {}
    worst = 0.0
    for t in (0.5, 1.0, 2.0):
        gram = fock.orthogonality_gram(pairs, t, config.quad_order)
        err = float(np.max(np.abs(gram.gram - np.eye(len(pairs)) / abs(t) ** n)))
        orth[str(t)] = err
        worst = max(worst, err)
    z = rng.uniform(-3, 3)
    centre = fock.operator_matrix(1.0, fock.GroupElement(z, (0j,) * n), fock.FockBasis(n, 6)).matrix
    central = float(np.max(np.abs(centre - np.exp(1j * z) * np.eye(len(centre)))))
    report.inputs.update({"n": n, "cutoff": config.cutoff, "coarse_cutoff": config.coarse_cutoff,
                          "window": config.window, "quad_order": config.quad_order})
    report.results = {"group_law_residual": fine, "coarse_residual": coarse,
                      "orthogonality_error": orth, "central_character_error": central}
    checks = {"group_law": fine < 1e-8, "refinement": fine * 100 <= coarse or coarse < 1e-12,
              "orthogonality": worst < 1e-6, "central": central < 1e-13}
    report.results["checks"] = checks
    report.passed = all(checks.values())
    if not report.passed:
        report.witness = {k: v for k, v in checks.items() if not v}


def _chain(job: Job, config: SuiteConfig, report: VerificationReport) -> None:
    ts = _ts(config)
    if job.table == "heisenberg":
        chain = limits.build_heisenberg_chain(4, ts)
        extra = {"scales_match_pfaffian": limits.heisenberg_scales_match_pfaffian(chain)}
    else:
        row = _row(job)
        stages = [config.stage, config.stage + 1, config.stage + 2]
        chain = limits.build_semidirect_chain(row, stages, ts)
        extra = {}
    aligned = limits.check_limit_aligned(chain)
    consistent = limits.composition_consistent(chain)
    report.inputs.update({"t": [str(t) for t in ts], "stages": len(chain.stages)})
    report.results = {"chain": chain.name, "aligned": aligned.aligned,
                      "composition_consistent": consistent, **extra}
    report.passed = aligned.aligned and consistent and all(extra.values())
    if not report.passed:
        report.witness = aligned.witness or {"composition_consistent": consistent, **extra}


def _pair(job: Job, config: SuiteConfig):
    row = _row(job)
    return row.instantiate(config.stage), row.instantiate(config.stage + 1)


def _nesting(job: Job, config: SuiteConfig, report: VerificationReport) -> None:
    small, large = _pair(job, config)
    rows, bad = [], []
    for d in range(config.nesting_degree + 1):
        for r in limits.nesting_checks(small, large, d):
            item = {"d": d, "label": _weight(r.label), "constant": r.constant, "exact": r.exact,
                    "nonzero": r.nonzero}
            rows.append(item)
            if not r.exact:
                bad.append(item)
    report.inputs.update({"small": small.name, "large": large.name, "dmax": config.nesting_degree})
    report.results = {"labels": len(rows), "exact": len(rows) - len(bad),
                      "all_nonzero": all(i["nonzero"] for i in rows)}
    report.passed = not bad
    if bad:
        report.witness = bad


def _stability(job: Job, config: SuiteConfig, report: VerificationReport) -> None:
    small, large = _pair(job, config)
    failures = []
    per = {}
    for d in range(config.nesting_degree + 1):
        rep = carcano.highest_weight_stability(small, large, d)
        per[str(d)] = {"label_inclusion": rep.label_inclusion, "literal": rep.literal,
                       "restriction": rep.restriction}
        failures += [{"d": d, **{k: _weight(v) for k, v in f.items()}} for f in rep.failures]
    report.inputs.update({"small": small.name, "large": large.name, "dmax": config.nesting_degree})
    report.results = per
    report.passed = not failures
    if failures:
        report.witness = failures


def _stabilizer(job: Job, config: SuiteConfig, report: VerificationReport) -> None:
    if job.row == "centralizers":
        alg = stabilizers.sp2()
        got, bad = {}, []
        for case, (a1, a2, dim, tag) in stabilizers.Z_CASES.items():
            res = stabilizers.centralizer(alg, stabilizers.z_element(a1, a2))
            got[case] = {"dim": res.dim, "tag": res.tag}
            if (res.dim, res.tag) != (dim, tag):
                bad.append({"case": case, "dim": res.dim, "tag": res.tag, "expected": [dim, tag]})
        report.results = got
        report.passed = not bad
        report.witness = bad or None
        return
    if job.row == "sp2-roots":
        checks = stabilizers.verify_root_vectors_sp2()
        report.results = {c.name: {"listed": c.listed, "computed": c.computed, "scale": c.scale}
                          for c in checks}
        bad = [c.name for c in checks if not (c.eigen and c.proportional)]
        report.passed = not bad
        report.witness = bad or None
        return
    row, _, case = job.row.partition("/")
    dmax = config.dmax or 4
    mf = carcano.stabilizer_mf_check(row, None, case or "generic", dmax)
    report.inputs.update({"dmax": dmax, "case": case or "generic"})
    report.results = {"verdict": mf.verdict, "group": mf.spec_name, "note": mf.note,
                      **{k: v for k, v in mf.checks.items() if k.endswith("_ok")}}
    report.passed = mf.multiplicity_free and mf.checks.get("pattern_ok", True)
    if not report.passed:
        report.witness = mf.witness or {"pattern_ok": mf.checks.get("pattern_ok")}


_RUNNERS: dict[str, Callable[[Job, SuiteConfig, VerificationReport], None]] = {
    "mf": _mf,
    "pfaffian": _pfaffian,
    "split": _split,
    "fock": _fock,
    "chain": _chain,
    "nesting": _nesting,
    "stability": _stability,
    "stabilizer": _stabilizer,
}


# ------------------------------------------------------------ rendering


def render_markdown(reports: list[VerificationReport]) -> str:
    lines = ["| job | result | detail |", "|---|---|---|"]
    for r in reports:
        detail = r.error or ", ".join(f"{k}={v}" for k, v in sorted(encode(r.results).items())
                                      if not isinstance(v, (dict, list)))
        lines.append(f"| `{r.job_id}` | {'PASS' if r.passed else 'FAIL'} | {detail} |")
    npass = sum(r.passed for r in reports)
    lines.append("")
    lines.append(f"{npass}/{len(reports)} jobs passed")
    return "\n".join(lines)
