"""Command line interface: ``nilgelfand verify|show|fock|pfaffian|chain``."""

from __future__ import annotations

import json
import random
import sys
from fractions import Fraction

import click
import numpy as np

from . import exactla, fock, limits, nilpotent
from .suite import (
    CHECK_KINDS,
    PSEUDO_TABLES,
    SuiteConfig,
    SuiteFilter,
    encode,
    exit_status,
    render_markdown,
    run_suite,
    suite_document,
)
from .tables import TABLE_IDS, get_row

FORMATS = click.Choice(["json", "markdown"])


def _emit(payload: dict, fmt: str, markdown: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(encode(payload), sort_keys=True, indent=2))
    else:
        click.echo(markdown)


def _fractions(values) -> list[Fraction]:
    try:
        return [Fraction(v) for v in values]
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(str(exc)) from exc


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Finite-rank checks for direct limits of nilpotent Gelfand pairs."""


@main.command()
@click.option("--table", "tables", multiple=True, type=click.Choice(TABLE_IDS + PSEUDO_TABLES),
              help="Table to include (repeatable; default all).")
@click.option("--row", "rows", multiple=True, help="Row id to include (repeatable; default all).")
@click.option("--check", "kinds", multiple=True, type=click.Choice(CHECK_KINDS),
              help="Check kind to run (repeatable; default all).")
@click.option("--rank", default=0, show_default=True, help="Rank stage (0 = minimal admissible rank).")
@click.option("--dmax", type=int, default=None, help="Degree bound for multiplicity-free checks.")
@click.option("--t", "ts", multiple=True, help="Rational central parameter (repeatable).")
@click.option("--cutoff", default=30, show_default=True, help="Fock truncation degree.")
@click.option("--quad-order", default=16, show_default=True, help="Gauss-Hermite order per real axis.")
@click.option("--seed", default=0, show_default=True)
@click.option("--workers", default=4, show_default=True, help="Worker processes.")
@click.option("--format", "fmt", type=FORMATS, default="markdown", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="Also write the JSON report here.")
def verify(tables, rows, kinds, rank, dmax, ts, cutoff, quad_order, seed, workers, fmt, output) -> None:
    """Run verification jobs and report; exit status 1 if any job fails."""
    filt = SuiteFilter(tuple(tables) or TABLE_IDS + PSEUDO_TABLES, tuple(rows) or None,
                       tuple(kinds) or CHECK_KINDS)
    kw = {}
    if ts:
        kw["t_samples"] = tuple(str(t) for t in _fractions(ts))
    config = SuiteConfig(dmax=dmax, stage=rank, seed=seed, cutoff=cutoff, quad_order=quad_order,
                         workers=workers, **kw)
    reports = run_suite(filt, config)
    doc = suite_document(reports, config)
    if output:
        with open(output, "w") as fh:
            json.dump(doc, fh, sort_keys=True, indent=2)
    _emit(doc, fmt, render_markdown(reports))
    sys.exit(exit_status(reports))


@main.command()
@click.option("--table", required=True, type=click.Choice(TABLE_IDS))
@click.option("--row", required=True)
@click.option("--rank", default=0, show_default=True, help="Rank stage (0 = minimal admissible rank).")
@click.option("--format", "fmt", type=FORMATS, default="markdown", show_default=True)
def show(table, row, rank, fmt) -> None:
    """Print a table row and its instantiation at a rank stage."""
    r = get_row(table, row)
    stage = rank if r.rank_param else 0
    params = r.params_at(stage)
    info = {"table": table, "row": r.row_id, "module": r.module, "k_group": r.k_group,
            "params": params, "admissible": r.is_admissible(params), "dimensions": r.dimensions(params),
            "notes": r.notes}
    if r.group is not None:
        spec = r.instantiate(params)
        info["group"] = spec.group.name
        info["dim_v"] = spec.dim
    if r.algebra is not None:
        alg = r.build_algebra(params)
        info["algebra"] = {"name": alg.name, "dim_z": alg.dim_z, "dim_v": alg.dim_v, "z_split": alg.z_split}
    problems = r.check_dimensions(params)
    info["dimension_problems"] = problems
    lines = [f"## {table} row {r.row_id}", ""]
    lines += [f"- **{k}**: {v}" for k, v in info.items() if k not in ("table", "row") and v is not None]
    _emit(info, fmt, "\n".join(lines))
    sys.exit(1 if problems else 0)


@main.command("fock")
@click.option("--n", "n", default=1, show_default=True, help="Complex dimension of v.")
@click.option("--t", "t", default="1", show_default=True, help="Central parameter (nonzero).")
@click.option("--cutoff", default=30, show_default=True)
@click.option("--window", default=5, show_default=True, help="Degree of the compared columns.")
@click.option("--quad-order", default=16, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="markdown", show_default=True)
def fock_cmd(n, t, cutoff, window, quad_order, seed, fmt) -> None:
    """Group law and orthogonality of the truncated Fock model."""
    tv = float(_fractions([t])[0])
    if tv == 0:
        raise click.BadParameter("t must be nonzero")
    rng = np.random.default_rng(seed)

    def element() -> fock.GroupElement:
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        v = v / max(1.0, float(np.linalg.norm(v)))
        return fock.GroupElement(float(rng.uniform(-1, 1)), tuple(complex(x) for x in v))

    a, b = element(), element()
    residual = fock.verify_group_law(tv, a, b, cutoff, window=window)
    idx = [m for d in range(3) for m in fock.multi_indices(n, d)]
    pairs = [(l, m) for l in idx for m in idx]
    gram = fock.orthogonality_gram(pairs, tv, quad_order)
    orth = float(np.max(np.abs(gram.gram - np.eye(len(pairs)) / abs(tv) ** n)))
    info = {"n": n, "t": t, "cutoff": cutoff, "window": window, "group_law_residual": residual,
            "orthogonality_error": orth, "quadrature_order": gram.order, "converged": gram.converged}
    ok = residual < 1e-8 and orth < 1e-6
    lines = [f"- {k}: {v}" for k, v in encode(info).items()] + [f"- result: {'PASS' if ok else 'FAIL'}"]
    _emit({**info, "passed": ok}, fmt, "\n".join(lines))
    sys.exit(0 if ok else 1)


@main.command()
@click.option("--table", type=click.Choice(TABLE_IDS), default=None)
@click.option("--row", default=None)
@click.option("--rank", default=0, show_default=True)
@click.option("--heisenberg", "hn", type=int, default=None, help="Use h_n instead of a table row.")
@click.option("--t", "ts", multiple=True, help="Central functional coordinate (repeatable); random if omitted.")
@click.option("--seed", default=0, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="markdown", show_default=True)
def pfaffian(table, row, rank, hn, ts, seed, fmt) -> None:
    """Pfaffian of b_t, its square against the determinant, and the t''-split."""
    if hn is not None:
        alg = nilpotent.heisenberg(hn)
    elif table and row:
        r = get_row(table, row)
        alg = r.build_algebra(r.params_at(rank if r.rank_param else 0))
    else:
        raise click.UsageError("give --heisenberg N or --table and --row")
    t = _fractions(ts) if ts else list(nilpotent.random_functional(alg.dim_z, random.Random(seed)))
    if len(t) != alg.dim_z:
        raise click.BadParameter(f"expected {alg.dim_z} coordinates for t, got {len(t)}")
    form = nilpotent.b_form(alg, t)
    pf = nilpotent.pfaffian(form, check=False)
    det = exactla.det(form.matrix)
    info = {"algebra": alg.name, "t": t, "pfaffian": pf, "det": det, "pf_squared_is_det": pf * pf == det,
            "square_integrable": pf != 0}
    if alg.z_split is not None:
        info["independent_of_t2"] = nilpotent.pfaffian_split_check(alg, t[: alg.z_split], seed=seed)
    ok = info["pf_squared_is_det"] and info.get("independent_of_t2", True)
    lines = [f"- {k}: {v}" for k, v in encode(info).items()]
    _emit({**info, "passed": ok}, fmt, "\n".join(lines))
    sys.exit(0 if ok else 1)


@main.command()
@click.option("--table", type=click.Choice(["jaw"]), default="jaw", show_default=True)
@click.option("--row", default=None, help="Row of the direct-system table.")
@click.option("--heisenberg", "hn", type=int, default=None, help="Heisenberg chain h_1 -> ... -> h_N.")
@click.option("--stages", default=3, show_default=True)
@click.option("--rank", default=0, show_default=True, help="Stage of the first group.")
@click.option("--t", "ts", multiple=True, help="Rational central parameter (repeatable).")
@click.option("--format", "fmt", type=FORMATS, default="markdown", show_default=True)
def chain(table, row, hn, stages, rank, ts, fmt) -> None:
    """Build an injection chain and test limit alignment."""
    tvals = _fractions(ts) if ts else [Fraction(1, 2), Fraction(1), Fraction(2)]
    if hn is not None:
        ch = limits.build_heisenberg_chain(hn, tvals)
    elif row is not None:
        r = get_row(table, row)
        try:
            ch = limits.build_semidirect_chain(r, [rank + k for k in range(stages)], tvals)
        except limits.ParabolicCorrespondenceError as exc:
            _emit({"chain": r.key, "aligned": False, "error": str(exc), "passed": False}, fmt,
                  f"- chain: {r.key}\n- error: {exc}\n- result: FAIL")
            sys.exit(1)
    else:
        raise click.UsageError("give --heisenberg N or --row")
    verdict = limits.check_limit_aligned(ch)
    consistent = limits.composition_consistent(ch)
    scales = {f"{inj.src}->{inj.dst}": sorted({str(s) for s in inj.scale2.values()}) for inj in ch.injections}
    info = {"chain": ch.name, "stages": len(ch.stages), "aligned": verdict.aligned, "witness": verdict.witness,
            "composition_consistent": consistent, "scale_squared": scales}
    ok = verdict.aligned and consistent
    lines = [f"- {k}: {v}" for k, v in encode(info).items()] + [f"- result: {'PASS' if ok else 'FAIL'}"]
    _emit({**info, "passed": ok}, fmt, "\n".join(lines))
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
