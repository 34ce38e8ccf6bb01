"""Machine-readable classification tables.

Each table is a YAML file in ``nilgelfand/data``.  A row carries rank
parameters, an admissibility predicate and expressions for its dimensions;
rows with a ``group``/``action`` block instantiate to a :class:`GroupSpec`
and rows with an ``algebra`` block to a :class:`NilpotentAlgebra`.

Expressions are evaluated by a small arithmetic interpreter over the rank
parameters; nothing in a data file is passed to ``eval``.
"""

from __future__ import annotations

import ast
import operator
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import yaml

from .carcano import GroupSpec, RepAction, make_group
from .nilpotent import (
    NilpotentAlgebra,
    direct_sum,
    heisenberg,
    matrix_heisenberg,
    octonionic_heisenberg,
    quaternionic_heisenberg,
    with_center,
)

TABLE_IDS = ("kac", "jaw", "vin", "indVin", "ipms", "indIpms", "ipmsNzc", "ipmsUbd")

EXPECTED_COUNTS = {
    "kac": 22,
    "jaw": 16,
    "vin": 23,
    "indVin": 13,
    "ipms": 25,
    "indIpms": 28,
    "ipmsNzc": 7,
    "ipmsUbd": 4,
}

ACTION_KINDS = ("standard", "sym2", "wedge2", "tensor", "spin", "halfspin", "directSum", "dual", "trivial")


class TableSchemaError(ValueError):
    """A data file violates the row schema; the message names the row."""

    def __init__(self, table: str, row: str | None, message: str):
        self.table = table
        self.row = row
        where = f"{table}" if row is None else f"{table} row {row}"
        super().__init__(f"{where}: {message}")


# ------------------------------------------------------------ expressions

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}
_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


def evaluate(expr: str | int | bool, params: Mapping[str, int]) -> int | bool:
    """Evaluate an integer or boolean expression over ``params``.

    Supports integer literals, ``True``/``False``, parameter names,
    ``+ - * // % **``, unary minus, comparisons (chained) and
    ``and``/``or``/``not``.
    """
    if isinstance(expr, (bool, int)):
        return expr
    try:
        tree = ast.parse(str(expr), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse expression {expr!r}") from exc
    return _eval(tree.body, params, str(expr))


def _eval(node: ast.AST, params: Mapping[str, int], src: str):
    if isinstance(node, ast.Constant) and isinstance(node.value, (bool, int)):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in params:
            raise ValueError(f"unknown parameter {node.id!r} in {src!r}")
        return int(params[node.id])
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, params, src), _eval(node.right, params, src))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval(node.operand, params, src)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.Not):
        return not _eval(node.operand, params, src)
    if isinstance(node, ast.BoolOp):
        vals = (_eval(v, params, src) for v in node.values)
        return all(vals) if isinstance(node.op, ast.And) else any(vals)
    if isinstance(node, ast.Compare):
        left = _eval(node.left, params, src)
        for op, comp in zip(node.ops, node.comparators):
            if type(op) not in _CMPOPS:
                break
            right = _eval(comp, params, src)
            if not _CMPOPS[type(op)](left, right):
                return False
            left = right
        else:
            return True
    raise ValueError(f"unsupported construct in expression {src!r}")


_CALL_RE = re.compile(r"^\s*(\w+)\((.*)\)\s*$")


def _substitute_factor(template: str, params: Mapping[str, int]) -> str:
    """``SO(2*m)`` with m = 2 becomes ``SO(4)``; bare names pass through."""
    m = _CALL_RE.match(template)
    if not m:
        return template.strip()
    return f"{m.group(1)}({evaluate(m.group(2), params)})"


def _split_args(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    out.append(cur)
    return [a.strip() for a in out if a.strip()]


def algebra_part(descriptor: str, params: Mapping[str, int]) -> NilpotentAlgebra:
    """Build one summand from ``hC(k)``, ``hH(k)``, ``hO(1)``, ``mC(p, k)`` or ``mH(p, k)``."""
    m = _CALL_RE.match(descriptor)
    if not m:
        raise ValueError(f"bad algebra descriptor {descriptor!r}")
    head, args = m.group(1), [int(evaluate(a, params)) for a in _split_args(m.group(2))]
    if head == "hC" and len(args) == 1:
        return heisenberg(args[0])
    if head == "hH" and len(args) == 1:
        return quaternionic_heisenberg(args[0])
    if head == "hO" and args == [1]:
        return octonionic_heisenberg()
    if head in ("mC", "mH") and len(args) == 2:
        return matrix_heisenberg(args[0], args[1], head[1])
    raise ValueError(f"bad algebra descriptor {descriptor!r}")


# ------------------------------------------------------------------- rows


@dataclass(frozen=True)
class TableRow:
    """One row of a classification table.

    ``group``/``action`` hold the raw templates; :meth:`instantiate` fills in
    rank parameters.  ``dims`` maps a dimension name (``dim_v``, ``v``,
    ``z``, ``z1``, ``z2``) to an expression.
    """

    table: str
    row_id: str
    module: str
    admissible: str
    minimal: dict[str, int]
    dims: dict[str, str]
    rank_param: str | None = None
    rank_step: int = 1
    group: dict | None = None
    action: dict | None = None
    k_group: str | None = None
    center: str | None = None
    extra_center: str | None = None
    algebra: dict | None = None
    u1_needed_if: str | None = None
    max_requires: str | None = None
    static_only: bool = False
    dmax: int | None = None
    notes: str | None = None
    raw: dict = field(default_factory=dict, compare=False, repr=False)

    # -- parameters

    @property
    def key(self) -> str:
        return f"{self.table}:{self.row_id}"

    @property
    def has_chain(self) -> bool:
        return self.rank_param is not None and not self.static_only

    def params_at(self, stage: int = 0) -> dict[str, int]:
        """Rank parameters at a stage; stage 0 is the minimal rank."""
        params = dict(self.minimal)
        if stage:
            if self.rank_param is None:
                raise ValueError(f"{self.key} has no rank parameter")
            params[self.rank_param] = params[self.rank_param] + stage * self.rank_step
        return params

    def _params(self, where: int | Mapping[str, int]) -> dict[str, int]:
        return self.params_at(where) if isinstance(where, int) else {**self.minimal, **dict(where)}

    def is_admissible(self, params: Mapping[str, int]) -> bool:
        return bool(evaluate(self.admissible, params))

    def needs_circle(self, params: Mapping[str, int]) -> bool | None:
        """Whether the U(1) factor is needed for maximality, when the row says."""
        return None if self.u1_needed_if is None else bool(evaluate(self.u1_needed_if, params))

    def dimensions(self, where: int | Mapping[str, int] = 0) -> dict[str, int]:
        params = self._params(where)
        return {k: int(evaluate(v, params)) for k, v in self.dims.items()}

    # -- instantiation

    def instantiate(self, where: int | Mapping[str, int] = 0) -> GroupSpec:
        """The group acting on v at the given stage or parameters."""
        if self.group is None or self.action is None:
            raise ValueError(f"{self.key} has no group action")
        params = self._params(where)
        if not self.is_admissible(params):
            raise ValueError(f"{self.key}: parameters {params} are not admissible")
        factors = [_substitute_factor(f, params) for f in self.group["factors"]]
        group = make_group(factors, int(self.group.get("circles", 0)))
        action = _action(self.action)
        label = ",".join(f"{k}={v}" for k, v in sorted(params.items()))
        name = f"{self.key}[{label}]" if label else self.key
        return GroupSpec(group, action, name, (self.table, self.row_id))

    def build_algebra(self, where: int | Mapping[str, int] = 0) -> NilpotentAlgebra:
        """n' (plus the bracket-trivial center z'' when the row has one)."""
        if self.algebra is None:
            raise ValueError(f"{self.key} has no built algebra")
        params = self._params(where)
        parts = [algebra_part(p, params) for p in self.algebra["parts"]]
        alg = parts[0] if len(parts) == 1 else direct_sum(*parts)
        if "center" in self.algebra:
            alg = with_center(alg, int(evaluate(self.algebra["center"], params)))
        return alg

    def check_dimensions(self, where: int | Mapping[str, int] = 0) -> list[str]:
        """Disagreements between declared and constructed dimensions (empty if none)."""
        params = self._params(where)
        dims = self.dimensions(params)
        problems = []
        if self.group is not None:
            dim_c = self.instantiate(params).dim
            if "dim_v" in dims and dim_c != dims["dim_v"]:
                problems.append(f"dim v = {dim_c}, declared {dims['dim_v']}")
            if "v" in dims and 2 * dim_c != dims["v"]:
                problems.append(f"real dim v = {2 * dim_c}, declared {dims['v']}")
        if self.algebra is not None:
            alg = self.build_algebra(params)
            if alg.dim_v != dims.get("v"):
                problems.append(f"algebra dim v = {alg.dim_v}, declared {dims.get('v')}")
            if "z" in dims and alg.dim_z != dims["z"]:
                problems.append(f"algebra dim z = {alg.dim_z}, declared {dims['z']}")
            if "z1" in dims:
                z1 = alg.dim_z if alg.z_split is None else alg.z_split
                if z1 != dims["z1"] or alg.dim_z - z1 != dims["z2"]:
                    problems.append(f"algebra z' + z'' = {z1} + {alg.dim_z - z1}, "
                                    f"declared {dims['z1']} + {dims['z2']}")
            if alg.derived_dim != (dims.get("z1") if "z1" in dims else dims.get("z")):
                problems.append(f"[n, n] has dimension {alg.derived_dim}")
        return problems


def _action(block: Mapping) -> RepAction:
    kind = block.get("kind")
    if kind not in ACTION_KINDS:
        raise ValueError(f"unknown action kind {kind!r}")
    parts = tuple(_action(p) for p in block.get("parts", ()))
    return RepAction(kind, tuple(block.get("factors", ())), tuple(block.get("charges", ())), parts)


# ---------------------------------------------------------------- loading

_REQUIRED = ("id", "module", "admissible", "minimal")


def _row(table: str, rec: Any) -> TableRow:
    if not isinstance(rec, dict):
        raise TableSchemaError(table, None, f"row is not a mapping: {rec!r}")
    rid = str(rec.get("id")) if "id" in rec else None
    for key in _REQUIRED:
        if key not in rec:
            raise TableSchemaError(table, rid, f"missing field {key!r}")
    if "dim_v" in rec:
        dims = {"dim_v": str(rec["dim_v"])}
    elif isinstance(rec.get("dims"), dict):
        dims = {k: str(v) for k, v in rec["dims"].items()}
    else:
        raise TableSchemaError(table, rid, "missing dimensions ('dim_v' or 'dims')")
    if ("group" in rec) != ("action" in rec):
        raise TableSchemaError(table, rid, "'group' and 'action' must appear together")
    rank = rec.get("rank")
    if rank is not None and (not isinstance(rank, dict) or "param" not in rank):
        raise TableSchemaError(table, rid, "'rank' needs a 'param'")
    minimal = rec["minimal"] or {}
    if not isinstance(minimal, dict):
        raise TableSchemaError(table, rid, "'minimal' must be a mapping")
    if rank is not None and rank["param"] not in minimal:
        raise TableSchemaError(table, rid, f"rank parameter {rank['param']!r} has no minimal value")
    algebra = rec.get("algebra")
    if algebra is not None and not (isinstance(algebra, dict) and algebra.get("parts")):
        raise TableSchemaError(table, rid, "'algebra' needs a non-empty 'parts' list")
    row = TableRow(
        table=table,
        row_id=rid,
        module=str(rec["module"]),
        admissible=str(rec["admissible"]),
        minimal={str(k): int(v) for k, v in minimal.items()},
        dims=dims,
        rank_param=None if rank is None else str(rank["param"]),
        rank_step=1 if rank is None else int(rank.get("step", 1)),
        group=rec.get("group"),
        action=rec.get("action"),
        k_group=rec.get("k_group"),
        center=rec.get("center"),
        extra_center=rec.get("extra_center"),
        algebra=algebra,
        u1_needed_if=rec.get("u1_needed_if"),
        max_requires=rec.get("max_requires"),
        static_only=bool(rec.get("static_only", False)),
        dmax=rec.get("dmax"),
        notes=rec.get("notes"),
        raw=dict(rec),
    )
    try:
        if not row.is_admissible(row.minimal):
            raise TableSchemaError(table, rid, f"minimal parameters {row.minimal} are not admissible")
        row.dimensions(0)
        if row.group is not None:
            _action(row.action)
    except (ValueError, TypeError, KeyError) as exc:
        if isinstance(exc, TableSchemaError):
            raise
        raise TableSchemaError(table, rid, str(exc)) from exc
    return row


def load_table(source: str | Path) -> list[TableRow]:
    """Load one table by id (``kac``, ``jaw``, ...) or from a YAML path."""
    if isinstance(source, str) and source in TABLE_IDS:
        text = resources.files("nilgelfand").joinpath(f"data/{source}.yaml").read_text()
        label = source
    else:
        path = Path(source)
        text = path.read_text()
        label = path.stem
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise TableSchemaError(label, None, f"YAML error: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("rows"), list):
        raise TableSchemaError(label, None, "expected a mapping with a 'rows' list")
    table = str(doc.get("table", label))
    rows = [_row(table, rec) for rec in doc["rows"]]
    ids = [r.row_id for r in rows]
    dup = {i for i in ids if ids.count(i) > 1}
    if dup:
        raise TableSchemaError(table, sorted(dup)[0], "duplicate row id")
    return rows


def load_tables(path: str | Path | None = None) -> dict[str, list[TableRow]]:
    """Load every table.

    ``path`` may name a directory of ``<table>.yaml`` files or a single file;
    by default the packaged data is used.  Packaged tables must have the
    expected row counts.
    """
    if path is None:
        out = {t: load_table(t) for t in TABLE_IDS}
        for t, rows in out.items():
            if len(rows) != EXPECTED_COUNTS[t]:
                raise TableSchemaError(t, None, f"{len(rows)} rows, expected {EXPECTED_COUNTS[t]}")
        return out
    p = Path(path)
    if p.is_dir():
        return {f.stem: load_table(f) for f in sorted(p.glob("*.yaml")) if f.stem in TABLE_IDS}
    rows = load_table(p)
    return {rows[0].table if rows else p.stem: rows}


def get_row(table: str, row_id: str) -> TableRow:
    for row in load_table(table):
        if row.row_id == str(row_id):
            return row
    raise KeyError(f"no row {row_id!r} in table {table!r}")
