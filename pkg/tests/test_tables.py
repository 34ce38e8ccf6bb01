import pytest

from nilgelfand import nilpotent
from nilgelfand.tables import (
    EXPECTED_COUNTS,
    TABLE_IDS,
    TableSchemaError,
    algebra_part,
    evaluate,
    get_row,
    load_table,
    load_tables,
)

ALL_ROWS = [(t, r.row_id) for t, rows in load_tables().items() for r in rows]


def test_row_counts():
    tables = load_tables()
    assert set(tables) == set(TABLE_IDS)
    assert {t: len(rows) for t, rows in tables.items()} == EXPECTED_COUNTS
    assert EXPECTED_COUNTS["jaw"] == 16 and EXPECTED_COUNTS["indVin"] == 13 and EXPECTED_COUNTS["indIpms"] == 28


@pytest.mark.parametrize("table,row", ALL_ROWS)
def test_dimensions_consistent_at_two_ranks(table, row):
    r = get_row(table, row)
    stages = (0, 1) if r.rank_param else (0,)
    for stage in stages:
        params = r.params_at(stage)
        assert r.is_admissible(params)
        assert r.check_dimensions(params) == []


@pytest.mark.parametrize("table", ["indVin", "indIpms"])
def test_descriptor_algebras_match_builder(table):
    for r in load_table(table):
        if r.algebra is None:
            continue
        for stage in (0, 1):
            params = r.params_at(stage)
            a = r.build_algebra(params)
            b = nilpotent.build_algebra(table, {"row": r.row_id, **params})
            assert (a.dim_z, a.dim_v, a.z_split, a.pfaffian_sign) == (b.dim_z, b.dim_v, b.z_split, b.pfaffian_sign)
            assert a.tensor() == b.tensor(), (r.row_id, params)


def test_instantiate_names_and_rejects_inadmissible():
    r = get_row("jaw", "1")
    spec = r.instantiate(1)
    assert spec.name == "jaw:1[n=3]" and spec.dim == 3 and spec.source == ("jaw", "1")
    with pytest.raises(ValueError):
        r.instantiate({"n": 1})


def test_static_only_row():
    assert get_row("kac", "14").static_only
    assert not get_row("kac", "1").static_only


def test_evaluate():
    assert evaluate("2*m + 1", {"m": 3}) == 7
    assert evaluate("n >= 3 and n % 2 == 1", {"n": 5}) is True
    assert evaluate("1 <= n <= 4", {"n": 6}) is False
    assert evaluate("n*(n-1)//2", {"n": 4}) == 6
    assert evaluate(3, {}) == 3


@pytest.mark.parametrize("expr", ["__import__('os')", "n.real", "[1, 2]", "lambda: 1", "m"])
def test_evaluate_rejects_unsafe_or_unknown(expr):
    with pytest.raises(ValueError):
        evaluate(expr, {"n": 2})


def test_algebra_part():
    assert algebra_part("hC(n+1)", {"n": 2}).dim_v == 6
    assert algebra_part("hH(2)", {}).dim_z == 3
    assert algebra_part("mC(2, n)", {"n": 2}).dim_z == 4
    with pytest.raises(ValueError):
        algebra_part("hX(2)", {})


def test_get_row_missing():
    with pytest.raises(KeyError):
        get_row("jaw", "14")


def _write(tmp_path, body):
    p = tmp_path / "custom.yaml"
    p.write_text(body)
    return p


def test_schema_error_names_row(tmp_path):
    p = _write(tmp_path, """table: custom
rows:
  - id: "7"
    module: "C^n"
    admissible: "n >= 1"
    minimal: {n: 1}
""")
    with pytest.raises(TableSchemaError) as err:
        load_table(p)
    assert err.value.row == "7" and "custom row 7" in str(err.value)


def test_schema_error_inadmissible_minimal(tmp_path):
    p = _write(tmp_path, """rows:
  - id: "a"
    module: "C^n"
    dim_v: "n"
    admissible: "n >= 2"
    minimal: {n: 1}
""")
    with pytest.raises(TableSchemaError, match="row a"):
        load_table(p)


def test_schema_error_duplicate_and_bad_yaml(tmp_path):
    rec = """  - id: "1"
    module: "C"
    dim_v: "1"
    admissible: "True"
    minimal: {}
"""
    with pytest.raises(TableSchemaError, match="duplicate"):
        load_table(_write(tmp_path, "rows:\n" + rec + rec))
    with pytest.raises(TableSchemaError):
        load_table(_write(tmp_path, "rows: [\n"))
    with pytest.raises(TableSchemaError):
        load_table(_write(tmp_path, "just text"))


def test_custom_table_loads(tmp_path):
    p = _write(tmp_path, """table: custom
rows:
  - id: "1"
    group: {factors: ["SU(n)"]}
    action: {kind: standard, factors: [0]}
    module: "C^n"
    dim_v: "n"
    admissible: "n >= 2"
    minimal: {n: 2}
    rank: {param: n}
""")
    (row,) = load_table(p)
    assert row.instantiate(2).dim == 4
    assert load_tables(p) == {"custom": [row]}
