from fractions import Fraction

import pytest

from nilgelfand.stabilizers import (
    MIN_PARAMS,
    STABILIZER_ROWS,
    Z_CASES,
    NotSquareIntegrableError,
    bracket,
    centralizer,
    eigen_functional,
    is_zero,
    sp2,
    stabilizer_spec,
    verify_root_vectors_sp2,
    z_element,
)
from nilgelfand.weights import UnsupportedRootSystem


def test_sp2_basis_closes():
    alg = sp2()
    assert alg.dim == 10
    assert alg.is_closed()
    assert alg.derived_dim() == 10


def test_centralizer_of_zero_is_everything():
    alg = sp2()
    res = centralizer(alg, alg.element([0] * 10))
    assert res.dim == 10 and res.tag == "sp(2)"


@pytest.mark.parametrize("case", list(Z_CASES))
def test_z_cases(case):
    a1, a2, dim, tag = Z_CASES[case]
    res = centralizer(sp2(), z_element(a1, a2))
    assert (res.dim, res.tag) == (dim, tag)
    assert all(is_zero(bracket(b, res.element)) for b in res.basis)


def test_z_case_dimensions_in_listed_order():
    dims = [centralizer(sp2(), z_element(a1, a2)).dim for a1, a2, _, _ in Z_CASES.values()]
    assert dims == [4, 4, 2, 4, 4]


def test_centralizer_rejects_outside_element():
    x = tuple(tuple(Fraction(int(i == j)) for j in range(8)) for i in range(8))
    with pytest.raises(ValueError):
        centralizer(sp2(), x)


def test_root_vectors():
    checks = verify_root_vectors_sp2()
    assert len(checks) == 8
    assert all(c.eigen and c.proportional for c in checks)
    by_name = {c.name: c for c in checks}
    # short roots agree exactly, long roots 2 eps_l carry a factor 2 in the listing
    assert by_name["(0, 1+bi; -1+bi, 0)"].computed == (1, -1)
    assert by_name["(j+bk, 0; 0, 0)"].computed == (2, 0)
    assert {c.scale for c in checks} == {1, 2}


def test_cartan_elements_have_zero_functional():
    cartan = [z_element(1, 0), z_element(0, 1)]
    zero = z_element(0, 0)
    assert eigen_functional((cartan[0], zero), cartan) == (0, 0)


def test_stabilizer_spec_entry_18_cases():
    generic = stabilizer_spec("18", {"n": 2})
    assert generic.group.circles == 2 and len(generic.summands) == 2 and generic.dim == 8
    equal = stabilizer_spec("18", {"n": 2}, "a1=a2")
    assert len(equal.summands) == 1 and equal.dim == 8
    for case in ("a1=0", "a2=0"):
        with pytest.raises(NotSquareIntegrableError):
            stabilizer_spec("18", {"n": 2}, case)


def test_stabilizer_spec_unknown():
    with pytest.raises(UnsupportedRootSystem):
        stabilizer_spec("5")
    with pytest.raises(UnsupportedRootSystem):
        stabilizer_spec("18", None, "weird")


@pytest.mark.parametrize("row", list(STABILIZER_ROWS))
def test_stabilizer_specs_build_at_minimal_rank(row):
    spec = stabilizer_spec(row, MIN_PARAMS[row])
    assert spec.dim > 0
    assert spec.source == ("stabilizer", row)


