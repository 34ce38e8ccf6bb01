import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilgelfand import exactla
from nilgelfand.nilpotent import (
    INDIPMS_ROWS,
    INDVIN_ROWS,
    CentralFunctional,
    SkewForm,
    UnsupportedAlgebra,
    b_form,
    build_algebra,
    congruent,
    direct_sum,
    formal_degree,
    generic_set_witness,
    hc_conj,
    hc_mul,
    heisenberg,
    induced_formal_degree_finite,
    is_square_integrable,
    matrix_heisenberg,
    octonionic_heisenberg,
    pfaffian,
    pfaffian_at,
    pfaffian_expand,
    pfaffian_split_check,
    pfaffian_tridiagonal,
    quaternionic_heisenberg,
    restrict,
    split_control,
    with_center,
    zero_algebra,
)
from nilgelfand.tables import get_row

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def test_heisenberg_dimensions_and_bracket():
    h = heisenberg(1)
    assert (h.dim_z, h.dim_v) == (1, 2)
    assert h.c(0, 1, 0) == 1 and h.c(1, 0, 0) == -1
    assert h.jacobi_holds()


def test_quaternionic_dimensions():
    q = quaternionic_heisenberg(1)
    assert (q.dim_z, q.dim_v) == (3, 4)
    assert q.jacobi_holds()


def test_direct_sum_dimensions():
    s = direct_sum(heisenberg(2), heisenberg(2))
    assert (s.dim_z, s.dim_v) == (2, 8)
    m = b_form(s, [1, 0]).matrix
    assert all(m[i][j] == 0 for i in range(4, 8) for j in range(8))
    assert all(m[i][j] == 0 for i in range(4) for j in range(4, 8))
    assert pfaffian(m) == 0 and pfaffian_at(s, [2, 3]) == 4 * 9


def test_b_form_examples():
    assert all(x == 0 for row in b_form(heisenberg(3), [0]).matrix for x in row)
    assert b_form(heisenberg(1), [5]).matrix == ((0, 5), (-5, 0))
    q = b_form(quaternionic_heisenberg(1), [1, 0, 0]).matrix
    assert q == ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0))


def test_b_form_dimension_mismatch():
    with pytest.raises(ValueError):
        b_form(heisenberg(1), [1, 2])


def test_skew_form_validation():
    with pytest.raises(ValueError):
        SkewForm([[0, 1], [1, 0]])
    assert CentralFunctional([1, "1/2"]).t == (1, Fraction(1, 2))


def test_pfaffian_base_case_and_odd():
    assert pfaffian([[0, 7], [-7, 0]]) == 7
    assert pfaffian([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]]) == 0


def test_heisenberg_pfaffian_is_power_with_one_sign():
    signs = set()
    for n in range(1, 5):
        h = heisenberg(n)
        for t in (Fraction(1, 2), Fraction(3), Fraction(-2)):
            assert pfaffian_at(h, [t]) == h.pfaffian_sign * t ** n
        signs.add(h.pfaffian_sign)
    assert len(signs) == 1


def test_quaternionic_pfaffian_is_negative_definite_quadratic():
    q = quaternionic_heisenberg(1)
    assert q.pfaffian_sign == -1
    rng = random.Random(3)
    for _ in range(20):
        t = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(3)]
        assert pfaffian_at(q, t) == -sum(x * x for x in t)
    for n in (2, 3):
        assert quaternionic_heisenberg(n).pfaffian_sign == (-1) ** n
        assert pfaffian_at(quaternionic_heisenberg(n), [1, 2, 3]) == (-1) ** n * 14 ** n


def test_octonionic_pfaffian():
    o = octonionic_heisenberg()
    assert (o.dim_z, o.dim_v) == (7, 8)
    assert pfaffian_at(o, [1] * 7) == 49
    assert o.jacobi_holds()


def test_square_integrability():
    assert not is_square_integrable(heisenberg(2), [0])
    assert is_square_integrable(heisenberg(2), [1])
    q = quaternionic_heisenberg(1)
    assert not is_square_integrable(q, [0, 0, 0])
    assert is_square_integrable(q, [1, 2, 3])


def test_generic_set_witness():
    rep = generic_set_witness(heisenberg(2))
    assert rep.nonzero == rep.trials == 100 and rep.polynomial_nonzero
    assert generic_set_witness(quaternionic_heisenberg(2)).nonzero >= 1
    zero = generic_set_witness(zero_algebra(4))
    assert zero.nonzero == 0 and not zero.polynomial_nonzero
    with pytest.raises(ValueError):
        generic_set_witness(heisenberg(1), trials=0)


def test_split_check():
    alg = get_row("ipms", "1").build_algebra({"n": 2})
    assert pfaffian_split_check(alg)
    h = with_center(heisenberg(2), 3)
    assert pfaffian_split_check(h, [Fraction(2)])
    assert not pfaffian_split_check(split_control())
    with pytest.raises(ValueError):
        pfaffian_split_check(heisenberg(1))


def test_formal_degree():
    for n in range(1, 5):
        assert formal_degree(heisenberg(n), [2]) == 2 ** n
    assert formal_degree(heisenberg(1), [3], kappa_dim=5) == 15
    assert formal_degree(zero_algebra(2), [], kappa_dim=3) == 0


def test_induced_formal_degree_examples():
    for d in (Fraction(1), Fraction(7, 3)):
        assert induced_formal_degree_finite(1, d) == d
    assert induced_formal_degree_finite(2, 3) == 6
    assert induced_formal_degree_finite(4, Fraction(1, 2)) == 2
    with pytest.raises(ValueError):
        induced_formal_degree_finite(0, 1)
    with pytest.raises(ValueError):
        induced_formal_degree_finite(2, 0)


def test_build_algebra_names():
    assert build_algebra("heisenberg", {"n": 3}).dim_v == 6
    assert build_algebra("matrix_heisenberg", {"p": 2, "n": 2}).dim_z == 4
    assert build_algebra("abelian", {"n": 2}).dim_z == 0
    with pytest.raises(UnsupportedAlgebra):
        build_algebra("lie_algebra_of_everything")
    with pytest.raises(UnsupportedAlgebra):
        build_algebra("indVin", {"row": "999", "n": 1})


def test_matrix_heisenberg_is_two_step():
    m = matrix_heisenberg(2, 2, "H")
    assert m.jacobi_holds()
    assert generic_set_witness(m, trials=10).polynomial_nonzero


@pytest.mark.parametrize("row", INDVIN_ROWS + INDIPMS_ROWS)
def test_direct_system_algebras_have_nonvanishing_pfaffian(row):
    table = "indVin" if row in INDVIN_ROWS else "indIpms"
    r = get_row(table, row)
    alg = r.build_algebra(r.params_at(0))
    assert alg.jacobi_holds()
    assert generic_set_witness(alg, trials=5).polynomial_nonzero


# ---------------------------------------------------------------- properties


@st.composite
def skew_matrices(draw, max_dim=6):
    n = draw(st.integers(1, max_dim))
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = draw(rationals)
            m[i][j], m[j][i] = x, -x
    return m


@given(skew_matrices(max_dim=8))
def test_pfaffian_squared_is_determinant(m):
    assert pfaffian(m, check=False) ** 2 == exactla.det(m)


@given(skew_matrices(max_dim=8))
def test_pfaffian_routes_agree(m):
    assert pfaffian_expand(m) == pfaffian_tridiagonal(m)


@given(skew_matrices(), st.data())
def test_pfaffian_covariance(m, data):
    n = len(m)
    a = [[data.draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(n)]
    form = SkewForm(m)
    assert pfaffian(congruent(form, a)) == exactla.det(a) * pfaffian(form)


ALGEBRAS = [heisenberg(2), quaternionic_heisenberg(1), direct_sum(heisenberg(1), quaternionic_heisenberg(1)),
            matrix_heisenberg(2, 2)]


@given(st.sampled_from(ALGEBRAS), st.data(), rationals)
def test_pfaffian_homogeneity(alg, data, r):
    t = [data.draw(rationals) for _ in range(alg.dim_z)]
    rt = [r * x for x in t]
    assert pfaffian_at(alg, rt) == r ** (alg.dim_v // 2) * pfaffian_at(alg, t)


@given(st.integers(1, 4), rationals)
def test_nested_heisenberg_nonvanishing(n, t):
    big = pfaffian(b_form(heisenberg(n + 1), [t]))
    small = pfaffian(restrict(b_form(heisenberg(n + 1), [t]), 2 * n))
    assert small == pfaffian_at(heisenberg(n), [t])
    if big != 0:
        assert small != 0


@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8), st.lists(st.integers(-4, 4), min_size=8, max_size=8))
def test_octonion_norm_is_multiplicative(x, y):
    norm = lambda a: sum(c * c for c in a)
    assert norm(hc_mul(x, y, "O")) == norm(x) * norm(y)
    xy = hc_mul(x, y, "O")
    assert hc_conj(xy) == hc_mul(hc_conj(y), hc_conj(x), "O")
