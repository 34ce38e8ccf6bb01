import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilgelfand.fock import (
    FockBasis,
    GroupElement,
    coefficient,
    coefficient_stable,
    group_multiply,
    inject,
    multi_indices,
    operator_matrix,
    orthogonality_gram,
    orthogonality_integral,
    pfaffian_ratio_scale_squared,
    project,
    tail_mass,
    verify_group_law,
    verify_injection_isometry,
    zeta_prime_scale,
    zeta_prime_scale_squared,
)


def test_basis_size_and_order():
    b = FockBasis(2, 3)
    assert b.size == math.comb(5, 2) == len(b.index_list)
    assert b.index_list[:4] == [(0, 0), (1, 0), (0, 1), (2, 0)]
    assert b.position((0, 1)) == 2
    assert multi_indices(3, 1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    with pytest.raises(ValueError):
        FockBasis(0, 3)


def test_group_multiply_examples():
    h = GroupElement(0.7, [1 + 2j])
    assert group_multiply(GroupElement.identity(1), h) == h
    p = group_multiply(GroupElement(0, [1]), GroupElement(0, [1j]))
    # Im(1 * conj(i)) = -1, stored as the real coefficient of i
    assert p.z == -1.0 and p.v == (1 + 1j,)
    assert group_multiply(h, h.inverse()) == GroupElement.identity(1)
    with pytest.raises(ValueError):
        group_multiply(GroupElement(0, [1]), GroupElement(0, [1, 2]))


def test_identity_operator():
    op = operator_matrix(1.0, GroupElement.identity(2), FockBasis(2, 4))
    assert np.allclose(op.matrix, np.eye(op.basis.size), atol=0)


def test_central_character_scalar():
    z = 0.37
    op = operator_matrix(1.0, GroupElement(z, [0j]), FockBasis(1, 8))
    assert np.max(np.abs(op.matrix - cmath.exp(1j * z) * np.eye(9))) < 1e-13
    a = operator_matrix(2.0, GroupElement(0.2, [0j]), FockBasis(1, 3)).matrix[0, 0]
    b = operator_matrix(2.0, GroupElement(0.5, [0j]), FockBasis(1, 3)).matrix[0, 0]
    c = operator_matrix(2.0, GroupElement(0.7, [0j]), FockBasis(1, 3)).matrix[0, 0]
    assert abs(a * b - c) < 1e-15


def test_zero_t_rejected():
    with pytest.raises(ValueError):
        operator_matrix(0.0, GroupElement(0, [1]), FockBasis(1, 2))


@pytest.mark.parametrize("v", [0.3, 1j, 0.6 - 0.8j])
def test_vacuum_entry(v):
    h = GroupElement(0, [v])
    assert abs(coefficient((0,), (0,), 1.0, h) - math.exp(-abs(v) ** 2 / 2)) < 1e-14
    op = operator_matrix(1.0, h, FockBasis(1, 20))
    assert abs(op.matrix[0, 0] - math.exp(-abs(v) ** 2 / 2)) < 1e-14


def test_group_law_identity_factor_is_exact():
    a = GroupElement(0.4, [0.5 + 0.3j])
    assert verify_group_law(1.0, a, GroupElement.identity(1), 20) == 0.0


def test_group_law_truncation():
    a = GroupElement(0.3, [0.6 + 0.5j])
    b = GroupElement(-0.8, [-0.4 + 0.7j])
    fine = verify_group_law(1.0, a, b, 30, window=5)
    coarse = verify_group_law(1.0, a, b, 15, window=5)
    assert fine < 1e-8
    assert fine * 100 <= coarse


def test_group_law_central():
    a = GroupElement(1.3, [0j])
    b = GroupElement(0.1, [0.9 - 0.2j])
    assert verify_group_law(1.0, a, b, 25) < 1e-13


def test_column_norms_bounded_by_tail():
    h = GroupElement(0, [0.8 + 0.4j])
    op = operator_matrix(1.0, h, FockBasis(1, 20))
    defects = op.norm_defects()
    assert np.all(op.column_norms() <= 1 + 1e-12)
    for m in (0, 5, 10):
        assert abs(defects[m] - tail_mass(1.0, h, (m,), 20)) < 1e-12


def test_coefficients():
    e = GroupElement.identity(2)
    assert coefficient((1, 0), (1, 0), 1.0, e) == 1
    assert coefficient((1, 0), (0, 1), 1.0, e) == 0
    h = GroupElement(0.2, [0.3 + 0.1j, -0.5j])
    assert coefficient_stable((1, 2), (2, 0), 1.0, h)
    for l, m in [((0, 1), (1, 1)), ((2, 0), (0, 0))]:
        assert abs(coefficient(l, m, 1.5, h.inverse()) - coefficient(m, l, 1.5, h).conjugate()) < 1e-12


@pytest.mark.parametrize("idx,t,want", [(((0,), (0,), (0,), (0,)), 1.0, 1.0),
                                        (((0,), (0,), (1,), (0,)), 1.0, 0.0),
                                        (((0,), (0,), (0,), (0,)), 2.0, 0.5)])
def test_orthogonality_examples(idx, t, want):
    res = orthogonality_integral(*idx, t)
    assert res.converged
    assert abs(res.value - want) < 1e-6


def test_orthogonality_gram_n1_negative_t():
    idx = [m for d in range(3) for m in multi_indices(1, d)]
    pairs = [(l, m) for l in idx for m in idx]
    g = orthogonality_gram(pairs, -1.0)
    assert np.max(np.abs(g.gram - np.eye(len(pairs)))) < 1e-6


def test_orthogonality_rejects_large_n():
    with pytest.raises(ValueError):
        orthogonality_gram([((0, 0, 0), (0, 0, 0))], 1.0)


def test_negative_t_invariants():
    a = GroupElement(0.3, [0.5 - 0.2j])
    b = GroupElement(0.1, [-0.3 + 0.6j])
    assert verify_group_law(-1.0, a, b, 30, window=5) < 1e-8
    op = operator_matrix(-1.0, GroupElement(0.4, [0j]), FockBasis(1, 4))
    assert np.allclose(op.matrix, cmath.exp(-0.4j) * np.eye(5))


def test_zeta_scales():
    assert zeta_prime_scale(2, 2, 3) == 1
    assert zeta_prime_scale(1, 2, 4) == 0.5
    with pytest.raises(ValueError):
        zeta_prime_scale(3, 2, 1)


@given(st.fractions(min_value=-20, max_value=20, max_denominator=9).filter(bool), st.integers(1, 3),
       st.integers(0, 2))
def test_zeta_scale_matches_pfaffian_ratio(t, n, k):
    assert zeta_prime_scale_squared(n, n + k, t) == pfaffian_ratio_scale_squared(n, n + k, t)


def test_isometry_single_coefficient():
    rep = verify_injection_isometry(1, 2, 2.0, {((1,), (0,)): 1.0})
    assert rep.quadrature and rep.round_trip_exact
    assert rep.defect < 1e-12


def test_isometry_random_family():
    rng = np.random.default_rng(5)
    idx = [m for d in range(3) for m in multi_indices(1, d)]
    keys = [(l, m) for l in idx for m in idx]
    chosen = rng.choice(len(keys), 5, replace=False)
    phi = {keys[i]: complex(*rng.normal(size=2)) for i in chosen}
    for t in (0.5, 1.0, 2.0):
        rep = verify_injection_isometry(1, 2, t, phi)
        assert rep.defect < 1e-12
        assert rep.round_trip_exact
    assert verify_injection_isometry(1, 4, 1.0, phi).defect < 1e-12


def test_project_drops_foreign_support():
    psi = inject({((1,), (0,)): 2.0}, 3)
    psi[((0, 1, 0), (0, 0, 0))] = 5.0
    assert project(psi, 1) == {((1,), (0,)): 2.0}
