import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilgelfand.repcalc import irrep_weights
from nilgelfand.weights import (
    DominantLabel,
    NotDominantError,
    UnsupportedRootSystem,
    build_root_system,
    dominant_representative,
    standard_cartan,
    weyl_dim,
    weyl_orbit,
)


@pytest.mark.parametrize("family,rank,count", [("A", 1, 1), ("A", 3, 6), ("B", 3, 9), ("C", 2, 4),
                                               ("C", 3, 9), ("D", 4, 12), ("G2", 2, 6), ("E6", 6, 36)])
def test_positive_root_counts(family, rank, count):
    assert len(build_root_system(family, rank).positive_roots) == count


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G2", 2), ("E6", 6)])
def test_cartan_matrix_is_standard(family, rank):
    assert build_root_system(family, rank).cartan_matrix() == standard_cartan(family, rank)


def test_standard_cartan_entries():
    assert standard_cartan("C", 2) == [[2, -1], [-2, 2]]
    assert standard_cartan("B", 2) == [[2, -2], [-1, 2]]
    assert standard_cartan("G2", 2) == [[2, -1], [-3, 2]]


@pytest.mark.parametrize("family,rank", [("A", 4), ("B", 3), ("C", 3), ("D", 4), ("G2", 2), ("E6", 6)])
def test_fundamental_weights_are_dual_to_coroots(family, rank):
    rs = build_root_system(family, rank)
    for i, f in enumerate(rs.fundamental_weights):
        assert rs.pairings(f) == tuple(int(i == j) for j in range(rank))


def test_weyl_dim_examples():
    rs = build_root_system("A", 3)
    assert weyl_dim(rs.zero, rs) == 1
    assert weyl_dim(rs.from_dynkin([1, 0, 0]), rs) == 4
    for m in range(2, 6):
        a = build_root_system("A", m - 1)
        assert weyl_dim(a.from_dynkin([2] + [0] * (m - 2)), a) == m * (m + 1) // 2
        if m >= 3:
            assert weyl_dim(a.from_dynkin([0, 1] + [0] * (m - 3)), a) == m * (m - 1) // 2
    assert weyl_dim(build_root_system("E6", 6).from_dynkin([1, 0, 0, 0, 0, 0]), build_root_system("E6", 6)) == 27
    g2 = build_root_system("G2", 2)
    assert sorted(weyl_dim(f, g2) for f in g2.fundamental_weights) == [7, 14]
    b3 = build_root_system("B", 3)
    assert weyl_dim(b3.fundamental_weights[-1], b3) == 8


def test_weyl_dim_rejects_non_dominant():
    rs = build_root_system("A", 1)
    with pytest.raises(NotDominantError):
        weyl_dim(rs.from_dynkin([-1]), rs)
    with pytest.raises(NotDominantError):
        DominantLabel(rs.from_dynkin([-2]), rs)


def test_dominant_representative_idempotent_and_wall():
    rs = build_root_system("C", 2)
    w = rs.from_dynkin([-3, 1])
    d, sign, stab = dominant_representative(w, rs, shifted=False)
    assert rs.is_dominant(d)
    assert dominant_representative(d, rs, shifted=False)[0] == d
    a1 = build_root_system("A", 1)
    # -rho lies on the shifted wall
    assert dominant_representative(a1.from_dynkin([-1]), a1, shifted=True)[2] is True


def test_dominant_representative_matches_brute_force_c2():
    rs = build_root_system("C", 2)
    orbit_of = lambda w: weyl_orbit(w, rs)
    for a, b in itertools.product(range(-3, 4), repeat=2):
        w = rs.from_dynkin([a, b])
        orb = orbit_of(w)
        assert len(orb) <= 8
        dom = [x for x in orb if rs.is_dominant(x)]
        assert len(dom) == 1
        assert dominant_representative(w, rs, shifted=False)[0] == dom[0]


@pytest.mark.parametrize("family,rank", [("A", 0), ("B", 1), ("C", 1), ("D", 2), ("F", 4), ("E", 7)])
def test_unsupported_families(family, rank):
    with pytest.raises((UnsupportedRootSystem, ValueError)):
        build_root_system(family, rank)


def test_low_rank_degenerations():
    assert build_root_system("C", 1, low_rank=True).rank == 1
    assert len(build_root_system("D", 2, low_rank=True).positive_roots) == 2


FAMILIES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3), ("D", 4), ("G2", 2)]


@given(st.sampled_from(FAMILIES), st.data())
def test_weyl_dim_equals_weight_count(fr, data):
    rs = build_root_system(*fr)
    labels = data.draw(st.lists(st.integers(0, 2), min_size=rs.rank, max_size=rs.rank).filter(lambda x: sum(x) <= 4))
    w = rs.from_dynkin(labels)
    assert weyl_dim(w, rs) == irrep_weights(w, rs).dim
