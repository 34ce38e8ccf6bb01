import pytest

from nilgelfand.carcano import (
    GroupSpec,
    RepAction,
    bigraded_decompose,
    compile_action,
    embed_label,
    highest_weight_stability,
    is_multiplicity_free,
    make_group,
    parse_factor,
    polynomial_decompose,
    stabilizer_mf_check,
    sum_of_two_pattern,
)
from nilgelfand.tables import get_row
from nilgelfand.weights import UnsupportedRootSystem


def jaw(row, stage=0):
    return get_row("jaw", row).instantiate(stage)


def so(n):
    return GroupSpec(make_group([f"SO({n})"]), RepAction("standard", (0,)), f"SO({n})")


def test_parse_factor():
    assert parse_factor("SU(3)").name == "SU(3)"
    assert parse_factor("U(2)").unitary
    assert parse_factor("Sp(2)").family == "C"
    assert parse_factor("SO(5)").family == "B"
    assert parse_factor("Spin(7)").family == "B"
    with pytest.raises(ValueError):
        parse_factor("F(4)")


def test_degree_zero_is_trivial():
    for row in ("1", "6", "10"):
        spec = jaw(row)
        assert polynomial_decompose(spec, 0)[0].terms == {spec.group.zero: 1}


def test_su2_degree_two():
    spec = jaw("1")
    assert polynomial_decompose(spec, 2)[2].terms == {(2, 0): 1}


def test_u1_so3_degree_two_harmonics():
    spec = jaw("5b")
    terms = polynomial_decompose(spec, 2)[2].terms
    assert len(terms) == 2
    dims = sorted(spec.group.weyl_dim(w) for w in terms)
    assert dims == [1, 5]
    assert all(w[-1] == -2 for w in terms)


def test_sp1_is_multiplicity_free():
    rep = is_multiplicity_free(jaw("3"), 4)
    assert rep.multiplicity_free
    assert "degree 4" in rep.note


@pytest.mark.parametrize("n", [3, 4])
def test_orthogonal_control_fails(n):
    rep = is_multiplicity_free(so(n), 2)
    assert rep.verdict == "violation"
    assert rep.witness["label"] == so(n).group.zero
    assert rep.witness["degrees"] == (0, 2)


def test_row_10_multiplicity_free():
    assert is_multiplicity_free(jaw("10"), 3).multiplicity_free


def test_dmax_must_be_positive():
    with pytest.raises(ValueError):
        is_multiplicity_free(jaw("1"), 0)


def test_dual_action_negates_charges():
    g = make_group(["SU(3)"], 1)
    (s,) = compile_action(g, RepAction.dual_of(RepAction("standard", (0,), (1,))))
    assert s.charges == (-1,)
    assert g.weyl_dim(s.highest) == 3


def test_bigraded_matches_total_degree():
    spec = GroupSpec(make_group(["SU(3)"], 1),
                     RepAction.direct_sum(RepAction("standard", (0,), (1,)), RepAction("standard", (0,), (-1,))))
    total = polynomial_decompose(spec, 2)[2]
    pieces = [bigraded_decompose(spec, (a, 2 - a)) for a in range(3)]
    merged = {}
    for p in pieces:
        for w, m in p.terms.items():
            merged[w] = merged.get(w, 0) + m
    assert merged == total.terms


def test_stabilizer_entry_17():
    assert stabilizer_mf_check("17", {"n": 1}, dmax=4).multiplicity_free


def test_stabilizer_entry_20a_pattern():
    rep = stabilizer_mf_check("20a", {"n": 3}, dmax=4)
    assert rep.multiplicity_free
    assert rep.checks["pattern_ok"]
    # q running past min(m1, m2) would list labels that do not occur
    assert not rep.checks["literal_pattern_ok"]
    row = next(r for r in rep.checks["pattern"] if r["m"] == (2, 1))
    assert row["matches"]


def test_sum_of_two_pattern_example():
    pat = sum_of_two_pattern(3, 2, 1)
    assert len(pat) == 2
    assert all(w[-1] == 1 for w in pat)


def test_torus_stabilizer_monomials():
    rep = stabilizer_mf_check("ubd1", {"n": 2}, dmax=3)
    assert rep.multiplicity_free
    for d, dec in enumerate(rep.per_degree):
        assert len(dec.terms) == d + 1
        assert all(m == 1 for m in dec.terms.values())


def test_unknown_stabilizer_row():
    with pytest.raises(UnsupportedRootSystem):
        stabilizer_mf_check("99")


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_stability_su_standard(d):
    rep = highest_weight_stability(jaw("1", 0), jaw("1", 1), d)
    assert rep.ok
    assert len(rep.small_labels) == 1


def test_stability_u_sym2():
    rep = highest_weight_stability(jaw("6", 0), jaw("6", 1), 1)
    assert rep.ok and rep.label_inclusion


def test_stability_rejects_negative_degree():
    with pytest.raises(ValueError):
        highest_weight_stability(jaw("1", 0), jaw("1", 1), -1)


def test_embed_label_pads_epsilon_coordinates():
    small, large = make_group(["U(2)"]), make_group(["U(3)"])
    assert embed_label(small, large, (2, 1)) == (2, 1, 0)
    with pytest.raises(ValueError):
        embed_label(small, make_group(["Sp(3)"]), (2, 1))
