from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bredon.characters import Subgroup, all_subgroups
from bredon.errors import InvalidInputError
from bredon.localization import (
    LocalPolynomial,
    build_local_presentation,
    clear_denominators,
    expected_trivial_b_dimension,
    gfp_dimension,
    gfp_stabilization_check,
    trivial_b_dimension,
    verify_local_relations,
)
from bredon.presentation import is_in_ideal
from bredon.ring import ATPolynomial, RepDegree, relation_polynomial

from oracles import multiset_choose

x = lambda m: LocalPolynomial.var("x", m)
e = lambda m: LocalPolynomial.var("e", m)


def test_presentation_whole_group_rank2():
    pres = build_local_presentation(2, Subgroup.whole(2))
    assert pres.x_gens == [1, 2, 3] and pres.e_gens == []
    (rel,) = pres.relations
    assert rel.family == "xxx"
    assert rel.polynomial == x(1) * x(2) + x(1) * x(3) + x(2) * x(3)


def test_presentation_mixed_rank2():
    b = Subgroup.generated_by(2, [1])
    pres = build_local_presentation(2, b)
    assert pres.x_gens == [1, 3] and pres.e_gens == [2]
    (rel,) = pres.relations
    assert rel.family == "xxe" and rel.triple == (1, 3, 2)
    assert rel.polynomial == x(1) + x(3) + x(1) * x(3) * e(2)
    assert pres.to_json() == {
        "rank": 2, "B": [1], "x": [1, 3], "e": [2], "relations": [{"family": "xxe", "triple": [1, 3, 2]}],
    }


def test_presentation_trivial_rank2():
    pres = build_local_presentation(2, Subgroup.trivial(2))
    (rel,) = pres.relations
    assert rel.family == "eee" and rel.polynomial == e(1) + e(2) + e(3)
    assert pres.x_gens == []


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_relation_counts_and_families(rank):
    for b in all_subgroups(rank):
        pres = build_local_presentation(rank, b)
        assert len(pres.relations) == (2**rank - 1) * (2**rank - 2) // 6
        trivial = set(pres.e_gens)
        for rel in pres.relations:
            n = len(trivial & set(rel.triple))
            assert rel.family == {0: "xxx", 1: "xxe", 3: "eee"}[n]


def test_generator_signs_at_extremes():
    for r in (1, 2, 3):
        assert build_local_presentation(r, Subgroup.whole(r)).e_gens == []
        assert build_local_presentation(r, Subgroup.trivial(r)).x_gens == []


def test_clear_denominators_examples():
    whole = Subgroup.whole(2)
    f, d = clear_denominators(x(1) * x(2) + x(1) * x(3) + x(2) * x(3), 2, whole)
    assert f == relation_polynomial([1, 2, 3]) and d == RepDegree.of(2, [1, 2, 3])
    f, d = clear_denominators(x(2), 2, whole)
    assert f == ATPolynomial.t(2) and d == RepDegree.of(1, [2])
    b = Subgroup.generated_by(2, [1])
    f, _ = clear_denominators(x(1) + x(3) + x(1) * x(3) * e(2), 2, b)
    assert f == relation_polynomial([1, 2, 3]) and is_in_ideal(f, 2)
    with pytest.raises(InvalidInputError):
        clear_denominators(e(1), 2, whole)


def test_verify_local_relations_rank3():
    for b in all_subgroups(3):
        rep = verify_local_relations(3, b)
        assert rep.passed, rep.failures
        assert rep.identities_checked == 42


def test_gfp_examples():
    for r in (1, 2, 3):
        assert gfp_dimension(r, 0) == 1
        assert gfp_dimension(r, 1) == 2**r - 1
    assert gfp_dimension(2, 2) == 5
    assert [gfp_dimension(1, d) for d in range(6)] == [1] * 6
    assert gfp_dimension(3, 4) == 73


def test_gfp_monotone_in_rank():
    for d in range(5):
        assert gfp_dimension(1, d) <= gfp_dimension(2, d) <= gfp_dimension(3, d)


@pytest.mark.parametrize("m,n,want", [(0, 1, 1), (1, 2, 3), (2, 3, 5)])
def test_stabilization_rank2(m, n, want):
    rep = gfp_stabilization_check(2, m, n)
    assert rep.dim_n == rep.gfp == want and rep.verdict == "pass"


def test_stabilization_default_n():
    assert gfp_stabilization_check(3, 2).n == 3


def test_trivial_b_examples():
    assert trivial_b_dimension(2, 2) == 3
    assert trivial_b_dimension(3, 1) == 3
    assert trivial_b_dimension(3, 0) == 1


@given(st.integers(1, 3), st.integers(0, 4))
def test_trivial_b_methods_agree_with_binomial(r, d):
    dense = trivial_b_dimension(r, d, "dense")
    assert dense == trivial_b_dimension(r, d, "normal-form") == expected_trivial_b_dimension(r, d)
    assert dense == multiset_choose(r, d) == comb(d + r - 1, r - 1)
