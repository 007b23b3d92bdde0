import pytest
from hypothesis import given
from hypothesis import strategies as st

from bredon import gf2
from bredon.characters import (
    Subgroup,
    all_characters,
    all_subgroups,
    apply_linear,
    character_name,
    check_rank,
    is_invertible,
    iter_invertible,
    kernel_quotient,
    parse_character_name,
    restricts_trivially,
)
from bredon.errors import InvalidInputError, ResourceError


def test_all_characters():
    assert all_characters(1) == [1]
    assert all_characters(2) == [1, 2, 3]
    assert len(all_characters(3)) == 7


def test_names_roundtrip():
    assert character_name(5) == "p1p3"
    assert parse_character_name("p1p2p3") == 7
    for mask in range(1, 64):
        assert parse_character_name(character_name(mask)) == mask
    with pytest.raises(InvalidInputError):
        parse_character_name("q1")


def test_rank_caps():
    with pytest.raises(ResourceError):
        check_rank(13)
    with pytest.raises(InvalidInputError):
        check_rank(-1)
    assert check_rank(16, 16) == 16


def test_restricts_trivially_extremes():
    for r in (1, 2, 3):
        whole, triv = Subgroup.whole(r), Subgroup.trivial(r)
        for lam in all_characters(r):
            assert not restricts_trivially(lam, whole)
            assert restricts_trivially(lam, triv)


def test_restricts_trivially_rank2():
    b = Subgroup.generated_by(2, [0b01])
    assert restricts_trivially(0b10, b)
    assert not restricts_trivially(0b01, b)
    assert not restricts_trivially(0b11, b)


def test_kernel_quotient_examples():
    q = kernel_quotient(0b11, 2)
    assert q(0b01) == q(0b10) == 1
    assert q(0b11) is None
    assert kernel_quotient(0b001, 3)(0b011) == 0b01


def test_subgroup_canonical():
    assert Subgroup.generated_by(3, [3, 1]) == Subgroup.generated_by(3, [2, 1, 3])
    assert Subgroup.generated_by(3, [5, 6]).elements() == [0, 3, 5, 6]
    assert Subgroup.kernel_of(3, 2).index2_character() == 3


def test_subgroup_count_rank3():
    subs = all_subgroups(3)
    # 1 + 7 + 7 + 1 subgroups of dimensions 0..3
    assert len(subs) == 16
    assert [s.dim for s in subs].count(1) == 7


def test_gl2():
    assert sum(1 for _ in iter_invertible(2)) == 6
    assert sum(1 for _ in iter_invertible(3)) == 168
    assert not is_invertible((1, 1))


ranked_char = st.integers(1, 6).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, (1 << r) - 1)))


@given(ranked_char, st.integers(1, 63))
def test_quotient_identifies_mu_and_mu_plus_lambda(rl, mu):
    r, lam = rl
    mu &= (1 << r) - 1
    if mu in (0, lam):
        return
    q = kernel_quotient(lam, r)
    assert q(mu) == q(mu ^ lam)
    assert q(mu) is not None and q(mu) < 1 << (r - 1)


@given(ranked_char)
def test_quotient_is_two_to_one_onto(rl):
    r, lam = rl
    q = kernel_quotient(lam, r)
    images = [q(mu) for mu in range(1, 1 << r) if mu != lam]
    assert sorted(set(images)) == list(range(1, 1 << (r - 1)))
    assert all(images.count(x) == 2 for x in set(images))


@given(ranked_char)
def test_quotient_is_restriction_to_kernel(rl):
    # Values of mu on ker(lam) must equal values of q(mu) in K's coordinates.
    r, lam = rl
    q = kernel_quotient(lam, r)
    ker = Subgroup.kernel_of(lam, r)
    basis = gf2.kernel_basis(gf2.BitMatrix((lam,), r)).rows
    for mu in range(1, 1 << r):
        if mu == lam:
            continue
        on_basis = [gf2.dot(mu, b) for b in basis]
        image_vals = [gf2.dot(mu ^ lam, b) for b in basis]
        assert on_basis == image_vals
    assert restricts_trivially(lam, ker)


@given(st.integers(1, 5), st.data())
def test_trivial_count_matches_index(r, data):
    gens = data.draw(st.lists(st.integers(0, (1 << r) - 1), max_size=r))
    b = Subgroup.generated_by(r, gens)
    n = sum(restricts_trivially(lam, b) for lam in all_characters(r))
    assert n == 2 ** (r - b.dim) - 1


@given(st.integers(1, 4), st.data())
def test_apply_linear_is_linear(r, data):
    cols = tuple(data.draw(st.integers(0, (1 << r) - 1)) for _ in range(r))
    x, y = data.draw(st.integers(0, (1 << r) - 1)), data.draw(st.integers(0, (1 << r) - 1))
    assert apply_linear(cols, x ^ y) == apply_linear(cols, x) ^ apply_linear(cols, y)
