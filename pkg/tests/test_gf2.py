import pytest
from hypothesis import given
from hypothesis import strategies as st

from bredon import gf2
from bredon.errors import DimensionMismatchError, InvalidInputError, ResourceError

from oracles import brute_kernel, brute_rank

M = gf2.BitMatrix.from_strings


def test_rank_identity_and_zero():
    assert gf2.rank(gf2.BitMatrix.identity(3)) == 3
    assert gf2.rank(gf2.BitMatrix.zero(4, 7)) == 0


def test_rank_dependent_rows():
    assert gf2.rank(M(["110", "011", "101"])) == 2


def test_in_span_examples():
    m = M(["110", "011"])
    assert gf2.in_span(gf2.BitVector.from_string("000"), m)
    # the sum of the two rows is 101; 111 would raise the rank to 3
    assert gf2.in_span(gf2.BitVector.from_string("101"), m)
    assert not gf2.in_span(gf2.BitVector.from_string("111"), m)
    assert not gf2.in_span(gf2.BitVector.from_string("100"), m)


def test_in_span_length_mismatch():
    with pytest.raises(DimensionMismatchError):
        gf2.in_span(gf2.BitVector.from_string("10"), M(["110"]))


def test_kernel_examples():
    assert gf2.kernel_basis(gf2.BitMatrix.identity(2)).nrows == 0
    assert gf2.kernel_basis(gf2.BitMatrix.zero(1, 3)).nrows == 3
    k = gf2.kernel_basis(M(["110"]))
    assert sorted(str(v) for v in k.vectors()) == ["001", "110"]


def test_kernel_basis_is_deterministic_order():
    # free columns ascending: columns 1 and 2 are free after pivot 0
    k = gf2.kernel_basis(M(["111"]))
    assert [str(v) for v in k.vectors()] == ["110", "101"]


def test_bitvector_roundtrip_and_bad_input():
    assert str(gf2.BitVector.from_string("0101")) == "0101"
    with pytest.raises(InvalidInputError):
        gf2.BitVector.from_string("012")
    with pytest.raises(DimensionMismatchError):
        gf2.BitMatrix((8,), 3)
    with pytest.raises(DimensionMismatchError):
        M(["10", "101"])


def test_size_cap():
    with pytest.raises(ResourceError):
        gf2.check_size(10**6, 10**4)


def test_echelon_normal_form_kills_pivots():
    b = gf2.EchelonBasis([0b011, 0b110])
    nf = b.normal_form(0b111)
    assert nf & sum(1 << p for p in b.pivot_columns()) == 0
    assert (0b111 ^ nf) in b


matrices = st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, (1 << n) - 1), max_size=7))
)


@given(matrices)
def test_rank_matches_brute_force(nm):
    n, rows = nm
    assert gf2.rank(gf2.BitMatrix(tuple(rows), n)) == brute_rank(rows)


@given(matrices)
def test_rank_nullity(nm):
    n, rows = nm
    m = gf2.BitMatrix(tuple(rows), n)
    k = gf2.kernel_basis(m)
    assert gf2.rank(m) + k.nrows == n
    assert gf2.rank(k) == k.nrows
    assert 1 << k.nrows == len(brute_kernel(rows, n))
    for x in k.rows:
        assert all(gf2.dot(x, r) == 0 for r in rows)


@given(matrices, st.integers(0, 127))
def test_in_span_iff_rank_unchanged(nm, v):
    n, rows = nm
    v &= (1 << n) - 1
    m = gf2.BitMatrix(tuple(rows), n)
    grown = gf2.BitMatrix(tuple(rows) + (v,), n)
    assert gf2.in_span(gf2.BitVector(v, n), m) == (gf2.rank(grown) == gf2.rank(m))


@given(matrices, st.randoms(use_true_random=False))
def test_rank_invariant_under_row_operations(nm, rng):
    n, rows = nm
    r0 = gf2.rank(gf2.BitMatrix(tuple(rows), n))
    rows = list(rows)
    rng.shuffle(rows)
    assert gf2.rank(gf2.BitMatrix(tuple(rows), n)) == r0
    if len(rows) >= 2:
        i, j = rng.sample(range(len(rows)), 2)
        rows[i] ^= rows[j]
        assert gf2.rank(gf2.BitMatrix(tuple(rows), n)) == r0


@given(matrices)
def test_row_reduce_is_reduced(nm):
    n, rows = nm
    red, pivots = gf2.row_reduce(gf2.BitMatrix(tuple(rows), n))
    assert len(pivots) == red.nrows == brute_rank(rows)
    for p, row in zip(pivots, red.rows):
        assert row & -row == 1 << p
        assert sum(r >> p & 1 for r in red.rows) == 1
