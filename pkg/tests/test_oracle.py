import json
import random

from hypothesis import given
from hypothesis import strategies as st

from bredon.characters import apply_linear, iter_invertible
from bredon.oracle import (
    OracleCache,
    _split,
    clear_memo,
    dimension_table,
    memo_size,
    oracle_dimension,
)
from bredon.ring import RepDegree, iter_degrees

W3 = RepDegree.of(2, [1, 2, 3])


def test_base_cases():
    for r in (0, 1, 3):
        assert oracle_dimension(r, RepDegree(0)) == 1
        assert oracle_dimension(r, RepDegree(1)) == 0


def test_rank1_is_polynomial_ring():
    for n in range(8):
        for m in range(-1, n + 3):
            assert oracle_dimension(1, RepDegree.of(m, {1: n})) == (1 if 0 <= m <= n else 0)


def test_rank2_hand_unrolled():
    left, right = _split(2, 2, W3.rep, 1)
    # pivot on p1: H_2(A, p2 + mu) plus H_1(K, 2 sigma)
    assert left == (2, 2, ((2, 1), (3, 1)))
    assert right == (1, 1, ((1, 2),))
    assert oracle_dimension(2, RepDegree(*left[1:])) == 1
    assert oracle_dimension(1, RepDegree(*right[1:])) == 1
    assert oracle_dimension(2, W3) == 2


def test_tables():
    rows = dimension_table(1, 3, 3)
    assert rows and all(r.dim_oracle == 1 and r.match for r in rows)
    rows = dimension_table(2, 3, 3)
    got = {(r.degree.m, r.degree.rep): r.dim_oracle for r in rows}
    for m, want in ((1, 3), (2, 2), (3, 1)):
        assert got[(m, W3.rep)] == want
    assert dimension_table(2, 3, -1) == []


def test_table_rows_respect_bounds():
    rows = dimension_table(2, 4, 2)
    assert all(r.degree.m <= min(2, r.degree.total) for r in rows)
    assert rows[0].to_json()["match"] is True


def test_memo():
    clear_memo()
    oracle_dimension(3, RepDegree.of(2, [1, 2, 4, 7]))
    assert memo_size() > 0


def test_cache_roundtrip(tmp_path):
    path = tmp_path / "cache.jsonl"
    cache = OracleCache(path)
    assert cache.dimension(2, W3) == 2
    assert cache.dimension(2, W3) == 2
    lines = path.read_text().splitlines()
    assert lines == ['{"r":2,"m":2,"W":[[1,1],[2,1],[3,1]],"dim":2}']
    assert OracleCache(path).entries[(2, 2, W3.rep)] == 2


def test_cache_verify_detects_tampering(tmp_path):
    path = tmp_path / "cache.jsonl"
    path.write_text(json.dumps({"r": 2, "m": 2, "W": [[1, 1], [2, 1], [3, 1]], "dim": 5}) + "\n")
    assert OracleCache(path).dimension(2, W3) == 5
    checked = OracleCache(path, verify=True)
    assert checked.dimension(2, W3) == 2
    assert checked.mismatches and checked.mismatches[0]["recomputed"] == 2


small_degree = st.integers(1, 3).flatmap(
    lambda r: st.tuples(
        st.just(r),
        st.lists(st.integers(1, (1 << r) - 1), min_size=1, max_size=6),
        st.integers(0, 6),
    )
)


@given(small_degree, st.randoms(use_true_random=False))
def test_pivot_independence(args, rng):
    r, chars, m = args
    d = RepDegree.of(m, chars)
    pivot = lambda rep: rng.choice(rep)[0]
    assert oracle_dimension(r, d, pivot) == oracle_dimension(r, d)


@given(small_degree, st.integers(0, 167))
def test_automorphism_invariance(args, k):
    r, chars, m = args
    gl = list(iter_invertible(r))
    cols = gl[k % len(gl)]
    moved = [apply_linear(cols, c) for c in chars]
    assert oracle_dimension(r, RepDegree.of(m, moved)) == oracle_dimension(r, RepDegree.of(m, chars))


def test_agreement_sweep_rank2():
    rng = random.Random(7)
    degrees = list(iter_degrees(2, 5))
    for d in rng.sample(degrees, 100):
        row = dimension_table(2, 0, 0, degrees=[d])[0]
        assert row.match
