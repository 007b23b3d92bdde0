from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bredon.characters import parse_character_name
from bredon.circuits import (
    circuit_list,
    circuits_within,
    count_circuits_closed_form,
    count_circuits_streaming,
    enumerate_circuits,
    is_minimally_dependent,
)
from bredon.errors import InvalidInputError, ResourceError

from oracles import brute_circuits

RANK3_TRIPLES = """
p1 p2 p1p2 | p1 p3 p1p3 | p2 p3 p2p3 | p1 p2p3 p1p2p3 |
p2 p1p3 p1p2p3 | p3 p1p2 p1p2p3 | p1p2 p1p3 p2p3
"""
RANK3_QUADRUPLES = """
p1 p2 p3 p1p2p3 | p1 p2 p1p3 p2p3 | p1 p3 p1p2 p2p3 | p2 p3 p1p2 p1p3 |
p1 p1p2 p1p3 p1p2p3 | p2 p1p2 p2p3 p1p2p3 | p3 p1p3 p2p3 p1p2p3
"""


def _parse_fixture(text):
    return {frozenset(parse_character_name(n) for n in group.split()) for group in text.split("|")}


def test_rank3_fixture():
    triples, quads = _parse_fixture(RANK3_TRIPLES), _parse_fixture(RANK3_QUADRUPLES)
    assert len(triples) == len(quads) == 7
    got = {frozenset(c) for c in enumerate_circuits(3)}
    assert got == triples | quads


def test_is_minimally_dependent_examples():
    assert is_minimally_dependent([1, 2, 3])
    assert not is_minimally_dependent([1, 2])
    assert is_minimally_dependent([1, 2, 4, 7])
    assert not is_minimally_dependent([1, 2, 3, 4, 7])
    with pytest.raises(InvalidInputError):
        is_minimally_dependent([1, 1])


def test_small_ranks():
    assert list(enumerate_circuits(1)) == []
    assert list(enumerate_circuits(2)) == [(1, 2, 3)]
    assert list(enumerate_circuits(0)) == []


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_enumeration_matches_brute_force(rank):
    assert circuit_list(rank) == brute_circuits(rank)


@pytest.mark.parametrize("rank,total", [(1, 0), (2, 1), (3, 14), (4, 308), (5, 20336), (7, 4610816280)])
def test_closed_form_totals(rank, total):
    assert count_circuits_closed_form(rank).total == total


def test_closed_form_breakdown_rank4():
    assert count_circuits_closed_form(4).by_size == {3: 35, 4: 105, 5: 168}


@pytest.mark.parametrize("rank", [1, 2, 3, 4, 5])
def test_enumeration_counts_per_size(rank):
    cs = circuit_list(rank)
    assert cs == sorted(set(cs))
    by = Counter(len(c) for c in cs)
    assert dict(by) == count_circuits_closed_form(rank).by_size
    assert all(3 <= len(c) <= rank + 1 for c in cs)


def test_each_member_is_sum_of_others():
    for c in circuit_list(4):
        for x in c:
            s = 0
            for y in c:
                if y != x:
                    s ^= y
            assert s == x
        assert is_minimally_dependent(c)


def test_streaming_partitions_agree():
    assert count_circuits_streaming(4).by_size == count_circuits_closed_form(4).by_size


def test_max_size_filter():
    assert all(len(c) == 3 for c in enumerate_circuits(4, max_size=3))
    assert len(list(enumerate_circuits(4, max_size=4))) == 35 + 105


def test_caps():
    with pytest.raises(ResourceError):
        next(enumerate_circuits(13))
    with pytest.raises(InvalidInputError):
        circuit_list(6)


@given(st.sets(st.integers(1, 15), max_size=8), st.one_of(st.none(), st.integers(3, 5)))
def test_circuits_within_matches_filter(ground, max_size):
    ground = tuple(sorted(ground))
    want = [c for c in circuit_list(4, max_size) if set(c) <= set(ground)]
    assert list(circuits_within(ground, max_size)) == want
