"""Minimally dependent sets of nontrivial characters (binary matroid circuits).

A circuit is a tuple of strictly increasing masks.  In any circuit every
member is the XOR of the others, so the largest member is the XOR of the
rest and the rest are independent.  Enumeration walks independent,
increasing prefixes ``P`` and reports ``P + (xor(P),)`` whenever the XOR
exceeds ``max(P)``: each circuit comes out exactly once, in lexicographic
order, without a dedup table.

The span of a prefix is kept as a bitmask over all 2^r group vectors.
Translating that set by a vector ``c`` swaps blocks of bits, one swap per
set bit of ``c``.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

from bredon import gf2
from bredon.characters import COUNTING_CAP, ENUMERATION_CAP, check_rank
from bredon.errors import InvalidInputError

Circuit = tuple[int, ...]

# Above this rank the caller must stream: 5e6 circuits at rank 6.
MATERIALIZE_CAP = 5


def is_minimally_dependent(chars: Iterable[int]) -> bool:
    chars = list(chars)
    if len(set(chars)) != len(chars):
        raise InvalidInputError(f"duplicate characters in {chars}")
    if not chars or any(c <= 0 for c in chars):
        raise InvalidInputError("need a nonempty set of nontrivial characters")
    total = 0
    for c in chars:
        total ^= c
    if total:
        return False
    return len(gf2.EchelonBasis(chars)) == len(chars) - 1


@lru_cache(maxsize=None)
def _even_masks(rank: int) -> tuple[int, ...]:
    # _even_masks(r)[i]: bitmask over 0..2^r-1 selecting indices with bit i clear.
    size = 1 << rank
    return tuple(sum(1 << j for j in range(size) if not j >> i & 1) for i in range(rank))


def _translate(span: int, c: int, even: Sequence[int]) -> int:
    i = 0
    while c:
        if c & 1:
            block = 1 << i
            m = even[i]
            span = ((span & m) << block) | ((span >> block) & m)
        c >>= 1
        i += 1
    return span


def enumerate_circuits(
    rank: int, max_size: int | None = None, smallest: int | None = None
) -> Iterator[Circuit]:
    """Yield every circuit of nonzero vectors in GF(2)^rank once, lexicographically.

    ``smallest`` restricts the walk to circuits whose least member is that
    mask; the partitions are independent, which is what the parallel counter
    uses.
    """
    check_rank(rank, ENUMERATION_CAP)
    limit = rank + 1 if max_size is None else min(max_size, rank + 1)
    if limit < 3:
        return
    size = 1 << rank
    full = (1 << size) - 1
    even = _even_masks(rank)
    firsts = range(1, size) if smallest is None else [smallest]
    for c in firsts:
        if not 0 < c < size:
            raise InvalidInputError(f"{c} is not a nontrivial character of rank {rank}")
        yield from _walk((c,), 1 | (1 << c), c, limit, rank, full, even)


def _walk(prefix, span, s, limit, rank, full, even):
    depth = len(prefix)
    top = prefix[-1]
    emit_self = depth >= 2 and s > top
    free = full & ~span & ~((2 << top) - 1)
    # Children sit at depth + 1 and report circuits of size depth + 2.
    if depth + 2 > limit:
        if emit_self:
            yield prefix + (s,)
        return
    leaf_children = depth + 1 >= rank or depth + 3 > limit
    if leaf_children:
        # A child c yields prefix + (c, s ^ c) iff s ^ c > c, i.e. c lacks the top bit of s.
        free &= even[s.bit_length() - 1]
        while free:
            low = free & -free
            c = low.bit_length() - 1
            free ^= low
            if emit_self and c > s:
                emit_self = False
                yield prefix + (s,)
            yield prefix + (c, s ^ c)
        if emit_self:
            yield prefix + (s,)
        return
    while free:
        low = free & -free
        c = low.bit_length() - 1
        free ^= low
        if emit_self and c > s:
            emit_self = False
            yield prefix + (s,)
        yield from _walk(prefix + (c,), span | _translate(span, c, even), s ^ c, limit, rank, full, even)
    if emit_self:
        yield prefix + (s,)


def circuit_list(rank: int, max_size: int | None = None) -> list[Circuit]:
    if rank > MATERIALIZE_CAP:
        raise InvalidInputError(f"rank {rank} has too many circuits to materialize; stream them")
    return list(enumerate_circuits(rank, max_size))


@lru_cache(maxsize=4096)
def circuits_within(ground: tuple[int, ...], max_size: int | None = None) -> tuple[Circuit, ...]:
    """Circuits whose members all lie in the sorted tuple ``ground``."""
    members = set(ground)
    limit = len(ground) if max_size is None else min(max_size, len(ground))
    out: list[Circuit] = []

    def walk(start: int, prefix: tuple[int, ...], basis: gf2.EchelonBasis, s: int) -> None:
        if len(prefix) >= 2 and s > prefix[-1] and s in members:
            out.append(prefix + (s,))
        if len(prefix) + 2 > limit:
            return
        for i in range(start, len(ground)):
            c = ground[i]
            if basis.reduce(c):
                child = gf2.EchelonBasis()
                child.pivots = dict(basis.pivots)
                child.add(c)
                walk(i + 1, prefix + (c,), child, s ^ c)

    walk(0, (), gf2.EchelonBasis(), 0)
    return tuple(sorted(out))


@dataclass(frozen=True)
class CircuitCount:
    rank: int
    by_size: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.by_size.values())

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "total": self.total,
            "by_size": {str(k): v for k, v in sorted(self.by_size.items())},
        }


def count_circuits_closed_form(rank: int) -> CircuitCount:
    """Count circuits by size from the number of independent k-subsets.

    An independent k-set S, together with xor(S), is a circuit of size k + 1,
    and each such circuit arises from k + 1 choices of S.
    """
    check_rank(rank, COUNTING_CAP)
    q = 1 << rank
    by_size = {}
    for k in range(2, rank + 1):
        ordered = 1
        for i in range(k):
            ordered *= q - (1 << i)
        count, rem = divmod(ordered, factorial(k + 1))
        assert rem == 0, (rank, k)
        by_size[k + 1] = count
    return CircuitCount(rank, by_size)


def _count_partition(args: tuple[int, int]) -> Counter:
    rank, smallest = args
    return Counter(len(c) for c in enumerate_circuits(rank, smallest=smallest))


def count_circuits_streaming(rank: int, workers: int = 1) -> CircuitCount:
    """Count by walking the whole stream; partitions by least member run in parallel."""
    check_rank(rank, ENUMERATION_CAP)
    jobs = [(rank, c) for c in range(1, 1 << rank)]
    total: Counter = Counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_count_partition, jobs):
                total.update(part)
    else:
        for job in jobs:
            total.update(_count_partition(job))
    return CircuitCount(rank, {k: total[k] for k in sorted(total)})
