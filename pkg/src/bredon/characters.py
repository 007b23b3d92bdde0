"""Characters and subgroups of A = C^r, via GF(2) duality.

A character is its mask: bit ``i`` set means the character involves the
projection p_{i+1}, so at rank 2 the masks 1, 2, 3 are p1, p2 and p1*p2.
Group elements are masks of the same width, and a character is trivial on an
element exactly when the two masks have even overlap.  Only nontrivial
characters are materialized; the trivial one shows up as the zero mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

from bredon import gf2
from bredon.errors import InvalidInputError, ResourceError

ENUMERATION_CAP = 12
COUNTING_CAP = 16


def check_rank(rank: int, cap: int = ENUMERATION_CAP) -> int:
    if not isinstance(rank, int) or rank < 0:
        raise InvalidInputError(f"rank must be a nonnegative integer, got {rank!r}")
    if rank > cap:
        raise ResourceError(f"rank {rank} exceeds the cap of {cap}")
    return rank


def check_character(mask: int, rank: int) -> int:
    if not 0 < mask < 1 << rank:
        raise InvalidInputError(f"{mask} is not a nontrivial character of rank {rank}")
    return mask


def all_characters(rank: int) -> list[int]:
    """The 2^r - 1 nontrivial characters, in increasing mask order."""
    check_rank(rank)
    return list(range(1, 1 << rank))


def pairing(char: int, element: int) -> int:
    """Value of a character on a group element, as 0 (for +1) or 1 (for -1)."""
    return gf2.dot(char, element)


def character_name(mask: int) -> str:
    """``p1p3`` style name, used in fixtures and docs."""
    if mask == 0:
        return "1"
    return "".join(f"p{i + 1}" for i in range(mask.bit_length()) if mask >> i & 1)


def parse_character_name(name: str) -> int:
    """Inverse of :func:`character_name` (``"p1p2"`` -> 3)."""
    if name == "1":
        return 0
    parts = name.split("p")
    if parts[0] or len(parts) < 2:
        raise InvalidInputError(f"bad character name {name!r}")
    mask = 0
    for part in parts[1:]:
        if not part.isdigit() or int(part) < 1:
            raise InvalidInputError(f"bad character name {name!r}")
        mask ^= 1 << (int(part) - 1)
    return mask


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of C^r, stored by its reduced row-echelon generators.

    The echelon form is canonical, so two Subgroup values are equal exactly
    when they are the same subgroup.
    """

    rank: int
    generators: tuple[int, ...]

    @classmethod
    def generated_by(cls, rank: int, elements: Iterable[int]) -> "Subgroup":
        check_rank(rank, COUNTING_CAP)
        elements = list(elements)
        for e in elements:
            if not 0 <= e < 1 << rank:
                raise InvalidInputError(f"{e} is not an element of C^{rank}")
        reduced, _ = gf2.row_reduce(gf2.BitMatrix(tuple(elements), rank))
        return cls(rank, reduced.rows)

    @classmethod
    def whole(cls, rank: int) -> "Subgroup":
        return cls.generated_by(rank, [1 << i for i in range(rank)])

    @classmethod
    def trivial(cls, rank: int) -> "Subgroup":
        return cls(rank, ())

    @classmethod
    def kernel_of(cls, char: int, rank: int) -> "Subgroup":
        check_character(char, rank)
        return cls.generated_by(rank, gf2.kernel_basis(gf2.BitMatrix((char,), rank)).rows)

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def order(self) -> int:
        return 1 << self.dim

    def elements(self) -> list[int]:
        out = [0]
        for g in self.generators:
            out += [x ^ g for x in out]
        return sorted(out)

    def contains(self, element: int) -> bool:
        return element in gf2.EchelonBasis(self.generators)

    def index2_character(self) -> int:
        """The unique nontrivial character vanishing on an index-2 subgroup."""
        if self.dim != self.rank - 1:
            raise InvalidInputError("subgroup does not have index 2")
        (char,) = [c for c in range(1, 1 << self.rank) if restricts_trivially(c, self)]
        return char


def restricts_trivially(char: int, subgroup: Subgroup) -> bool:
    return all(pairing(char, g) == 0 for g in subgroup.generators)


def all_subgroups(rank: int) -> list[Subgroup]:
    """Every subgroup of C^r, ordered by dimension and then generators."""
    check_rank(rank, 6)
    seen = {Subgroup.trivial(rank)}
    frontier = list(seen)
    while frontier:
        grown = []
        for sub in frontier:
            for e in range(1, 1 << rank):
                if not sub.contains(e):
                    bigger = Subgroup.generated_by(rank, sub.generators + (e,))
                    if bigger not in seen:
                        seen.add(bigger)
                        grown.append(bigger)
        frontier = grown
    return sorted(seen, key=lambda s: (s.dim, s.generators))


@dataclass(frozen=True)
class KernelQuotient:
    """Restriction of A-characters to K = ker(char), in canonical coordinates.

    Characters of K are Hom(A, C) / <char>.  The pivot is the lowest set bit
    ``p`` of ``char``: add ``char`` to a mask whose bit ``p`` is set, then
    delete bit ``p``.  Masks ``mu`` and ``mu ^ char`` land on the same
    (r-1)-bit K-character; 0 and ``char`` itself become trivial on K, which
    is reported as ``None``.
    """

    char: int
    rank: int

    def __post_init__(self):
        check_character(self.char, self.rank)

    @property
    def pivot(self) -> int:
        return (self.char & -self.char).bit_length() - 1

    def __call__(self, mu: int) -> int | None:
        p = self.pivot
        if mu >> p & 1:
            mu ^= self.char
        low = mu & ((1 << p) - 1)
        image = ((mu >> (p + 1)) << p) | low
        return image or None


def kernel_quotient(char: int, rank: int) -> KernelQuotient:
    return KernelQuotient(char, rank)


def apply_linear(columns: tuple[int, ...], mask: int) -> int:
    """Image of ``mask`` under the GF(2)-linear map whose ``i``th column is ``columns[i]``."""
    out = 0
    for i, col in enumerate(columns):
        if mask >> i & 1:
            out ^= col
    return out


def is_invertible(columns: tuple[int, ...]) -> bool:
    return gf2.rank(gf2.BitMatrix(columns, len(columns))) == len(columns)


def iter_invertible(rank: int) -> Iterator[tuple[int, ...]]:
    """All of GL(r, 2) as column tuples; only sensible for r <= 3."""
    for cols in product(range(1, 1 << rank), repeat=rank):
        if is_invertible(cols):
            yield cols
