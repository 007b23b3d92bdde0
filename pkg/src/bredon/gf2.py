"""Bit-packed linear algebra over GF(2).

Vectors are Python ints: bit ``i`` is entry ``i``.  Python's big ints store
their bits in machine words, so XOR of two rows is a single word-parallel
C loop; the routines here only ever XOR whole rows.

Elimination always pivots on the lowest set bit of a row.  A row whose lowest
bit is ``p`` only touches columns ``>= p`` when it is added to another row,
which keeps reduction loops short and makes the output deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from bredon.errors import DimensionMismatchError, InvalidInputError, ResourceError

# rows * ncols; ~1e5 rows by ~1e4 columns.
MAX_CELLS = 10**9


@dataclass(frozen=True)
class BitVector:
    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise InvalidInputError(f"bits {self.bits:b} do not fit in length {self.length}")

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        """Parse ``"110"``: character ``i`` is entry ``i``."""
        if set(text) - {"0", "1"}:
            raise InvalidInputError(f"not a bit string: {text!r}")
        return cls(sum(1 << i for i, ch in enumerate(text) if ch == "1"), len(text))

    def __str__(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.length))

    def __getitem__(self, i: int) -> int:
        return self.bits >> i & 1


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        bound = 1 << self.ncols
        for row in self.rows:
            if row < 0 or row >= bound:
                raise DimensionMismatchError(f"row {row:b} is wider than {self.ncols} columns")

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: int | None = None) -> "BitMatrix":
        vecs = [BitVector.from_string(r) for r in rows]
        if ncols is None:
            ncols = vecs[0].length if vecs else 0
        if any(v.length != ncols for v in vecs):
            raise DimensionMismatchError("rows of unequal length")
        return cls(tuple(v.bits for v in vecs), ncols)

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector], ncols: int) -> "BitMatrix":
        if any(v.length != ncols for v in vectors):
            raise DimensionMismatchError("rows of unequal length")
        return cls(tuple(v.bits for v in vectors), ncols)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[BitVector]:
        return [BitVector(r, self.ncols) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(str(v) for v in self.vectors())


def check_size(nrows: int, ncols: int) -> None:
    if nrows * ncols > MAX_CELLS:
        raise ResourceError(f"{nrows}x{ncols} matrix exceeds the {MAX_CELLS}-cell cap")


class EchelonBasis:
    """Incrementally grown row-echelon basis keyed by lowest set bit.

    This is the mutable workhorse behind the pure functions below; callers
    that build a span row by row (relation spans, ideal membership) use it
    directly to avoid re-eliminating.
    """

    __slots__ = ("pivots",)

    def __init__(self, rows: Iterable[int] = ()):
        self.pivots: dict[int, int] = {}
        for row in rows:
            self.add(row)

    def reduce(self, v: int) -> int:
        pivots = self.pivots
        while v:
            low = v & -v
            row = pivots.get(low)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        v = self.reduce(v)
        if not v:
            return False
        self.pivots[v & -v] = v
        return True

    def __contains__(self, v: int) -> bool:
        return not self.reduce(v)

    def __len__(self) -> int:
        return len(self.pivots)

    def pivot_columns(self) -> list[int]:
        return sorted(low.bit_length() - 1 for low in self.pivots)

    def reduced_rows(self) -> list[int]:
        """Fully reduced echelon rows, ordered by pivot column."""
        lows = sorted(self.pivots)
        rows = {low: self.pivots[low] for low in lows}
        # Higher pivots first, so each row is cleared against already-reduced rows.
        for i in range(len(lows) - 1, -1, -1):
            row = rows[lows[i]]
            for low in lows[i + 1:]:
                if row & low:
                    row ^= rows[low]
            rows[lows[i]] = row
        return [rows[low] for low in lows]

    def normal_form(self, v: int) -> int:
        """Canonical representative of ``v`` modulo the span: no pivot bits set."""
        pivots = self.pivots
        out = 0
        while v:
            low = v & -v
            row = pivots.get(low)
            if row is None:
                out |= low
                v ^= low
            else:
                v ^= row
        return out


def row_reduce(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form and its pivot columns."""
    check_size(m.nrows, m.ncols)
    basis = EchelonBasis(m.rows)
    return BitMatrix(tuple(basis.reduced_rows()), m.ncols), basis.pivot_columns()


def rank(m: BitMatrix) -> int:
    check_size(m.nrows, m.ncols)
    return len(EchelonBasis(m.rows))


def in_span(v: BitVector, m: BitMatrix) -> bool:
    if v.length != m.ncols:
        raise DimensionMismatchError(f"vector of length {v.length} against {m.ncols} columns")
    check_size(m.nrows, m.ncols)
    return v.bits in EchelonBasis(m.rows)


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of ``{x : <row, x> = 0 for every row}``, one vector per free column.

    Free columns are taken in increasing order, and the vector for free
    column ``f`` has bit ``f`` set plus the pivot bits it forces.
    """
    reduced, pivots = row_reduce(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        x = 1 << f
        for p, row in zip(pivots, reduced.rows):
            if row >> f & 1:
                x |= 1 << p
        basis.append(x)
    return BitMatrix(tuple(basis), m.ncols)


def dot(u: int, v: int) -> int:
    return (u & v).bit_count() & 1
