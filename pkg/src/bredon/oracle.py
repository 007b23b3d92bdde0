"""Graded dimensions of H(A, *) from the short exact sequences alone.

For W = V + l with l nontrivial, K = ker(l) and k the multiplicity of l in V,

    0 -> H_m(A, V) --a_l--> H_m(A, V + l) --res--> H_{m-k-1}(K, V_K) -> 0

is exact, so dim H_m(A, W) = dim H_m(A, V) + dim H_{m-k-1}(K, V_K).  With
H_*(A, 0) = F2 in degree 0 this pins down every dimension.  Nothing here
touches the polynomial presentation.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable

from bredon.characters import check_character, check_rank, kernel_quotient
from bredon.ring import Rep, RepDegree, canonical_rep, iter_degrees

Pivot = Callable[[Rep], int]


def _split(rank: int, m: int, rep: Rep, lam: int) -> tuple[tuple[int, int, Rep], tuple[int, int, Rep]]:
    """The two smaller keys the exact sequence for pivot ``lam`` reduces (rank, m, rep) to."""
    q = kernel_quotient(lam, rank)
    v = []
    k = 0
    image: dict[int, int] = {}
    for mask, mult in rep:
        if mask == lam:
            k = mult - 1
            if k:
                v.append((mask, k))
            continue
        v.append((mask, mult))
        key = q(mask)
        image[key] = image.get(key, 0) + mult
    return (rank, m, tuple(v)), (rank - 1, m - k - 1, canonical_rep(image))


@lru_cache(maxsize=None)
def _dim(rank: int, m: int, rep: Rep) -> int:
    if m < 0:
        return 0
    if not rep:
        return 1 if m == 0 else 0
    if m > sum(mult for _, mult in rep):
        return 0
    left, right = _split(rank, m, rep, rep[0][0])
    return _dim(*left) + _dim(*right)


def _dim_with(rank: int, m: int, rep: Rep, choose: Pivot, memo: dict) -> int:
    if m < 0:
        return 0
    if not rep:
        return 1 if m == 0 else 0
    key = (rank, m, rep)
    if key not in memo:
        lam = choose(rep)
        if all(mask != lam for mask, _ in rep):
            raise ValueError(f"pivot {lam} is not in the support of {rep}")
        left, right = _split(rank, m, rep, lam)
        memo[key] = _dim_with(*left, choose, memo) + _dim_with(*right, choose, memo)
    return memo[key]


def oracle_dimension(rank: int, d: RepDegree, pivot: Pivot | None = None) -> int:
    """dim H_m(A, W) by the recursion; ``pivot`` overrides the smallest-mask choice."""
    check_rank(rank)
    for mask in d.support:
        check_character(mask, rank)
    if pivot is None:
        return _dim(rank, d.m, d.rep)
    return _dim_with(rank, d.m, d.rep, pivot, {})


def clear_memo() -> None:
    _dim.cache_clear()


def memo_size() -> int:
    return _dim.cache_info().currsize


class OracleCache:
    """On-disk JSON-lines store of oracle values.

    One record per line: ``{"r":2,"m":2,"W":[[1,1],[2,1],[3,1]],"dim":2}``.
    Loaded records are trusted unless ``verify`` is set, in which case each one
    is recomputed and disagreements are collected in ``mismatches``.
    """

    def __init__(self, path: str | Path, verify: bool = False):
        self.path = Path(path)
        self.verify = verify
        self.entries: dict[tuple[int, int, Rep], int] = {}
        self.mismatches: list[dict] = []
        self._lock = threading.Lock()
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        with self.path.open() as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                key = (rec["r"], rec["m"], canonical_rep({mask: mult for mask, mult in rec["W"]}))
                if self.verify:
                    actual = _dim(*key)
                    if actual != rec["dim"]:
                        self.mismatches.append({**rec, "recomputed": actual})
                    self.entries[key] = actual
                else:
                    self.entries[key] = rec["dim"]

    def dimension(self, rank: int, d: RepDegree) -> int:
        key = (rank, d.m, d.rep)
        with self._lock:
            if key in self.entries:
                return self.entries[key]
        value = oracle_dimension(rank, d)
        with self._lock:
            if key not in self.entries:
                self.entries[key] = value
                with self.path.open("a") as fh:
                    fh.write(json.dumps(record(rank, d, value), separators=(",", ":")) + "\n")
        return value

    def __len__(self) -> int:
        return len(self.entries)


def record(rank: int, d: RepDegree, value: int) -> dict:
    return {"r": rank, "m": d.m, "W": [[mask, mult] for mask, mult in d.rep], "dim": value}


@dataclass(frozen=True)
class TableRow:
    rank: int
    degree: RepDegree
    monomials: int
    relation_rank: int
    dim_linear: int
    dim_oracle: int

    @property
    def match(self) -> bool:
        return self.dim_linear == self.dim_oracle

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            **self.degree.to_json(),
            "monomials": self.monomials,
            "relation_rank": self.relation_rank,
            "dim_linear": self.dim_linear,
            "dim_oracle": self.dim_oracle,
            "match": self.match,
        }


def compare_degree(rank: int, d: RepDegree, cache: OracleCache | None = None, max_total=None) -> TableRow:
    from bredon.presentation import MAX_TOTAL, dimension_linear

    lin = dimension_linear(rank, d, MAX_TOTAL if max_total is None else max_total)
    orc = cache.dimension(rank, d) if cache is not None else oracle_dimension(rank, d)
    return TableRow(rank, d, lin.num_monomials, lin.relation_rank, lin.dimension, orc)


def table_degrees(rank: int, max_total: int, max_m: int) -> list[RepDegree]:
    return [d for d in iter_degrees(rank, max_total) if d.m <= max_m]


def dimension_table(
    rank: int, max_total: int, max_m: int, cache: OracleCache | None = None, degrees: Iterable[RepDegree] | None = None
) -> list[TableRow]:
    """Both dimensions for every (m, W) with |W| <= max_total and m <= min(max_m, |W|)."""
    check_rank(rank)
    if degrees is None:
        degrees = table_degrees(rank, max_total, max_m)
    return [compare_degree(rank, d, cache) for d in degrees]
