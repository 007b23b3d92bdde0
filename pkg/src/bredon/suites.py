"""Named verification suites: each yields one Check per elementary assertion.

The CLI drives these with a time budget; the test-suite calls the underlying
library functions directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from bredon.characters import Subgroup, all_subgroups
from bredon.circuits import circuit_list
from bredon.localization import (
    expected_trivial_b_dimension,
    gfp_stabilization_check,
    trivial_b_dimension,
    verify_local_relations,
)
from bredon.oracle import compare_degree
from bredon.presentation import (
    admissible_pairs,
    bockstein_preserves_ideal,
    domain_spot_check,
    exact_sequence_holds,
    proof_identities,
    restriction_surjectivity_check,
    verify_minimality,
)
from bredon.ring import (
    RepDegree,
    bockstein,
    iter_degrees,
    iter_reps,
    product_one_sets,
    random_degree,
    random_homogeneous,
    relation_polynomial,
    t_product,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


def presentation_suite(rank: int, seed: int, max_total: int = 6) -> Iterator[Check]:
    for d in iter_degrees(rank, max_total):
        row = compare_degree(rank, d)
        yield Check(f"dim{d}", row.match, row.to_json())


def minimality_suite(rank: int, seed: int, max_total: int = 0) -> Iterator[Check]:
    for res in verify_minimality(rank).results:
        yield Check(
            f"minimal{list(res.circuit)}",
            res.passed,
            {"kernel_dim": res.kernel_dim, "span_rank": res.span_rank, "rank_without": res.rank_without},
        )


def identities_suite(rank: int, seed: int, max_total: int = 0) -> Iterator[Check]:
    for circuit in circuit_list(rank):
        for a, b in admissible_pairs(circuit):
            first, second = proof_identities(circuit, a, b)
            yield Check(f"identities{list(circuit)}/{a},{b}", first and second, {"t": first, "a": second})


def localization_suite(rank: int, seed: int, max_total: int = 0) -> Iterator[Check]:
    for sub in all_subgroups(rank):
        rep = verify_local_relations(rank, sub, identities=False)
        yield Check(f"local B={list(sub.generators)}", rep.passed, rep.to_json())
    for m in range(4):
        for n in (m + 1, m + 2):
            rep = gfp_stabilization_check(rank, m, n)
            yield Check(f"gfp m={m} N={n}", rep.verdict == "pass", rep.to_json())
    for d in range(5):
        got = trivial_b_dimension(rank, d)
        want = expected_trivial_b_dimension(rank, d)
        yield Check(f"B=1 d={d}", got == want, {"dim": got, "expected": want})


def bockstein_suite(rank: int, seed: int, max_total: int = 5) -> Iterator[Check]:
    rng = random.Random(seed)
    for i in range(1000):
        f = random_homogeneous(rank, random_degree(rank, rng, 3), rng)
        g = random_homogeneous(rank, random_degree(rank, rng, 3), rng)
        ok = bockstein(f * g) == bockstein(f) * g + f * bockstein(g)
        yield Check(f"leibniz#{i}", ok, {"f": str(f), "g": str(g)})
    for chars in product_one_sets(rank, 5):
        yield Check(f"beta(t{list(chars)})", bockstein(t_product(chars)) == relation_polynomial(chars))
    for d in iter_degrees(rank, max_total):
        yield Check(f"beta ideal {d}", bockstein_preserves_ideal(rank, d))


def restriction_suite(rank: int, seed: int, max_total: int = 4) -> Iterator[Check]:
    for lam in range(1, 1 << rank):
        sub = Subgroup.kernel_of(lam, rank)
        for d in iter_degrees(rank, max_total):
            rep = restriction_surjectivity_check(rank, sub, d)
            yield Check(f"res_{lam}{d}", rep.surjective, rep.to_json())
    for rep in iter_reps(rank, max_total):
        n = sum(mult for _, mult in rep)
        for lam in range(1, 1 << rank):
            for m in range(n + 2):
                middle, left, right = exact_sequence_holds(rank, dict(rep), lam, m)
                yield Check(
                    f"exact {list(rep)}+{lam} m={m}",
                    middle == left + right,
                    {"middle": middle, "left": left, "right": right},
                )


def domain_suite(rank: int, seed: int, max_total: int = 4) -> Iterator[Check]:
    rep = domain_spot_check(rank, max_total, 200, seed)
    yield Check("domain", rep.passed, rep.to_json())


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "presentation": presentation_suite,
    "minimality": minimality_suite,
    "identities": identities_suite,
    "localization": localization_suite,
    "bockstein": bockstein_suite,
    "restriction": restriction_suite,
    "domain": domain_suite,
}
