"""Integer-graded localizations H(A|B).

Invert a_l for the characters l nontrivial on B and t_l for those trivial on
B.  The degree-0 fractions x_l = t_l / a_l (degree +1) and e_l = a_l / t_l
(degree -1) generate, subject to one relation per triple {a, b, c} with
a + b + c = 0, of family xxx, xxe or eee according to how many members are
trivial on B.

Dimensions are computed only at the two ends.  For B = A the ring is the
quadric algebra in the x's; for B = 1 it is linear relations in the e's.
Mixed B is checked through relation validity and redundancy identities only.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

from bredon import gf2
from bredon.characters import Subgroup, check_rank, restricts_trivially
from bredon.circuits import circuit_list
from bredon.errors import InvalidInputError, ResourceError
from bredon.oracle import oracle_dimension
from bredon.presentation import admissible_pairs, dimension_linear, is_in_ideal, proof_identities
from bredon.ring import ATPolynomial, Monomial, RepDegree

X, E = "x", "e"

# Degree-d monomial count above which gfp/trivial-B stop doing dense elimination.
DENSE_CAP = 5_000

LocalMonomial = tuple[tuple[str, int, int], ...]


class LocalPolynomial:
    """GF(2) polynomial in x_l and e_l; a term is sorted ``(kind, mask, exp)`` triples."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc: set[LocalMonomial] = set()
        for term in terms:
            acc ^= {_canon(term)}
        self.terms = frozenset(acc)

    @classmethod
    def var(cls, kind: str, mask: int) -> "LocalPolynomial":
        return cls([((kind, mask, 1),)])

    def __add__(self, other: "LocalPolynomial") -> "LocalPolynomial":
        out = LocalPolynomial()
        out.terms = self.terms ^ other.terms
        return out

    def __mul__(self, other: "LocalPolynomial") -> "LocalPolynomial":
        acc: set[LocalMonomial] = set()
        for x in self.terms:
            for y in other.terms:
                acc ^= {_canon(x + y)}
        out = LocalPolynomial()
        out.terms = frozenset(acc)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def degrees(self) -> set[int]:
        return {sum(e if kind == X else -e for kind, _, e in term) for term in self.terms}

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise InvalidInputError("zero or inhomogeneous local polynomial")
        return degs.pop()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for term in sorted(self.terms):
            if not term:
                parts.append("1")
                continue
            parts.append("".join(f"{k}[{m}]" + (f"^{e}" if e > 1 else "") for k, m, e in term))
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"LocalPolynomial({str(self)!r})"


def _canon(term) -> LocalMonomial:
    acc: Counter = Counter()
    for kind, mask, e in term:
        acc[(kind, mask)] += e
    return tuple((kind, mask, e) for (kind, mask), e in sorted(acc.items()) if e)


@dataclass(frozen=True)
class LocalRelation:
    family: str
    triple: tuple[int, int, int]
    polynomial: LocalPolynomial

    def to_json(self) -> dict:
        return {"family": self.family, "triple": list(self.triple)}


@dataclass(frozen=True)
class LocalPresentation:
    rank: int
    subgroup: Subgroup
    x_gens: list[int]
    e_gens: list[int]
    relations: list[LocalRelation] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "B": list(self.subgroup.generators),
            "x": self.x_gens,
            "e": self.e_gens,
            "relations": [r.to_json() for r in self.relations],
        }


def _x(mask: int) -> LocalPolynomial:
    return LocalPolynomial.var(X, mask)


def _e(mask: int) -> LocalPolynomial:
    return LocalPolynomial.var(E, mask)


def _triples(rank: int):
    for a in range(1, 1 << rank):
        for b in range(a + 1, 1 << rank):
            c = a ^ b
            if c > b:
                yield a, b, c


def triple_relation(a: int, b: int, c: int, trivial: set[int]) -> LocalRelation:
    """The relation for one triple, given which characters are trivial on B."""
    on = [m for m in (a, b, c) if m not in trivial]
    off = [m for m in (a, b, c) if m in trivial]
    if len(off) == 0:
        p, q, r = on
        poly = _x(p) * _x(q) + _x(p) * _x(r) + _x(q) * _x(r)
        return LocalRelation("xxx", (p, q, r), poly)
    if len(off) == 1:
        p, q = on
        (g,) = off
        return LocalRelation("xxe", (p, q, g), _x(p) + _x(q) + _x(p) * _x(q) * _e(g))
    if len(off) == 3:
        p, q, r = off
        return LocalRelation("eee", (p, q, r), _e(p) + _e(q) + _e(r))
    raise InvalidInputError(f"triple {a, b, c} has exactly two members trivial on B")


def build_local_presentation(rank: int, subgroup: Subgroup) -> LocalPresentation:
    check_rank(rank)
    if subgroup.rank != rank:
        raise InvalidInputError("subgroup lives in a group of different rank")
    chars = range(1, 1 << rank)
    trivial = {c for c in chars if restricts_trivially(c, subgroup)}
    relations = [triple_relation(a, b, c, trivial) for a, b, c in _triples(rank)]
    return LocalPresentation(
        rank,
        subgroup,
        x_gens=[c for c in chars if c not in trivial],
        e_gens=sorted(trivial),
        relations=relations,
    )


def clear_denominators(p: LocalPolynomial, rank: int, subgroup: Subgroup) -> tuple[ATPolynomial, RepDegree]:
    """Multiply by the least a- and t-powers that turn every term into an a/t-monomial.

    x_l^k becomes t_l^k a_l^(c-k) and e_l^k becomes a_l^k t_l^(c-k), where c is
    the largest exponent of that variable anywhere in p.
    """
    p.degree  # raises on inhomogeneous input
    trivial = {c for c in range(1, 1 << rank) if restricts_trivially(c, subgroup)}
    top: dict[tuple[str, int], int] = {}
    for term in p.terms:
        for kind, mask, e in term:
            if (kind == E) != (mask in trivial):
                raise InvalidInputError(f"{kind}[{mask}] is not a generator for this subgroup")
            top[(kind, mask)] = max(top.get((kind, mask), 0), e)
    monos = []
    for term in p.terms:
        have = {(kind, mask): e for kind, mask, e in term}
        exps: dict[int, list[int]] = {}
        for (kind, mask), c in top.items():
            k = have.get((kind, mask), 0)
            slot = exps.setdefault(mask, [0, 0])
            if kind == X:
                slot[0] += c - k
                slot[1] += k
            else:
                slot[0] += k
                slot[1] += c - k
        monos.append(Monomial.from_dict({mask: (a, t) for mask, (a, t) in exps.items()}))
    f = ATPolynomial(monos)
    return f, f.degree


@dataclass(frozen=True)
class LocalCheckReport:
    rank: int
    subgroup: Subgroup
    relations: int
    relations_in_ideal: int
    identities_checked: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "B": list(self.subgroup.generators),
            "relations": self.relations,
            "relations_in_ideal": self.relations_in_ideal,
            "identities_checked": self.identities_checked,
            "failures": self.failures,
        }


def verify_local_relations(rank: int, subgroup: Subgroup, identities: bool = True) -> LocalCheckReport:
    pres = build_local_presentation(rank, subgroup)
    failures = []
    good = 0
    for rel in pres.relations:
        f, _ = clear_denominators(rel.polynomial, rank, subgroup)
        if is_in_ideal(f, rank, None):
            good += 1
        else:
            failures.append(f"{rel.family}{rel.triple} clears to {f}, outside I(A)")
    expected = (2**rank - 1) * (2**rank - 2) // 6
    if len(pres.relations) != expected:
        failures.append(f"{len(pres.relations)} relations, expected {expected}")
    checked = 0
    if identities:
        for circuit in circuit_list(rank):
            for a, b in admissible_pairs(circuit):
                checked += 1
                if not all(proof_identities(circuit, a, b)):
                    failures.append(f"identity fails for {circuit}, {a}, {b}")
    return LocalCheckReport(rank, subgroup, len(pres.relations), good, checked, failures)


# ------------------------------------------------------------ B = A: quadrics


def gfp_dimension(rank: int, degree: int) -> int:
    """Degree-d piece of F2[x_l] modulo the quadrics x_a x_b + x_a x_c + x_b x_c."""
    check_rank(rank)
    if degree < 0:
        return 0
    chars = list(range(1, 1 << rank))
    if comb(len(chars) + degree - 1, degree) > DENSE_CAP:
        raise ResourceError(f"degree {degree} at rank {rank} is too large for dense elimination")
    basis = list(combinations_with_replacement(chars, degree))
    index = {m: i for i, m in enumerate(basis)}
    span = gf2.EchelonBasis()
    if degree >= 2:
        cofactors = list(combinations_with_replacement(chars, degree - 2))
        for a, b, c in _triples(rank):
            for cof in cofactors:
                row = 0
                for pair in ((a, b), (a, c), (b, c)):
                    row ^= 1 << index[tuple(sorted(cof + pair))]
                span.add(row)
    return len(basis) - len(span)


@dataclass(frozen=True)
class StabilizationReport:
    rank: int
    m: int
    n: int
    dim_n: int
    dim_next: int
    oracle_n: int
    oracle_next: int
    gfp: int

    @property
    def stable(self) -> bool:
        return self.dim_n == self.dim_next

    @property
    def matches(self) -> bool:
        return self.stable and self.dim_n == self.gfp and self.oracle_n == self.dim_n and self.oracle_next == self.dim_next

    @property
    def verdict(self) -> str:
        if not self.stable:
            return "inconclusive"
        return "pass" if self.matches else "fail"

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "m": self.m,
            "N": self.n,
            "dim_N": self.dim_n,
            "dim_N+1": self.dim_next,
            "oracle_N": self.oracle_n,
            "oracle_N+1": self.oracle_next,
            "gfp": self.gfp,
            "verdict": self.verdict,
        }


def gfp_stabilization_check(rank: int, m: int, n: int | None = None) -> StabilizationReport:
    """Compare dim H_m(A, N rho) and dim H_m(A, (N+1) rho) with the quadric ring in degree m."""
    check_rank(rank)
    if n is None:
        n = m + 1
    chars = range(1, 1 << rank)
    d_n = RepDegree.of(m, {c: n for c in chars})
    d_next = RepDegree.of(m, {c: n + 1 for c in chars})
    return StabilizationReport(
        rank,
        m,
        n,
        dimension_linear(rank, d_n, None).dimension,
        dimension_linear(rank, d_next, None).dimension,
        oracle_dimension(rank, d_n),
        oracle_dimension(rank, d_next),
        gfp_dimension(rank, m),
    )


# ------------------------------------------------------------ B = 1: Euler classes


def _eee_span(rank: int) -> gf2.EchelonBasis:
    # Linear forms e_a + e_b + e_c; variable e_l is column l - 1.
    return gf2.EchelonBasis((1 << (a - 1)) | (1 << (b - 1)) | (1 << (c - 1)) for a, b, c in _triples(rank))


def trivial_b_dimension(rank: int, d: int, method: str = "auto") -> int:
    """Degree -d piece of F2[e_l] modulo the linear relations e_a + e_b + e_c.

    ``dense`` eliminates (linear form) * (degree d-1 monomial) rows against the
    degree-d monomial basis.  ``normal-form`` uses that the row-reduced linear
    forms are a Groebner basis whose leading terms are the pivot variables, so
    the standard monomials are those in the free variables.  ``auto`` picks
    dense while the basis stays under DENSE_CAP.
    """
    check_rank(rank)
    if d < 0:
        raise InvalidInputError("degree -d needs d >= 0")
    n = (1 << rank) - 1
    if method == "auto":
        method = "dense" if comb(n + d - 1, d) <= DENSE_CAP else "normal-form"
    linear = _eee_span(rank)
    if method == "normal-form":
        free = n - len(linear)
        return comb(free + d - 1, d) if free else int(d == 0)
    if method != "dense":
        raise InvalidInputError(f"unknown method {method!r}")
    chars = list(range(1, n + 1))
    basis = list(combinations_with_replacement(chars, d))
    index = {m: i for i, m in enumerate(basis)}
    forms = [tuple(i + 1 for i in range(n) if row >> i & 1) for row in linear.reduced_rows()]
    span = gf2.EchelonBasis()
    if d >= 1:
        for cof in combinations_with_replacement(chars, d - 1):
            for form in forms:
                row = 0
                for var in form:
                    row ^= 1 << index[tuple(sorted(cof + (var,)))]
                span.add(row)
    return len(basis) - len(span)


def expected_trivial_b_dimension(rank: int, d: int) -> int:
    return comb(d + rank - 1, rank - 1)
