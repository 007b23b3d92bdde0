"""The presented ring F2[a, t] / I(A), one graded piece at a time.

I(A) is generated by r(T) for the circuits T.  Every graded piece of the
polynomial ring is finite, with the monomial basis prod a^(w-s) t^s indexed by
t-exponent vectors s, so the piece of I(A) in degree (m, W) is the row span
of the products r(T) * M that land there.  Dimensions, membership and normal
forms are rank computations on that span.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from bredon import gf2
from bredon.characters import Subgroup, check_character, check_rank, kernel_quotient
from bredon.circuits import circuit_list, circuits_within
from bredon.errors import InvalidInputError, ResourceError
from bredon.ring import (
    ATPolynomial,
    Monomial,
    RepDegree,
    bockstein,
    canonical_rep,
    iter_degrees,
    monomials_of_degree,
    relation_polynomial,
    restrict_to_kernel,
    t_product,
    t_vectors,
)

MAX_TOTAL = 10
MAX_MONOMIALS = 200_000

LINEAR = "linear-algebra"
ORACLE = "oracle"


@dataclass(frozen=True)
class GradedPieceReport:
    degree: RepDegree
    num_monomials: int
    relation_rank: int | None
    dimension: int
    method: str
    rank: int = 0

    def to_json(self) -> dict:
        return {
            **self.degree.to_json(),
            "monomials": self.num_monomials,
            "relation_rank": self.relation_rank,
            "dim": self.dimension,
            "method": self.method,
        }


@dataclass(frozen=True)
class RelationSpan:
    degree: RepDegree
    basis_monomials: list[Monomial]
    relation_matrix: gf2.BitMatrix
    rank: int
    generators: list[tuple[tuple[int, ...], Monomial]] = field(default_factory=list)


def count_monomials(d: RepDegree) -> int:
    """Coefficient of x^m in prod (1 + x + ... + x^w)."""
    if d.m < 0:
        return 0
    poly = [1]
    for _, w in d.rep:
        nxt = [0] * min(len(poly) + w, d.m + 1)
        for i, c in enumerate(poly):
            if c:
                for k in range(w + 1):
                    if i + k > d.m:
                        break
                    nxt[i + k] += c
        poly = nxt
    return poly[d.m] if d.m < len(poly) else 0


def _check_degree(rank: int, d: RepDegree, max_total: int | None) -> None:
    check_rank(rank)
    for mask in d.support:
        check_character(mask, rank)
    if max_total is not None and d.total > max_total:
        raise ResourceError(f"|W| = {d.total} exceeds the cap of {max_total}")


class _Piece:
    """Monomial basis and relation span in one bidegree (internal, cached)."""

    __slots__ = ("degree", "svecs", "index", "span", "rows", "gens")

    def __init__(self, d: RepDegree, max_monomials: int):
        n = count_monomials(d)
        if n > max_monomials:
            raise ResourceError(f"{n} monomials in degree {d} exceeds the cap of {max_monomials}")
        self.degree = d
        caps = tuple(w for _, w in d.rep)
        self.svecs = t_vectors(caps, d.m)
        self.index = {s: i for i, s in enumerate(self.svecs)}
        self.rows: list[int] = []
        self.gens: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        support = d.support
        pos = {mask: i for i, mask in enumerate(support)}
        if self.svecs:
            for circuit in circuits_within(support, d.m + 1):
                at = [pos[c] for c in circuit]
                rest = list(caps)
                for i in at:
                    rest[i] -= 1
                for sp in t_vectors(tuple(rest), d.m - len(circuit) + 1):
                    row = 0
                    base = list(sp)
                    for i in at:
                        base[i] += 1
                    for i in at:
                        base[i] -= 1
                        row |= 1 << self.index[tuple(base)]
                        base[i] += 1
                    self.rows.append(row)
                    self.gens.append((circuit, sp))
        self.span = gf2.EchelonBasis(self.rows)

    @property
    def num_monomials(self) -> int:
        return len(self.svecs)

    @property
    def rank(self) -> int:
        return len(self.span)

    def coordinates(self, f: ATPolynomial) -> int:
        v = 0
        for mono in f.terms:
            if mono.degree != self.degree:
                raise InvalidInputError(f"term {mono} is not of degree {self.degree}")
            v ^= 1 << self.index[mono.t_vector(self.degree.rep)]
        return v

    def polynomial(self, v: int) -> ATPolynomial:
        rep = self.degree.rep
        out = []
        while v:
            low = v & -v
            out.append(Monomial.from_degree_and_t(rep, self.svecs[low.bit_length() - 1]))
            v ^= low
        return ATPolynomial(out)

    def cofactor(self, circuit, sp) -> Monomial:
        """The monomial M of a generator r(T) * M, from its t-vector ``sp``."""
        exps = []
        for (mask, w), k in zip(self.degree.rep, sp):
            w -= mask in circuit
            if w:
                exps.append((mask, w - k, k))
        return Monomial(tuple(exps))

    def standard_columns(self) -> list[int]:
        pivots = set(self.span.pivot_columns())
        return [i for i in range(len(self.svecs)) if i not in pivots]


@lru_cache(maxsize=200_000)
def _piece(d: RepDegree, max_monomials: int = MAX_MONOMIALS) -> _Piece:
    return _Piece(d, max_monomials)


def piece(rank: int, d: RepDegree, max_total: int | None = MAX_TOTAL) -> _Piece:
    _check_degree(rank, d, max_total)
    return _piece(d)


def relation_span(rank: int, d: RepDegree, max_total: int | None = MAX_TOTAL) -> RelationSpan:
    p = piece(rank, d, max_total)
    return RelationSpan(
        degree=d,
        basis_monomials=monomials_of_degree(d),
        relation_matrix=gf2.BitMatrix(tuple(p.rows), p.num_monomials),
        rank=p.rank,
        generators=[(c, p.cofactor(c, sp)) for c, sp in p.gens],
    )


def dimension_linear(
    rank: int, d: RepDegree, max_total: int | None = MAX_TOTAL
) -> GradedPieceReport:
    p = piece(rank, d, max_total)
    return GradedPieceReport(d, p.num_monomials, p.rank, p.num_monomials - p.rank, LINEAR, rank)


def dim(rank: int, m: int, chars, max_total: int | None = MAX_TOTAL) -> int:
    """Shorthand: dimension_linear of (m, W) with W given as masks or a mapping."""
    if m < 0:
        return 0
    return dimension_linear(rank, RepDegree.of(m, chars), max_total).dimension


def is_in_ideal(f: ATPolynomial, rank: int, max_total: int | None = MAX_TOTAL) -> bool:
    if not f:
        return True
    if not f.is_homogeneous():
        # I(A) is homogeneous, so f lies in it iff every component does.
        return all(is_in_ideal(part, rank, max_total) for part in homogeneous_components(f))
    p = piece(rank, f.degree, max_total)
    return p.coordinates(f) in p.span


def homogeneous_components(f: ATPolynomial) -> list[ATPolynomial]:
    parts: dict[RepDegree, list] = {}
    for mono in f.terms:
        parts.setdefault(mono.degree, []).append(mono)
    return [ATPolynomial(parts[d]) for d in sorted(parts, key=lambda d: (d.m, d.rep))]


def normal_form(f: ATPolynomial, rank: int, max_total: int | None = MAX_TOTAL) -> ATPolynomial:
    """Canonical representative of f modulo I(A), supported on standard monomials."""
    if not f:
        return f
    if not f.is_homogeneous():
        raise InvalidInputError("normal forms are taken degreewise")
    p = piece(rank, f.degree, max_total)
    return p.polynomial(p.span.normal_form(p.coordinates(f)))


# ---------------------------------------------------------------- minimality


@dataclass(frozen=True)
class CircuitMinimality:
    circuit: tuple[int, ...]
    kernel_dim: int
    span_rank: int
    generated_by_self: bool
    rank_without: int

    @property
    def passed(self) -> bool:
        return (
            self.kernel_dim == 1
            and self.span_rank == 1
            and self.generated_by_self
            and self.rank_without < self.span_rank
        )


@dataclass(frozen=True)
class MinimalityReport:
    rank: int
    results: list[CircuitMinimality]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "circuits": len(self.results),
            "passed": sum(r.passed for r in self.results),
            "failures": [list(r.circuit) for r in self.results if not r.passed],
        }


def verify_minimality(rank: int, max_rank: int = 5) -> MinimalityReport:
    """Check each r(T) is forced: its degree has a 1-dimensional kernel, spanned by r(T) alone."""
    from bredon.oracle import oracle_dimension

    check_rank(rank, max_rank)
    results = []
    for circuit in circuit_list(rank):
        d = RepDegree.of(len(circuit) - 1, circuit)
        p = piece(rank, d, None)
        kernel_dim = p.num_monomials - oracle_dimension(rank, d)
        own = p.coordinates(relation_polynomial(circuit))
        others = gf2.EchelonBasis(row for row, (c, _) in zip(p.rows, p.gens) if c != circuit)
        results.append(
            CircuitMinimality(
                circuit=circuit,
                kernel_dim=kernel_dim,
                span_rank=p.rank,
                generated_by_self=bool(own) and p.rank == 1 and own in p.span,
                rank_without=len(others),
            )
        )
    return MinimalityReport(rank, results)


# -------------------------------------------------------------------- domain


def random_nonzero_element(rank: int, d: RepDegree, rng: random.Random, max_total=MAX_TOTAL) -> ATPolynomial:
    """Uniform nonzero class in the degree-d piece, as a standard-monomial representative."""
    p = piece(rank, d, max_total)
    cols = p.standard_columns()
    if not cols:
        raise InvalidInputError(f"degree {d} piece is zero")
    while True:
        coeffs = rng.getrandbits(len(cols))
        if coeffs:
            break
    v = 0
    for j, col in enumerate(cols):
        if coeffs >> j & 1:
            v |= 1 << col
    return p.polynomial(v)


@dataclass(frozen=True)
class DomainReport:
    rank: int
    trials: int
    counterexamples: list[tuple[str, str]]

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "trials": self.trials,
            "counterexamples": [list(c) for c in self.counterexamples],
        }


def product_nonzero_check(
    rank: int, d1: RepDegree, d2: RepDegree, trials: int, seed: int = 0
) -> DomainReport:
    """Products of random nonzero classes of degrees d1 and d2 must be nonzero."""
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        x = random_nonzero_element(rank, d1, rng)
        y = random_nonzero_element(rank, d2, rng)
        if is_in_ideal(x * y, rank, None):
            bad.append((str(x), str(y)))
    return DomainReport(rank, trials, bad)


def domain_spot_check(rank: int, max_total: int, pairs: int, seed: int = 0) -> DomainReport:
    """Random pairs over random nonzero degrees with |W| <= max_total per factor."""
    rng = random.Random(seed)
    degrees = [d for d in iter_degrees(rank, max_total) if dimension_linear(rank, d).dimension]
    bad = []
    for _ in range(pairs):
        d1, d2 = rng.choice(degrees), rng.choice(degrees)
        x = random_nonzero_element(rank, d1, rng)
        y = random_nonzero_element(rank, d2, rng)
        if is_in_ideal(x * y, rank, None):
            bad.append((str(x), str(y)))
    return DomainReport(rank, pairs, bad)


# --------------------------------------------------------------- restriction


@dataclass(frozen=True)
class SurjectivityReport:
    char: int
    source: RepDegree
    target: RepDegree | None
    target_dimension: int
    image_rank: int

    @property
    def surjective(self) -> bool:
        return self.image_rank == self.target_dimension

    def to_json(self) -> dict:
        return {
            "char": self.char,
            "source": self.source.to_json(),
            "target": None if self.target is None else self.target.to_json(),
            "target_dim": self.target_dimension,
            "image_rank": self.image_rank,
            "surjective": self.surjective,
        }


def restricted_degree(rank: int, char: int, d: RepDegree) -> RepDegree | None:
    """(m - k, W_K) with k the multiplicity of char in W; None if m - k < 0."""
    q = kernel_quotient(char, rank)
    k = d.multiplicity(char)
    if d.m - k < 0:
        return None
    image: dict[int, int] = {}
    for mask, mult in d.rep:
        if mask != char:
            key = q(mask)
            image[key] = image.get(key, 0) + mult
    return RepDegree(d.m - k, canonical_rep(image))


def restriction_surjectivity_check(
    rank: int, subgroup: Subgroup | int, d: RepDegree, max_total=MAX_TOTAL
) -> SurjectivityReport:
    """Is res: H_m(A, W) -> H_{m-k}(K, W_K) onto, for K of index 2?"""
    char = subgroup.index2_character() if isinstance(subgroup, Subgroup) else subgroup
    check_character(char, rank)
    target = restricted_degree(rank, char, d)
    if target is None:
        return SurjectivityReport(char, d, None, 0, 0)
    tp = piece(rank - 1, target, max_total)
    target_dim = tp.num_monomials - tp.rank
    span = gf2.EchelonBasis(tp.span.pivots.values())
    for mono in monomials_of_degree(d):
        img = restrict_to_kernel(ATPolynomial.monomial(mono), char, rank)
        if img:
            span.add(tp.coordinates(img))
    return SurjectivityReport(char, d, target, target_dim, len(span) - tp.rank)


# ------------------------------------------------------------------ identities


def proof_identities(circuit, alpha: int, beta: int) -> tuple[bool, bool]:
    """The two polynomial identities that make circuits of size >= 4 redundant after localizing.

    With gamma = alpha + beta and S = T minus {alpha, beta}:
      t_g r(T) = t_a t_b r(S + g) + r(a, b, g) prod_S t
      a_g r(T) = (a_a t_b + t_a a_b) r(S + g) + r(a, b, g) r(S)
    """
    circuit = tuple(circuit)
    gamma = alpha ^ beta
    if alpha == beta or alpha not in circuit or beta not in circuit or gamma in circuit:
        raise InvalidInputError("need distinct alpha, beta in T with alpha + beta outside T")
    rest = [c for c in circuit if c not in (alpha, beta)]
    r_t = relation_polynomial(circuit)
    r_sg = relation_polynomial(rest + [gamma])
    r_abg = relation_polynomial([alpha, beta, gamma])
    first = ATPolynomial.t(gamma) * r_t == (
        ATPolynomial.t(alpha) * ATPolynomial.t(beta) * r_sg + r_abg * t_product(rest)
    )
    mixed = ATPolynomial.a(alpha) * ATPolynomial.t(beta) + ATPolynomial.t(alpha) * ATPolynomial.a(beta)
    second = ATPolynomial.a(gamma) * r_t == mixed * r_sg + r_abg * relation_polynomial(rest)
    return first, second


def admissible_pairs(circuit) -> list[tuple[int, int]]:
    return [(a, b) for a, b in combinations(circuit, 2) if (a ^ b) not in circuit]


@dataclass(frozen=True)
class IdentityReport:
    rank: int
    checked: int
    failures: list[tuple[tuple[int, ...], int, int]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "checked": self.checked,
            "failures": [[list(c), a, b] for c, a, b in self.failures],
        }


def check_proof_identities(rank: int) -> IdentityReport:
    checked = 0
    bad = []
    for circuit in circuit_list(rank):
        for a, b in admissible_pairs(circuit):
            checked += 1
            if not all(proof_identities(circuit, a, b)):
                bad.append((circuit, a, b))
    return IdentityReport(rank, checked, bad)


# -------------------------------------------------------------------- bockstein


def relation_rows(rank: int, d: RepDegree, max_total=MAX_TOTAL) -> list[ATPolynomial]:
    """The generating products r(T) * M of the relation span, as polynomials."""
    p = piece(rank, d, max_total)
    return [p.polynomial(row) for row in p.rows]


def bockstein_preserves_ideal(rank: int, d: RepDegree, max_total=MAX_TOTAL) -> bool:
    for f in relation_rows(rank, d, max_total):
        g = bockstein(f)
        if g and not is_in_ideal(g, rank, max_total):
            return False
    return True


# ----------------------------------------------------------------- exactness


def exact_sequence_holds(rank: int, rep, char: int, m: int) -> tuple[int, int, int]:
    """Return (dim(m, V+char), dim(m, V), dim over K of (m-k-1, V_K)) via linear algebra."""
    v = RepDegree.of(m, rep)
    w = v + RepDegree.of(0, [char])
    k = v.multiplicity(char)
    middle = dimension_linear(rank, w, None).dimension
    left = dimension_linear(rank, v, None).dimension
    shifted = RepDegree(m - 1, v.rep)
    target = restricted_degree(rank, char, shifted)
    right = 0 if target is None else dimension_linear(rank - 1, target, None).dimension
    assert target is None or target.m == m - k - 1
    return middle, left, right
