"""The bigraded polynomial ring F2[a_l, t_l : l nontrivial] and its operations.

A monomial is a sorted tuple of ``(mask, a_exp, t_exp)`` triples; a polynomial
is a frozenset of monomials, so addition is symmetric difference.  The degree
of a_l is (0, l) and of t_l is (1, l): integer degree counts t-factors, and
the representation part counts every factor at its character.

Canonical text: terms like ``a[1]t[2]^2t[3]`` joined by ``+``, with ``1`` for
the unit monomial and ``0`` for the zero polynomial.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping

from bredon.characters import kernel_quotient
from bredon.errors import InvalidInputError, ResourceError

MAX_EXPONENT = 255

Rep = tuple[tuple[int, int], ...]


def canonical_rep(chars: Iterable[int] | Mapping[int, int]) -> Rep:
    """Sorted ``(mask, multiplicity)`` pairs from a mapping or a list with repeats."""
    if isinstance(chars, Mapping):
        items = chars.items()
    else:
        items = Counter(chars).items()
    out = []
    for mask, mult in sorted(items):
        if mask <= 0:
            raise InvalidInputError(f"representation contains the trivial character: {mask}")
        if mult < 0:
            raise InvalidInputError(f"negative multiplicity for {mask}")
        if mult:
            out.append((mask, mult))
    return tuple(out)


@dataclass(frozen=True)
class RepDegree:
    """Bidegree (m, W): integer degree m, fixed-point-free representation W."""

    m: int
    rep: Rep = ()

    @classmethod
    def of(cls, m: int, chars: Iterable[int] | Mapping[int, int] = ()) -> "RepDegree":
        return cls(m, canonical_rep(chars))

    @property
    def total(self) -> int:
        return sum(mult for _, mult in self.rep)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(mask for mask, _ in self.rep)

    def multiplicity(self, mask: int) -> int:
        for c, mult in self.rep:
            if c == mask:
                return mult
        return 0

    def as_counter(self) -> Counter:
        return Counter(dict(self.rep))

    def __add__(self, other: "RepDegree") -> "RepDegree":
        return RepDegree(self.m + other.m, canonical_rep(self.as_counter() + other.as_counter()))

    def __sub__(self, other: "RepDegree") -> "RepDegree":
        if not other <= self:
            raise InvalidInputError(f"{other} is not below {self}")
        w = self.as_counter()
        w.subtract(other.as_counter())
        return RepDegree(self.m - other.m, canonical_rep(+w))

    def __le__(self, other: "RepDegree") -> bool:
        """Componentwise partial order; not a total order."""
        if self.m > other.m:
            return False
        theirs = dict(other.rep)
        return all(theirs.get(mask, 0) >= mult for mask, mult in self.rep)

    def __str__(self) -> str:
        return f"({self.m}; {format_rep(self.rep) or '0'})"

    def to_json(self) -> dict:
        return {"m": self.m, "rep": [[mask, mult] for mask, mult in self.rep]}


def format_rep(rep: Rep) -> str:
    """Rep-spec text: ``1,2,3`` or ``1^2,3``."""
    return ",".join(str(mask) if mult == 1 else f"{mask}^{mult}" for mask, mult in rep)


def parse_rep(text: str, rank: int | None = None) -> Rep:
    """Parse rep-spec ``item (',' item)*`` with ``item := mask ('^' mult)?``."""
    counts: Counter = Counter()
    text = text.strip()
    if not text:
        return ()
    for item in text.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+)\s*)?", item)
        if not m:
            raise InvalidInputError(f"bad rep item {item!r}")
        mask = int(m.group(1))
        mult = int(m.group(2)) if m.group(2) is not None else 1
        if mask == 0 or (rank is not None and mask >= 1 << rank):
            raise InvalidInputError(f"{mask} is not a nontrivial character of rank {rank}")
        if mult == 0:
            raise InvalidInputError(f"zero multiplicity in {item!r}")
        counts[mask] += mult
    return canonical_rep(counts)


def iter_reps(rank: int, max_total: int, min_total: int = 0) -> Iterator[Rep]:
    """All representations of total dimension in [min_total, max_total]."""
    chars = range(1, 1 << rank)
    for n in range(min_total, max_total + 1):
        for combo in combinations_with_replacement(chars, n):
            yield canonical_rep(combo)


def iter_degrees(rank: int, max_total: int) -> Iterator[RepDegree]:
    """Every degree (m, W) with |W| <= max_total and 0 <= m <= |W|."""
    for rep in iter_reps(rank, max_total):
        n = sum(mult for _, mult in rep)
        for m in range(n + 1):
            yield RepDegree(m, rep)


@dataclass(frozen=True, order=True)
class Monomial:
    exps: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        for mask, a, t in self.exps:
            if a > MAX_EXPONENT or t > MAX_EXPONENT:
                raise ResourceError(f"exponent above {MAX_EXPONENT} at character {mask}")

    @classmethod
    def from_dict(cls, exps: Mapping[int, tuple[int, int]]) -> "Monomial":
        return cls(tuple((mask, a, t) for mask, (a, t) in sorted(exps.items()) if a or t))

    @classmethod
    def from_degree_and_t(cls, rep: Rep, s: tuple[int, ...]) -> "Monomial":
        """The monomial prod a^(w - s) t^s over the characters of ``rep``."""
        return cls(tuple((mask, w - k, k) for (mask, w), k in zip(rep, s) if w))

    @property
    def degree(self) -> RepDegree:
        return RepDegree(sum(t for _, _, t in self.exps), tuple((mask, a + t) for mask, a, t in self.exps))

    def t_vector(self, rep: Rep) -> tuple[int, ...]:
        ts = {mask: t for mask, _, t in self.exps}
        return tuple(ts.get(mask, 0) for mask, _ in rep)

    def __mul__(self, other: "Monomial") -> "Monomial":
        acc = {mask: [a, t] for mask, a, t in self.exps}
        for mask, a, t in other.exps:
            if mask in acc:
                acc[mask][0] += a
                acc[mask][1] += t
            else:
                acc[mask] = [a, t]
        return Monomial(tuple((mask, a, t) for mask, (a, t) in sorted(acc.items())))

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        parts = []
        for mask, a, t in self.exps:
            for name, e in (("a", a), ("t", t)):
                if e == 1:
                    parts.append(f"{name}[{mask}]")
                elif e > 1:
                    parts.append(f"{name}[{mask}]^{e}")
        return "".join(parts)


ONE_MONOMIAL = Monomial()

_FACTOR = re.compile(r"([at])\[(\d+)\](?:\^(\d+))?")


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return ONE_MONOMIAL
    acc: dict[int, list[int]] = {}
    pos = 0
    for m in _FACTOR.finditer(text):
        if m.start() != pos:
            break
        pos = m.end()
        mask = int(m.group(2))
        if mask == 0:
            raise InvalidInputError("variables are indexed by nontrivial characters")
        e = int(m.group(3)) if m.group(3) else 1
        acc.setdefault(mask, [0, 0])[0 if m.group(1) == "a" else 1] += e
    if pos != len(text) or not text:
        raise InvalidInputError(f"bad monomial {text!r}")
    return Monomial.from_dict({mask: (a, t) for mask, (a, t) in acc.items()})


class ATPolynomial:
    """A GF(2) polynomial in the a- and t-variables."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Monomial] = ()):
        acc: set[Monomial] = set()
        for term in terms:
            acc ^= {term}
        self.terms = frozenset(acc)

    @classmethod
    def monomial(cls, mono: Monomial) -> "ATPolynomial":
        return cls((mono,))

    @classmethod
    def a(cls, mask: int, e: int = 1) -> "ATPolynomial":
        return cls((Monomial(((mask, e, 0),)),))

    @classmethod
    def t(cls, mask: int, e: int = 1) -> "ATPolynomial":
        return cls((Monomial(((mask, 0, e),)),))

    @classmethod
    def parse(cls, text: str) -> "ATPolynomial":
        text = text.strip()
        if text == "0":
            return ZERO
        return cls(parse_monomial(part) for part in text.split("+"))

    def __add__(self, other: "ATPolynomial") -> "ATPolynomial":
        out = ATPolynomial()
        out.terms = self.terms ^ other.terms
        return out

    __sub__ = __add__

    def __mul__(self, other: "ATPolynomial") -> "ATPolynomial":
        return multiply(self, other)

    def __pow__(self, n: int) -> "ATPolynomial":
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, ATPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.terms}) <= 1

    @property
    def degree(self) -> RepDegree:
        degrees = {m.degree for m in self.terms}
        if len(degrees) != 1:
            raise InvalidInputError("zero or inhomogeneous polynomial has no degree")
        return degrees.pop()

    def characters(self) -> set[int]:
        return {mask for m in self.terms for mask, _, _ in m.exps}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(str(m) for m in self.sorted_terms())

    def __repr__(self) -> str:
        return f"ATPolynomial({str(self)!r})"


ZERO = ATPolynomial()
ONE = ATPolynomial((ONE_MONOMIAL,))


def multiply(f: ATPolynomial, g: ATPolynomial) -> ATPolynomial:
    acc: set[Monomial] = set()
    for x in f.terms:
        for y in g.terms:
            acc ^= {x * y}
    return ATPolynomial(acc)


def monomials_of_degree(d: RepDegree) -> list[Monomial]:
    """Basis monomials of degree d, in lexicographic order of the t-exponent vector."""
    return [Monomial.from_degree_and_t(d.rep, s) for s in t_vectors(tuple(w for _, w in d.rep), d.m)]


def t_vectors(caps: tuple[int, ...], m: int) -> list[tuple[int, ...]]:
    """Vectors s with 0 <= s_i <= caps[i] and sum m, lexicographically increasing."""
    if m < 0 or m > sum(caps):
        return []
    n = len(caps)
    # suffix[i]: the most the entries from position i on can still absorb.
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[i]
    out: list[tuple[int, ...]] = []

    def rec(i: int, left: int, acc: tuple[int, ...]) -> None:
        if i == n:
            if left == 0:
                out.append(acc)
            return
        lo = max(0, left - suffix[i + 1])
        for k in range(lo, min(caps[i], left) + 1):
            rec(i + 1, left - k, acc + (k,))

    rec(0, m, ())
    return out


def relation_polynomial(chars: Iterable[int]) -> ATPolynomial:
    """r(T): sum over l in T of a_l times the product of t over T minus l."""
    chars = list(chars)
    if not chars:
        raise InvalidInputError("r(T) needs a nonempty set")
    if len(set(chars)) != len(chars):
        raise InvalidInputError(f"duplicate characters in {chars}")
    chars.sort()
    return ATPolynomial(
        Monomial(tuple((c, 1, 0) if c == lam else (c, 0, 1) for c in chars)) for lam in chars
    )


def t_product(chars: Iterable[int]) -> ATPolynomial:
    return ATPolynomial((Monomial(tuple((c, 0, 1) for c in sorted(set(chars)))),))


def bockstein(f: ATPolynomial) -> ATPolynomial:
    """The derivation with a_l -> 0 and t_l -> a_l.

    On a monomial the t_l-exponent n contributes n * t_l^(n-1) a_l, which
    survives mod 2 only for odd n.
    """
    acc: set[Monomial] = set()
    for mono in f.terms:
        for i, (mask, a, t) in enumerate(mono.exps):
            if t & 1:
                exps = mono.exps[:i] + ((mask, a + 1, t - 1),) + mono.exps[i + 1:]
                acc ^= {Monomial(exps)}
    return ATPolynomial(acc)


def restrict_to_kernel(f: ATPolynomial, char: int, rank: int) -> ATPolynomial:
    """Restriction to K = ker(char), with the fixed summand suspended away.

    a_char goes to 0 and t_char to 1; every other variable goes to the
    variable of its image K-character.  The result lives in the rank r - 1 ring.
    """
    q = kernel_quotient(char, rank)
    acc: set[Monomial] = set()
    for mono in f.terms:
        image: dict[int, list[int]] = {}
        dead = False
        for mask, a, t in mono.exps:
            if mask == char:
                if a:
                    dead = True
                    break
                continue
            k = q(mask)
            slot = image.setdefault(k, [0, 0])
            slot[0] += a
            slot[1] += t
        if not dead:
            acc ^= {Monomial.from_dict({k: (a, t) for k, (a, t) in image.items()})}
    return ATPolynomial(acc)


def substitute_characters(f: ATPolynomial, mapping) -> ATPolynomial:
    """Rename characters by an injective map (e.g. a group automorphism)."""
    return ATPolynomial(
        Monomial.from_dict({mapping(mask): (a, t) for mask, a, t in mono.exps}) for mono in f.terms
    )


def random_homogeneous(rank: int, d: RepDegree, rng, density: float = 0.5) -> ATPolynomial:
    """Random polynomial of degree d: each basis monomial kept with probability ``density``."""
    return ATPolynomial(m for m in monomials_of_degree(d) if rng.random() < density)


def random_degree(rank: int, rng, max_total: int) -> RepDegree:
    n = rng.randint(0, max_total)
    chars = [rng.randrange(1, 1 << rank) for _ in range(n)]
    return RepDegree.of(rng.randint(0, n), chars)


def product_one_sets(rank: int, max_size: int) -> Iterator[tuple[int, ...]]:
    """Sets of distinct nontrivial characters whose product (XOR) is trivial."""
    from itertools import combinations

    chars = range(1, 1 << rank)
    for k in range(3, max_size + 1):
        for combo in combinations(chars, k - 1):
            s = 0
            for c in combo:
                s ^= c
            if s > combo[-1]:
                yield combo + (s,)
