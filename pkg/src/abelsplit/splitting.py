"""Splitting verification, classification, and certificate construction.

A splitting of a finite abelian group G is a set M of nonzero integers (the
multipliers) together with a subset S of G (the splitters) such that every
nonzero element of G equals m*s for exactly one pair (m, s).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .groups import Element, FiniteAbelianGroup

INTERVAL = "interval"
EXPLICIT = "explicit"

NONSINGULAR = "nonsingular"
PURELY_SINGULAR = "purely_singular"
MIXED_SINGULAR = "mixed_singular"

VALID = "valid"
INVALID = "invalid"

ORDER_K_PLUS_1 = "order_k_plus_1"
ORDER_2K_PLUS_1 = "order_2k_plus_1"


@dataclass(frozen=True)
class MultiplierSet:
    """Strictly increasing nonzero integers, optionally tagged as {1..k}."""

    values: tuple[int, ...]
    kind: str = EXPLICIT

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        if not values:
            raise ValueError("multiplier set must be nonempty")
        if any(v == 0 for v in values):
            raise ValueError("0 is not a valid multiplier")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("multiplier values must be strictly increasing")
        if self.kind == INTERVAL:
            if values != tuple(range(1, len(values) + 1)):
                raise ValueError("interval multiplier set must be exactly {1..k}")
        elif self.kind != EXPLICIT:
            raise ValueError(f"unknown multiplier kind {self.kind!r}")
        object.__setattr__(self, "values", values)

    @classmethod
    def interval(cls, k: int) -> "MultiplierSet":
        """The multiplier interval {1, 2, ..., k}."""
        if k < 1:
            raise ValueError(f"interval bound must be >= 1, got {k}")
        return cls(tuple(range(1, k + 1)), kind=INTERVAL)

    @classmethod
    def explicit(cls, values: Iterable[int]) -> "MultiplierSet":
        return cls(tuple(sorted({int(v) for v in values})), kind=EXPLICIT)

    def residues(self, modulus: int) -> tuple[int, ...]:
        """Values reduced mod the group order, in value order (may repeat)."""
        return tuple(v % modulus for v in self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


class Orbit(NamedTuple):
    """Product set {m*s : m in M}; multiset_size > |points| flags repeats."""

    points: frozenset[Element]
    multiset_size: int


def orbit(M: MultiplierSet, s: Element, G: FiniteAbelianGroup) -> Orbit:
    pts = [G.scalar_mul(m, s) for m in M]
    return Orbit(frozenset(pts), len(pts))


@dataclass(frozen=True)
class SingularityClass:
    """Which prime divisors of |G| divide some multiplier.

    witnesses pairs each prime divisor of |G| with the least multiplier it
    divides, or None when no multiplier works.
    """

    tag: str
    witnesses: tuple[tuple[int, int | None], ...]


def classify_multipliers(G: FiniteAbelianGroup, M: MultiplierSet) -> SingularityClass:
    """nonsingular / purely_singular / mixed_singular for (|G|, M).

    Only residues of M mod |G| matter, so translating multipliers by
    multiples of the order never changes the class. The trivial group has
    no prime divisors and comes out purely_singular (vacuously).
    """
    n = G.order
    witnesses = []
    for p, _ in G.order_factorization:
        hit = next((v for v in M if (v % n) % p == 0), None)
        witnesses.append((p, hit))
    if all(m is not None for _, m in witnesses):
        tag = PURELY_SINGULAR
    elif all(m is None for _, m in witnesses):
        tag = NONSINGULAR
    else:
        tag = MIXED_SINGULAR
    return SingularityClass(tag, tuple(witnesses))


@dataclass(frozen=True)
class VerificationFailure:
    kind: str  # count_mismatch | zero_hit | collision | uncovered
    element: Element | None = None
    first: tuple[int, Element] | None = None
    second: tuple[int, Element] | None = None

    def describe(self) -> str:
        if self.kind == "count_mismatch":
            return "count mismatch: |M| * |S| != |G| - 1"
        if self.kind == "zero_hit":
            m, s = self.first
            return f"product {m} * {s} is the identity"
        if self.kind == "collision":
            return f"element {self.element} reached by both {self.first} and {self.second}"
        return f"element {self.element} is never reached"


@dataclass(frozen=True)
class VerificationReport:
    verdict: str
    failure: VerificationFailure | None = None

    @property
    def is_valid(self) -> bool:
        return self.verdict == VALID


def canonical_splitters(G: FiniteAbelianGroup, elements: Iterable) -> tuple[Element, ...]:
    """Reduce, sort, and reject duplicate splitters."""
    elems = [G.element(e) for e in elements]
    out = tuple(sorted(set(elems)))
    if len(out) != len(elems):
        raise ValueError("duplicate splitters")
    return out


def verify_splitting(
    G: FiniteAbelianGroup, M: MultiplierSet, splitters: Iterable
) -> VerificationReport:
    """Check that the products m*s cover every nonzero element exactly once.

    Products are scanned splitter-major, multiplier-minor, both ascending,
    and the first offending product is reported, so failure reports are
    reproducible. A size mismatch |M|*|S| != |G|-1 short-circuits.
    """
    S = canonical_splitters(G, splitters)
    if len(M) * len(S) != G.order - 1:
        return VerificationReport(INVALID, VerificationFailure("count_mismatch"))
    zero = G.identity()
    seen: dict[Element, tuple[int, Element]] = {}
    for s in S:
        for m in M:
            x = G.scalar_mul(m, s)
            if x == zero:
                return VerificationReport(
                    INVALID, VerificationFailure("zero_hit", element=x, first=(m, s))
                )
            prev = seen.get(x)
            if prev is not None:
                return VerificationReport(
                    INVALID,
                    VerificationFailure("collision", element=x, first=prev, second=(m, s)),
                )
            seen[x] = (m, s)
    for g in G.elements():  # unreachable once counts match; kept as a safety net
        if g != zero and g not in seen:
            return VerificationReport(INVALID, VerificationFailure("uncovered", element=g))
    return VerificationReport(VALID)


@dataclass(frozen=True)
class SplittingCertificate:
    """A verified splitting: the portable proof object."""

    group: FiniteAbelianGroup
    multipliers: MultiplierSet
    splitters: tuple[Element, ...]
    classification: SingularityClass


def make_certificate(
    G: FiniteAbelianGroup, M: MultiplierSet, splitters: Iterable
) -> SplittingCertificate:
    """Verify, classify, and package; raises ValueError on a non-splitting."""
    report = verify_splitting(G, M, splitters)
    if not report.is_valid:
        raise ValueError(f"not a splitting of {G}: {report.failure.describe()}")
    return SplittingCertificate(
        G, M, canonical_splitters(G, splitters), classify_multipliers(G, M)
    )


def trivial_certificate(k: int, which: str = ORDER_K_PLUS_1) -> SplittingCertificate:
    """The two canonical splittings by {1..k}.

    order_k_plus_1 is (Z_{k+1}, {1..k}, {1}); order_2k_plus_1 is
    (Z_{2k+1}, {1..k}, {1, 2k}), whose second splitter covers k+1..2k
    through negation. Both are verified before being returned.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    M = MultiplierSet.interval(k)
    if which == ORDER_K_PLUS_1:
        G = FiniteAbelianGroup.cyclic(k + 1)
        splitters = [(1,)]
    elif which == ORDER_2K_PLUS_1:
        G = FiniteAbelianGroup.cyclic(2 * k + 1)
        splitters = [(1,), (2 * k,)]
    else:
        raise ValueError(f"unknown trivial form {which!r}")
    return make_certificate(G, M, splitters)


def s87_property_check(cert: SplittingCertificate) -> bool:
    """For cyclic groups of odd prime-power order p^t: true iff all multiplier
    residues are coprime to p or all splitters are coprime to p.

    Groups whose order is not an odd prime power are rejected.
    """
    G = cert.group
    n = G.modulus
    fac = G.order_factorization
    if len(fac) != 1 or fac[0][0] == 2:
        raise ValueError(f"group order {n} is not an odd prime power")
    p = fac[0][0]
    multipliers_coprime = all(r % p != 0 for r in cert.multipliers.residues(n))
    splitters_coprime = all(s[0] % p != 0 for s in cert.splitters)
    return multipliers_coprime or splitters_coprime
