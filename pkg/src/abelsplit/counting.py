"""Executable counting checks for purely singular splittings by {1..k}.

Everything here turns one step of the nonexistence argument into an exact
finite computation over a given certificate or parameter set: base-p digit
patterns of k, the decomposition of k - floor(k/p), stratification of a
group by the p-valuation of element orders, the per-stratum counting
identities, the five interval cardinalities A..E, and the packing of
translated unit-splitter cosets inside the unit group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

from .groups import factorize, is_prime, p_adic_valuation
from .splitting import INTERVAL, PURELY_SINGULAR, SplittingCertificate


@dataclass(frozen=True)
class DigitExpansion:
    """Little-endian base-p digits; empty for zero, no trailing zero digit."""

    base: int
    digits: tuple[int, ...]

    @property
    def value(self) -> int:
        return sum(b * self.base**i for i, b in enumerate(self.digits))


def base_p_digits(k: int, p: int) -> DigitExpansion:
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    digits = []
    while k:
        k, b = divmod(k, p)
        digits.append(b)
    return DigitExpansion(p, tuple(digits))


@dataclass(frozen=True)
class KDecomposition:
    """k - floor(k/p) written as p**beta * d * m_prime.

    beta is the exact p-valuation of the difference and d its gcd with
    p - 1, so m_prime is determined. m is carried along so callers can ask
    whether m_prime divides it; when it does not, no splitting with these
    parameters can exist, which is reported rather than raised.
    """

    k: int
    p: int
    m: int
    beta: int
    d: int
    m_prime: int

    @property
    def residual(self) -> int:
        return self.k - self.k // self.p

    @property
    def m_prime_divides_m(self) -> bool:
        return self.m % self.m_prime == 0


def decompose_k(k: int, p: int, m: int) -> KDecomposition:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1 or m % p == 0:
        raise ValueError(f"m must be positive and coprime to {p}, got {m}")
    t = k - k // p
    beta = p_adic_valuation(t, p)
    d = gcd(t, p - 1)
    return KDecomposition(k, p, m, beta, d, t // (p**beta * d))


def digit_pattern_check(dec: KDecomposition) -> bool:
    """Digits b_0..b_beta of k in base p all agree, and the next digit
    differs whenever it exists. Holds for every (k, p); a False is a bug."""
    digits = base_p_digits(dec.k, dec.p).digits
    beta = dec.beta
    if any(b != digits[0] for b in digits[1 : beta + 1]):
        return False
    if len(digits) > beta + 1 and digits[beta + 1] == digits[beta]:
        return False
    return True


@dataclass(frozen=True)
class StratificationProfile:
    """Element and splitter counts by exact p-valuation of element order."""

    p: int
    alpha: int
    g_counts: tuple[int, ...]
    s_counts: tuple[int, ...]


def stratify(cert: SplittingCertificate, p: int) -> StratificationProfile:
    """Count group elements and splitters stratum by stratum, by enumeration."""
    G = cert.group
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if G.order % p != 0:
        raise ValueError(f"{p} does not divide the group order {G.order}")
    alpha = p_adic_valuation(G.order, p)
    g_counts = [0] * (alpha + 1)
    for g in G.elements():
        g_counts[p_adic_valuation(G.element_order(g), p)] += 1
    s_counts = [0] * (alpha + 1)
    for s in cert.splitters:
        s_counts[p_adic_valuation(G.element_order(s), p)] += 1
    return StratificationProfile(p, alpha, tuple(g_counts), tuple(s_counts))


def check_counting_identity(cert: SplittingCertificate, p: int, i: int) -> bool:
    """Stratum-i count of nonzero elements, tallied through the splitting.

    A product m*s lands in stratum i >= 1 exactly when s sits in some
    stratum j >= i and the multiplier residue has p-valuation j - i, so

        sum over j >= i of #{m : val_p(m) = j - i} * |S_j|  ==  |G_i|

    must hold for every valid certificate. The left side counts multiplier
    residues directly, so explicit multiplier sets work as well as {1..k}.
    """
    n = cert.group.modulus
    profile = stratify(cert, p)
    if not 1 <= i <= profile.alpha:
        raise ValueError(f"stratum index {i} outside 1..{profile.alpha}")
    residues = cert.multipliers.residues(n)
    lhs = 0
    for j in range(i, profile.alpha + 1):
        count = sum(1 for r in residues if p_adic_valuation(r, p) == j - i)
        lhs += count * profile.s_counts[j]
    return lhs == profile.g_counts[i]


@dataclass(frozen=True)
class AbcdeProfile:
    """Cardinalities of the five interval subsets attached to (k, p, primes).

    prime_data rows are (q, alpha_q, beta_q): q a prime above p, alpha_q its
    exponent in the coprime part of the group order, beta_q its exponent in
    m_prime (0 when q does not divide m_prime). Counting is by direct
    enumeration of the intervals. The two identities and the closed form
    are guaranteed only when hypothesis_met, i.e. when k - floor(k/p)
    factors exactly as p**beta * d * prod(q**beta_q).
    """

    k: int
    p: int
    prime_data: tuple[tuple[int, int, int], ...]
    beta: int
    d: int
    card_a: int
    card_b: int
    card_c: int
    card_d: int
    card_e: int
    closed_form_d: int
    hypothesis_met: bool

    @property
    def identity_ab_c(self) -> bool:
        return self.card_a == self.card_b + self.card_c

    @property
    def identity_d_c(self) -> bool:
        return self.card_d == self.card_c

    @property
    def closed_form_matches(self) -> bool:
        return self.card_d == self.closed_form_d


def _coprime_count(limit: int, primes: list[int]) -> int:
    return sum(1 for x in range(1, limit + 1) if all(x % q for q in primes))


def abcde_profile(
    k: int, p: int, prime_data: tuple[tuple[int, int, int], ...] = ()
) -> AbcdeProfile:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    data = tuple((int(q), int(a), int(b)) for q, a, b in prime_data)
    previous = p
    for q, a, b in data:
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
        if q <= previous:
            raise ValueError("primes must be strictly increasing and exceed p")
        if not 0 <= b <= a or a < 1:
            raise ValueError(f"need 1 <= alpha and 0 <= beta <= alpha for prime {q}")
        previous = q
    t = k - k // p
    beta = p_adic_valuation(t, p)
    d = gcd(t, p - 1)
    m_prime_primes = [(q, b) for q, _, b in data if b >= 1]
    qs = [q for q, _ in m_prime_primes]
    card_a = _coprime_count(k, qs)
    card_b = _coprime_count(k // p, qs)
    card_c = _coprime_count(t, qs)
    card_d = _coprime_count(k, [p] + qs)
    card_e = _coprime_count(k, [p] + [q for q, _, _ in data])
    closed = p**beta * d * prod(q ** (b - 1) * (q - 1) for q, b in m_prime_primes)
    hypothesis = t == p**beta * d * prod(q**b for q, b in m_prime_primes)
    return AbcdeProfile(
        k, p, data, beta, d, card_a, card_b, card_c, card_d, card_e, closed, hypothesis
    )


def unit_coset_intersection_size(n: int, subgroup_order: int) -> int:
    """|(s + H) ∩ units(Z_n)| for any unit s, H the subgroup of order h | n.

    Exact by CRT: per prime q with q**b exactly dividing h, the coset
    contributes a factor q**b when b < val_q(n) (no member can be divisible
    by q) and q**(b-1) * (q-1) when b = val_q(n) (members run over all
    residues mod q**b).
    """
    if n < 1 or subgroup_order < 1 or n % subgroup_order != 0:
        raise ValueError(f"subgroup order {subgroup_order} must divide {n}")
    size = 1
    for q, b in factorize(subgroup_order):
        if b < p_adic_valuation(n, q):
            size *= q**b
        else:
            size *= q ** (b - 1) * (q - 1)
    return size


@dataclass(frozen=True)
class TwReport:
    """Packing of scaled unit-splitter cosets inside the unit group.

    For each unit splitter s_i, w_i is (s_i + H) ∩ units with H the unique
    subgroup of order p**beta * m_prime, and tw_i scales w_i by every
    factor in [1, d]. For a genuine certificate the tw_i are pairwise
    disjoint unit subsets and the chain |TW_i| = |D| = |E| with
    r * |E| = phi(N) is forced to hold with equality throughout.
    """

    order: int
    p: int
    alpha: int
    m: int
    k: int
    decomposition: KDecomposition
    hypothesis_ok: bool
    subgroup_order: int
    unit_splitters: tuple[int, ...]
    w_sizes: tuple[int, ...]
    w_size_formula: int
    tw_sizes: tuple[int, ...]
    pairwise_disjoint: bool
    within_units: bool
    card_d: int
    card_e: int
    unit_count: int

    @property
    def r(self) -> int:
        return len(self.unit_splitters)

    @property
    def scaling_consistent(self) -> bool:
        return all(tw == self.decomposition.d * w for tw, w in zip(self.tw_sizes, self.w_sizes))

    @property
    def formula_consistent(self) -> bool:
        return all(w == self.w_size_formula for w in self.w_sizes)

    @property
    def equality_chain(self) -> bool:
        return (
            all(tw == self.card_d for tw in self.tw_sizes)
            and self.card_d == self.card_e
            and self.r * self.card_e == self.unit_count
        )

    @property
    def passed(self) -> bool:
        return (
            self.hypothesis_ok
            and self.pairwise_disjoint
            and self.within_units
            and self.scaling_consistent
            and self.formula_consistent
            and self.equality_chain
        )


def tw_disjointness_check(cert: SplittingCertificate) -> TwReport:
    """Run the coset-packing check on a purely singular interval certificate.

    Requires a cyclic group of order coprime to 6 and multipliers {1..k};
    anything else is rejected. p is the smallest prime divisor of the
    order. When m_prime fails to divide m or beta reaches alpha the
    hypothesis cannot be met and the report says so instead of raising.
    """
    G = cert.group
    n = G.modulus
    if gcd(n, 6) != 1:
        raise ValueError(f"group order {n} is not coprime to 6")
    if cert.classification.tag != PURELY_SINGULAR:
        raise ValueError("certificate is not purely singular")
    if cert.multipliers.kind != INTERVAL:
        raise ValueError("multiplier set must be an interval {1..k}")
    k = len(cert.multipliers)
    p, alpha = G.order_factorization[0]
    m = n // p**alpha
    dec = decompose_k(k, p, m)
    hypothesis_ok = dec.m_prime_divides_m and dec.beta <= alpha - 1

    units = {u[0] for u in G.units()}
    unit_splitters = tuple(s[0] for s in cert.splitters if s[0] in units)
    card_e = sum(1 for x in range(1, k + 1) if gcd(x, n) == 1)
    if not hypothesis_ok:
        return TwReport(
            n, p, alpha, m, k, dec, False, 0, unit_splitters,
            (), 0, (), False, False, 0, card_e, len(units),
        )

    subgroup_order = p**dec.beta * dec.m_prime
    subgroup = sorted(e[0] for e in G.unique_subgroup_of_order(subgroup_order))
    w_sets = [
        frozenset(v for x in subgroup if (v := (s + x) % n) in units)
        for s in unit_splitters
    ]
    scales = range(1, dec.d + 1)
    tw_sets = [frozenset(t * w % n for t in scales for w in ws) for ws in w_sets]

    pairwise = all(
        not (tw_sets[i] & tw_sets[j])
        for i in range(len(tw_sets))
        for j in range(i + 1, len(tw_sets))
    )
    within = all(tw <= units for tw in tw_sets)
    m_prime_qs = [q for q, _ in factorize(dec.m_prime)]
    card_d = sum(
        1 for x in range(1, k + 1) if x % p and all(x % q for q in m_prime_qs)
    )
    return TwReport(
        n, p, alpha, m, k, dec, True, subgroup_order, unit_splitters,
        tuple(len(w) for w in w_sets),
        unit_coset_intersection_size(n, subgroup_order),
        tuple(len(tw) for tw in tw_sets),
        pairwise, within, card_d, card_e, len(units),
    )
