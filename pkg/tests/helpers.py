"""Independent oracles shared across test modules.

These deliberately avoid the library's bitset search and closed forms:
the splitting oracle works on plain frozensets with no deduplication or
statistics, and the coprime counter uses inclusion-exclusion where the
library enumerates. Agreement between the two routes is the point.
"""

from itertools import combinations
from math import prod


def naive_splitting_exists(n: int, k: int) -> bool:
    """Brute-force existence of S with {1..k} * S = Z_n minus 0.

    Recursive set cover over candidate splitters: for the smallest missing
    residue, try every candidate orbit containing it, splitters ascending.
    """
    universe = frozenset(range(1, n))
    orbits = {}
    for s in range(1, n):
        products = [m * s % n for m in range(1, k + 1)]
        pts = frozenset(products)
        if 0 in pts or len(pts) != k:
            continue
        orbits[s] = pts

    def extend(covered: frozenset) -> bool:
        if covered == universe:
            return True
        target = min(universe - covered)
        for s in sorted(orbits):
            pts = orbits[s]
            if target in pts and not pts & covered:
                if extend(covered | pts):
                    return True
        return False

    return extend(frozenset())


def coprime_count_ie(limit: int, primes: list[int]) -> int:
    """#{x in [1, limit] : gcd(x, prod(primes)) = 1} by inclusion-exclusion."""
    total = 0
    for size in range(len(primes) + 1):
        for subset in combinations(primes, size):
            total += (-1) ** size * (limit // prod(subset))
    return total


def smallest_prime_factor_sieve(limit: int) -> list[int]:
    spf = list(range(limit + 1))
    i = 2
    while i * i <= limit:
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    return spf


def factor_with_sieve(n: int, spf: list[int]) -> list[tuple[int, int]]:
    out = []
    while n > 1:
        q = spf[n]
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        out.append((q, e))
    return out
