"""Exact arithmetic for finite abelian groups given as products of cyclic factors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Iterator

Element = tuple[int, ...]
PrimePower = tuple[int, int]

# Deterministic Miller-Rabin witness set; exact for every n below 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_LIMIT = 10**6


@lru_cache(maxsize=1 << 16)
def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin over a fixed witness set)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Find a nontrivial factor of an odd composite n; deterministic sweep."""
    for c in range(1, 100):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"cycle search failed to split {n}")


def factorize(n: int) -> tuple[PrimePower, ...]:
    """Prime factorization of n >= 1 as ((prime, exponent), ...), primes ascending.

    Trial division covers factors up to 10**6; any larger cofactor is split
    recursively with the rho routine plus the deterministic primality test,
    so results are reproducible. factorize(1) is the empty product.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}: expected a positive integer")
    counts: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    f, stride = 7, 4
    while f * f <= n and f <= _TRIAL_LIMIT:
        while n % f == 0:
            counts[f] = counts.get(f, 0) + 1
            n //= f
        f += stride
        stride = 6 - stride
    if n > 1:
        if f * f > n:
            counts[n] = counts.get(n, 0) + 1
        else:
            stack = [n]
            while stack:
                m = stack.pop()
                if is_prime(m):
                    counts[m] = counts.get(m, 0) + 1
                else:
                    d = _brent_rho(m)
                    stack += [d, m // d]
    return tuple(sorted(counts.items()))


def unfactor(pairs: Iterable[PrimePower]) -> int:
    """Multiply a factorization back together."""
    return math.prod(p**e for p, e in pairs)


def p_adic_valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n, for n >= 1 and p prime."""
    if n < 1:
        raise ValueError(f"valuation needs a positive integer, got {n}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct product Z_{d_1} x ... x Z_{d_r}, written additively.

    Elements are tuples of reduced coordinates, one per factor, so they hash
    and compare canonically. A single factor (N,) is the cyclic form Z_N;
    subgroup, unit, and splitter-search operations require that form.
    """

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        factors = tuple(int(d) for d in self.factors)
        if not factors or any(d < 1 for d in factors):
            raise ValueError(f"group factors must be positive integers, got {self.factors!r}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        return cls((n,))

    def __str__(self) -> str:
        return "x".join(f"Z{d}" for d in self.factors)

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def order_factorization(self) -> tuple[PrimePower, ...]:
        return factorize(self.order)

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) == 1

    @property
    def modulus(self) -> int:
        if not self.is_cyclic:
            raise ValueError(f"{self} is not in cyclic form")
        return self.factors[0]

    def identity(self) -> Element:
        return (0,) * len(self.factors)

    def element(self, coords: Iterable[int]) -> Element:
        """Canonical element: coordinates reduced modulo their factors."""
        coords = tuple(int(c) for c in coords)
        if len(coords) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        return tuple(c % d for c, d in zip(coords, self.factors))

    def elements(self) -> Iterator[Element]:
        """All elements, in lexicographic coordinate order."""
        return product(*(range(d) for d in self.factors))

    def add(self, g: Element, h: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(g, h, self.factors))

    def scalar_mul(self, m: int, g: Element) -> Element:
        """m*g coordinate-wise; negative m acts through the inverse."""
        return tuple(m * c % d for c, d in zip(g, self.factors))

    def element_order(self, g: Element) -> int:
        """Least t >= 1 with t*g = 0: lcm over coordinates of d / gcd(c, d)."""
        return math.lcm(*(d // math.gcd(c, d) for c, d in zip(g, self.factors)))

    def unique_subgroup_of_order(self, d: int) -> frozenset[Element]:
        """The unique subgroup of order d of a cyclic group; needs d | N."""
        n = self.modulus
        if d < 1 or n % d != 0:
            raise ValueError(f"no subgroup of order {d} in Z{n}")
        step = n // d
        return frozenset((step * j,) for j in range(d))

    def units(self) -> frozenset[Element]:
        """Residues in [1, N) coprime to N, for the cyclic form."""
        n = self.modulus
        return frozenset((r,) for r in range(1, n) if math.gcd(r, n) == 1)
