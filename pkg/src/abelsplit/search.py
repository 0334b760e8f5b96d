"""Exact-cover search for splitter sets over cyclic groups.

Existence of a splitter set for (Z_N, M) is an exact cover problem: the
universe is the nonzero residues 1..N-1 and the rows are the product orbits
{m*s mod N : m in M} of candidate splitters s. Orbits are bitmasks over the
universe, the search always branches on the smallest uncovered residue, and
candidates are tried in ascending splitter order, so every outcome is
deterministic and a found solution is the lexicographically least one under
that branching. An exhausted tree is a proof that no splitter set exists.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .groups import FiniteAbelianGroup
from .splitting import MultiplierSet, SplittingCertificate, make_certificate

FOUND = "found"
EXHAUSTED = "exhausted_no_solution"
RESOURCE_LIMIT = "resource_limit"

_TIME_STRIDE = 4096  # nodes between monotonic-clock reads


class BudgetExceeded(RuntimeError):
    """Raised by enumeration when the node or time budget runs out."""


@dataclass(frozen=True)
class SearchConfig:
    node_limit: int = 100_000_000
    time_limit_s: float | None = 60.0


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    max_depth: int
    elapsed_s: float


@dataclass(frozen=True)
class SearchOutcome:
    result: str  # found | exhausted_no_solution | resource_limit
    splitters: tuple[int, ...] | None
    stats: SearchStats

    @property
    def found(self) -> bool:
        return self.result == FOUND


def orbit_mask(residues: Sequence[int], s: int, n: int) -> int | None:
    """Bitmask of {m*s mod n}; None when the orbit hits 0 or repeats a value.

    Splitters with such dirty orbits can never appear in a valid splitting,
    so they are dropped at candidate generation.
    """
    mask = 0
    for m in residues:
        x = m * s % n
        if x == 0:
            return None
        bit = 1 << x
        if mask & bit:
            return None
        mask |= bit
    return mask


def _candidate_rows(n: int, residues: Sequence[int]) -> list[tuple[int, int]]:
    """Clean orbit rows (s, mask), ascending s, deduplicated by orbit mask.

    Distinct splitters with identical orbits are interchangeable as cover
    rows; the least one represents the class.
    """
    seen: set[int] = set()
    rows = []
    for s in range(1, n):
        mask = orbit_mask(residues, s, n)
        if mask is not None and mask not in seen:
            seen.add(mask)
            rows.append((s, mask))
    return rows


def search_splitter(
    G: FiniteAbelianGroup, M: MultiplierSet, config: SearchConfig = SearchConfig()
) -> SearchOutcome:
    """Find a splitter set S with M*S = Z_N minus 0, or prove there is none.

    Requires the cyclic form and |M| dividing N-1. FOUND outcomes carry S as
    ascending residues; EXHAUSTED means the tree was fully explored; budget
    breaches end the search with RESOURCE_LIMIT instead.
    """
    n = G.modulus
    if n > 1 and (n - 1) % len(M) != 0:
        raise ValueError(f"|M| = {len(M)} does not divide |G| - 1 = {n - 1}")
    start = time.monotonic()
    node_limit = config.node_limit
    time_limit = config.time_limit_s

    rows = _candidate_rows(n, M.residues(n))
    cands: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for s, mask in rows:
        m = mask
        while m:
            low = m & -m
            cands[low.bit_length() - 1].append((s, mask))
            m ^= low

    full = (1 << n) - 2
    covered = 0
    nodes = 0
    max_depth = 0
    path: list[tuple[int, int]] = []

    def stats() -> SearchStats:
        return SearchStats(nodes, max_depth, time.monotonic() - start)

    if covered == full:  # Z_1: the empty splitter set
        return SearchOutcome(FOUND, (), stats())

    missing = full
    frames = [[cands[(missing & -missing).bit_length() - 1], 0]]
    while frames:
        frame = frames[-1]
        elist, idx = frame
        advanced = False
        while idx < len(elist):
            s, mask = elist[idx]
            idx += 1
            if covered & mask:
                continue
            frame[1] = idx
            covered |= mask
            path.append((s, mask))
            nodes += 1
            if len(path) > max_depth:
                max_depth = len(path)
            if nodes >= node_limit:
                return SearchOutcome(RESOURCE_LIMIT, None, stats())
            if time_limit is not None and nodes % _TIME_STRIDE == 0:
                if time.monotonic() - start > time_limit:
                    return SearchOutcome(RESOURCE_LIMIT, None, stats())
            if covered == full:
                found = tuple(sorted(s2 for s2, _ in path))
                return SearchOutcome(FOUND, found, stats())
            missing = ~covered & full
            frames.append([cands[(missing & -missing).bit_length() - 1], 0])
            advanced = True
            break
        if not advanced:
            frames.pop()
            if path:
                _, mask = path.pop()
                covered ^= mask
    return SearchOutcome(EXHAUSTED, None, stats())


class _Budget:
    __slots__ = ("remaining", "deadline")

    def __init__(self, config: SearchConfig):
        self.remaining = config.node_limit
        self.deadline = (
            None if config.time_limit_s is None else time.monotonic() + config.time_limit_s
        )

    def charge(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise BudgetExceeded("node budget exhausted")
        if (
            self.deadline is not None
            and self.remaining % 1024 == 0
            and time.monotonic() > self.deadline
        ):
            raise BudgetExceeded("time budget exhausted")


def _cover_solutions(
    n: int, rows: list[tuple[int, int]], budget: _Budget
) -> Iterator[tuple[int, ...]]:
    """Yield every exact cover of 1..n-1 by the given (label, mask) rows.

    No fingerprint dedup here: rows with equal masks but different labels
    are distinct covers, which is what full splitting enumeration needs.
    """
    cands: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for label, mask in rows:
        m = mask
        while m:
            low = m & -m
            cands[low.bit_length() - 1].append((label, mask))
            m ^= low
    full = (1 << n) - 2
    chosen: list[int] = []

    def extend(covered: int) -> Iterator[tuple[int, ...]]:
        if covered == full:
            yield tuple(sorted(chosen))
            return
        budget.charge()
        missing = ~covered & full
        for label, mask in cands[(missing & -missing).bit_length() - 1]:
            if not covered & mask:
                chosen.append(label)
                yield from extend(covered | mask)
                chosen.pop()

    yield from extend(0)


def enumerate_all_splittings(
    n: int, size_of_m: int, config: SearchConfig = SearchConfig()
) -> list[SplittingCertificate]:
    """All pairs (M, S) with |M| = size_of_m splitting Z_n, sorted by (M, S).

    M ranges over subsets of the canonical residues 1..n-1. Subsets are
    enumerated on whichever side (multiplier or splitter) has the smaller
    binomial count and the other side is solved as exact cover, which keeps
    orders like 27 with |M| = 13 tractable. Raises BudgetExceeded when the
    node budget runs out; every returned certificate is re-verified.
    """
    if n < 2:
        raise ValueError(f"order must be >= 2, got {n}")
    if size_of_m < 1 or (n - 1) % size_of_m != 0:
        raise ValueError(f"|M| = {size_of_m} must divide {n - 1}")
    group = FiniteAbelianGroup.cyclic(n)
    n_splitters = (n - 1) // size_of_m
    budget = _Budget(config)
    out: list[SplittingCertificate] = []
    if comb(n - 1, size_of_m) <= comb(n - 1, n_splitters):
        for m_vals in combinations(range(1, n), size_of_m):
            budget.charge()
            mult = MultiplierSet.explicit(m_vals)
            rows = []
            for s in range(1, n):
                mask = orbit_mask(m_vals, s, n)
                if mask is not None:
                    rows.append((s, mask))
            for labels in _cover_solutions(n, rows, budget):
                out.append(make_certificate(group, mult, [(s,) for s in labels]))
    else:
        for s_vals in combinations(range(1, n), n_splitters):
            budget.charge()
            rows = []
            for m in range(1, n):
                mask = orbit_mask(s_vals, m, n)
                if mask is not None:
                    rows.append((m, mask))
            for labels in _cover_solutions(n, rows, budget):
                out.append(
                    make_certificate(
                        group, MultiplierSet.explicit(labels), [(s,) for s in s_vals]
                    )
                )
    out.sort(key=lambda c: (c.multipliers.values, c.splitters))
    return out
