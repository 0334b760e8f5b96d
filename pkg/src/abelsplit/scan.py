"""Candidate-order enumeration and the desk-scale splitting scan.

For M = {1..k} a purely singular splitting can only live in a group whose
order is k-smooth: every prime divisor p of |G| must divide some m <= k,
which for an interval just means p <= k. Candidate orders are therefore
N = n*k + 1 with all prime factors <= k. The scan searches every candidate
and expects splittings exactly at the trivial orders k+1 and 2k+1; a
splitting found anywhere else is recorded as a violation together with a
re-verified certificate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Callable

from .groups import FiniteAbelianGroup, PrimePower, factorize
from .search import EXHAUSTED, FOUND, SearchConfig, SearchOutcome, search_splitter
from .splitting import MultiplierSet, SplittingCertificate, make_certificate

TRIVIAL_EXPECTED = "trivial_expected"
CONSISTENT = "conjecture_consistent"
VIOLATION = "CONJECTURE_VIOLATION"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CandidateOrder:
    """An order N = n*k + 1 whose prime divisors all lie at or below k."""

    k: int
    n: int
    order: int
    smoothness_witness: tuple[PrimePower, ...]


def purely_singular_candidates(k: int, n_max: int) -> list[CandidateOrder]:
    """All candidate orders N = n*k + 1 with 1 <= n <= n_max, ascending."""
    if k < 1 or n_max < 1:
        raise ValueError("k and n_max must be >= 1")
    out = []
    for n in range(1, n_max + 1):
        order = n * k + 1
        fac = factorize(order)
        if all(p <= k for p, _ in fac):
            out.append(CandidateOrder(k, n, order, fac))
    return out


@dataclass(frozen=True)
class ScanRecord:
    candidate: CandidateOrder
    outcome: SearchOutcome
    verdict: str
    certificate: SplittingCertificate | None = None


def _scan_one(task: tuple[int, int, int, int, float | None]) -> ScanRecord:
    k, n, order, node_limit, time_limit = task
    candidate = CandidateOrder(k, n, order, factorize(order))
    group = FiniteAbelianGroup.cyclic(order)
    multipliers = MultiplierSet.interval(k)
    config = SearchConfig(node_limit=node_limit, time_limit_s=time_limit)
    outcome = search_splitter(group, multipliers, config)
    certificate = None
    if outcome.result == FOUND:
        certificate = make_certificate(group, multipliers, [(s,) for s in outcome.splitters])
        verdict = TRIVIAL_EXPECTED if order in (1, k + 1, 2 * k + 1) else VIOLATION
    elif outcome.result == EXHAUSTED:
        if order in (k + 1, 2 * k + 1):
            # A trivial splitting always exists at these orders; reaching this
            # line means the search itself is unsound, so fail loudly.
            raise RuntimeError(f"no splitting found at trivial order {order} for k={k}")
        verdict = CONSISTENT
    else:
        verdict = INCONCLUSIVE
    return ScanRecord(candidate, outcome, verdict, certificate)


@dataclass(frozen=True)
class ScanReport:
    """Scan results plus the configuration that produced them.

    records are sorted by (k, N). n_max of None means the per-k default
    bound of 2k, which already over-covers the range where purely singular
    splittings can exist. wall_clock_s is diagnostic and excluded from the
    canonical serialized form.
    """

    k_min: int
    k_max: int
    n_max: int | None
    node_limit: int
    time_limit_s: float | None
    records: tuple[ScanRecord, ...]
    wall_clock_s: float = 0.0

    @property
    def totals(self) -> dict[str, int]:
        counts = {TRIVIAL_EXPECTED: 0, CONSISTENT: 0, VIOLATION: 0, INCONCLUSIVE: 0}
        for record in self.records:
            counts[record.verdict] += 1
        counts["records"] = len(self.records)
        counts["found"] = sum(1 for r in self.records if r.outcome.result == FOUND)
        return counts

    @property
    def overall(self) -> str:
        totals = self.totals
        if totals[VIOLATION]:
            return "violation"
        if totals[INCONCLUSIVE]:
            return "inconclusive"
        return "consistent"


def scan(
    k_min: int,
    k_max: int,
    n_max: int | None = None,
    config: SearchConfig = SearchConfig(),
    jobs: int = 1,
    resume: ScanReport | None = None,
    checkpoint: Callable[[ScanReport], None] | None = None,
) -> ScanReport:
    """Search every candidate order for every k in [k_min, k_max].

    Records are independent tasks; with jobs > 1 they run in a process pool
    and are merged in (k, N) order, so parallel and serial runs produce the
    same report. resume takes a previously written (possibly partial)
    report with identical parameters and skips its completed records.
    checkpoint, when given, receives a partial report after every record.
    """
    if k_min < 1 or k_min > k_max:
        raise ValueError(f"bad k range [{k_min}, {k_max}]")
    started = time.monotonic()
    tasks = []
    for k in range(k_min, k_max + 1):
        bound = n_max if n_max is not None else 2 * k
        for cand in purely_singular_candidates(k, bound):
            tasks.append((cand.k, cand.n, cand.order, config.node_limit, config.time_limit_s))

    done: dict[tuple[int, int], ScanRecord] = {}
    if resume is not None:
        mine = (k_min, k_max, n_max, config.node_limit, config.time_limit_s)
        theirs = (resume.k_min, resume.k_max, resume.n_max, resume.node_limit, resume.time_limit_s)
        if mine != theirs:
            raise ValueError(f"resume parameters {theirs} do not match scan parameters {mine}")
        done = {(r.candidate.k, r.candidate.order): r for r in resume.records}
    pending = [t for t in tasks if (t[0], t[2]) not in done]

    def build_report() -> ScanReport:
        records = tuple(sorted(done.values(), key=lambda r: (r.candidate.k, r.candidate.order)))
        return ScanReport(
            k_min, k_max, n_max, config.node_limit, config.time_limit_s,
            records, time.monotonic() - started,
        )

    def take(record: ScanRecord) -> None:
        done[(record.candidate.k, record.candidate.order)] = record
        if checkpoint is not None:
            checkpoint(build_report())

    if jobs > 1 and len(pending) > 1:
        with Pool(processes=jobs) as pool:
            for record in pool.imap_unordered(_scan_one, pending):
                take(record)
    else:
        for task in pending:
            take(_scan_one(task))
    return build_report()


def check_k_le_n_minus_2(report: ScanReport) -> bool:
    """No found record may have n >= 3 together with k > n - 2."""
    return not any(
        r.outcome.result == FOUND and r.candidate.n >= 3 and r.candidate.k > r.candidate.n - 2
        for r in report.records
    )


def check_k_ge_n(report: ScanReport) -> bool:
    """Every found record must have k >= n."""
    return all(
        r.candidate.k >= r.candidate.n for r in report.records if r.outcome.result == FOUND
    )
