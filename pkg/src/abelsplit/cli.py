"""Command-line front end: verify, search, scan, tile, check.

Exit codes are uniform across subcommands: 0 for an affirmative result,
1 for a well-formed negative (invalid certificate, proven nonexistence,
violation, failed check), 2 for usage or input errors, and 3 when a node
or time budget ran out before an answer was reached. Every command ends
with one machine-parseable key=value summary line that is stable across
runs. Budgets come from flags or the ABELSPLIT_NODE_LIMIT and
ABELSPLIT_TIME_LIMIT environment variables.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from . import certio, counting, search as searchlib, splitting, tiling
from .groups import FiniteAbelianGroup, is_prime
from .scan import scan as run_scan
from .splitting import INTERVAL, MultiplierSet

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _fail_usage(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_USAGE)


def _budget_options(f):
    f = click.option(
        "--node-limit", type=int, default=None, envvar="ABELSPLIT_NODE_LIMIT",
        help="search node budget (default 10^8)",
    )(f)
    f = click.option(
        "--time-limit", "time_limit_s", type=float, default=None,
        envvar="ABELSPLIT_TIME_LIMIT",
        help="per-instance time budget in seconds (default 60)",
    )(f)
    return f


def _config(node_limit, time_limit_s) -> searchlib.SearchConfig:
    base = searchlib.SearchConfig()
    return searchlib.SearchConfig(
        node_limit=node_limit if node_limit is not None else base.node_limit,
        time_limit_s=time_limit_s if time_limit_s is not None else base.time_limit_s,
    )


def _load_certificate(path):
    try:
        return certio.certificate_from_doc(certio.read_document(path))
    except OSError as exc:
        _fail_usage(f"cannot read {path}: {exc}")
    except certio.DocumentError as exc:
        _fail_usage(f"bad certificate document: {exc}")


def _emit(doc: dict, out: str | None) -> None:
    text = certio.dumps_document(doc)
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


@click.group()
def main() -> None:
    """Splittings of finite abelian groups and semi-cross lattice tilings."""


@main.command()
@click.argument("certificate", type=click.Path(exists=True, dir_okay=False))
def verify(certificate: str) -> None:
    """Verify a splitting certificate document."""
    cert = _load_certificate(certificate)
    report = splitting.verify_splitting(cert.group, cert.multipliers, cert.splitters)
    if report.is_valid:
        click.echo(
            f"verdict=valid group={cert.group} multipliers={len(cert.multipliers)} "
            f"splitters={len(cert.splitters)} classification={cert.classification.tag}"
        )
        sys.exit(EXIT_OK)
    click.echo(report.failure.describe())
    click.echo(f"verdict=invalid failure={report.failure.kind}")
    sys.exit(EXIT_NEGATIVE)


@main.command()
@click.option("--order", "-N", "order", type=int, required=True, help="cyclic group order N")
@click.option("--k", type=int, required=True, help="multiplier interval bound: M = {1..k}")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="write the result document here instead of stdout")
@_budget_options
def search(order, k, out, node_limit, time_limit_s) -> None:
    """Search for a splitter set for (Z_N, {1..k})."""
    if order < 1 or k < 1:
        _fail_usage("order and k must be >= 1")
    if order > 1 and (order - 1) % k != 0:
        _fail_usage(f"k={k} does not divide N-1={order - 1}")
    group = FiniteAbelianGroup.cyclic(order)
    multipliers = MultiplierSet.interval(k)
    outcome = searchlib.search_splitter(group, multipliers, _config(node_limit, time_limit_s))
    if outcome.result == searchlib.FOUND:
        cert = splitting.make_certificate(group, multipliers, [(s,) for s in outcome.splitters])
        _emit(certio.certificate_to_doc(cert), out)
        click.echo(
            f"result=found order={order} k={k} splitters={len(outcome.splitters)} "
            f"classification={cert.classification.tag} nodes={outcome.stats.nodes}"
        )
        sys.exit(EXIT_OK)
    if outcome.result == searchlib.EXHAUSTED:
        _emit(certio.attestation_doc(order, multipliers, outcome), out)
        click.echo(f"result=exhausted_no_solution order={order} k={k} nodes={outcome.stats.nodes}")
        sys.exit(EXIT_NEGATIVE)
    _emit(certio.partial_search_doc(order, multipliers, outcome), out)
    click.echo(f"result=resource_limit order={order} k={k} nodes={outcome.stats.nodes}")
    sys.exit(EXIT_RESOURCE)


@main.command()
@click.option("--k-min", type=int, required=True)
@click.option("--k-max", type=int, required=True)
@click.option("--n-max", type=int, default=None,
              help="candidate bound n <= n-max (default: 2k per k)")
@click.option("--jobs", type=int, default=None, help="worker processes (default: all cores)")
@click.option("--out-dir", type=click.Path(file_okay=False), default=".")
@click.option("--resume", is_flag=True, help="continue from the report file in out-dir")
@_budget_options
def scan(k_min, k_max, n_max, jobs, out_dir, resume, node_limit, time_limit_s) -> None:
    """Scan candidate orders for every k in [k-min, k-max]."""
    if k_min < 1 or k_min > k_max:
        _fail_usage(f"bad k range [{k_min}, {k_max}]")
    out_path = Path(out_dir)
    out_path.mkdir(parents=True, exist_ok=True)
    report_path = out_path / f"scan_k{k_min}-{k_max}.json"
    table_path = out_path / f"scan_k{k_min}-{k_max}.csv"
    config = _config(node_limit, time_limit_s)
    resume_report = None
    if resume:
        try:
            resume_report = certio.scan_report_from_doc(certio.read_document(report_path))
        except OSError as exc:
            _fail_usage(f"cannot read {report_path}: {exc}")
        except certio.DocumentError as exc:
            _fail_usage(f"bad resume report: {exc}")

    def checkpoint(partial):
        certio.write_document(report_path, certio.scan_report_to_doc(partial))

    try:
        report = run_scan(
            k_min, k_max, n_max, config=config,
            jobs=jobs if jobs is not None else (os.cpu_count() or 1),
            resume=resume_report, checkpoint=checkpoint,
        )
    except ValueError as exc:
        _fail_usage(str(exc))
    certio.write_document(report_path, certio.scan_report_to_doc(report))
    table_path.write_text(certio.scan_report_table(report))
    totals = report.totals
    click.echo(f"report={report_path}")
    click.echo(f"table={table_path}")
    click.echo(
        f"overall={report.overall} records={totals['records']} found={totals['found']} "
        f"violations={totals['CONJECTURE_VIOLATION']} inconclusive={totals['inconclusive']}"
    )
    sys.exit({"consistent": EXIT_OK, "violation": EXIT_NEGATIVE}.get(report.overall, EXIT_RESOURCE))


def _parse_box(spec: str, dimension: int) -> list[tuple[int, int]]:
    box = []
    for part in spec.split(","):
        lo, _, hi = part.partition(":")
        box.append((int(lo), int(hi)))
    if len(box) != dimension:
        raise ValueError(f"box has {len(box)} axes, certificate needs {dimension}")
    return box


@main.command()
@click.option("--cert", "cert_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--box", "box_spec", type=str, required=True,
              help="inclusive ranges lo:hi per axis, comma separated, e.g. 0:9,0:9")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def tile(cert_path, box_spec, out) -> None:
    """Export the semi-cross lattice tiling induced by a cyclic certificate."""
    cert = _load_certificate(cert_path)
    if not cert.group.is_cyclic:
        _fail_usage("tiling export needs a certificate over a cyclic group")
    if cert.multipliers.kind != INTERVAL:
        _fail_usage("tiling export needs interval multipliers {1..k}")
    report = splitting.verify_splitting(cert.group, cert.multipliers, cert.splitters)
    if not report.is_valid:
        click.echo(report.failure.describe())
        click.echo(f"verdict=invalid failure={report.failure.kind}")
        sys.exit(EXIT_NEGATIVE)
    n = len(cert.splitters)
    k = len(cert.multipliers)
    shape = tiling.semi_cross(n, k)
    hom, lattice = tiling.lattice_from_splitting(cert)
    tiling_cert = tiling.verify_lattice_tiling(shape, hom)
    if not tiling_cert.verdict:
        click.echo("verdict=false")
        sys.exit(EXIT_NEGATIVE)
    try:
        box = _parse_box(box_spec, n)
    except ValueError as exc:
        _fail_usage(f"bad box {box_spec!r}: {exc}")
    translates = tiling.export_translates(lattice, shape, box)
    text = certio.tiling_export_text(shape, lattice, hom, translates)
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)
    cells = 1
    for lo, hi in box:
        cells *= hi - lo + 1
    click.echo(f"verdict=true order={hom.modulus} anchors={len(translates)} cells={cells}")
    sys.exit(EXIT_OK)


def _check_abcde(k, p, primes):
    profile = counting.abcde_profile(k, p, primes)
    inputs = {"k": k, "p": p, "primes": [list(row) for row in primes]}
    checks = [
        {"name": "hypothesis_met", "expected": True,
         "actual": profile.hypothesis_met, "pass": profile.hypothesis_met},
        {"name": "card_a_equals_b_plus_c", "expected": profile.card_b + profile.card_c,
         "actual": profile.card_a, "pass": profile.identity_ab_c},
        {"name": "card_d_equals_c", "expected": profile.card_c,
         "actual": profile.card_d, "pass": profile.identity_d_c},
        {"name": "card_d_closed_form", "expected": profile.closed_form_d,
         "actual": profile.card_d, "pass": profile.closed_form_matches},
    ]
    return inputs, checks


def _check_digits(k, p, k_max, p_max):
    if k_max is not None or p_max is not None:
        k_hi = k_max if k_max is not None else (k or 1)
        p_hi = p_max if p_max is not None else (p or 2)
        failures = 0
        for q in range(2, p_hi + 1):
            if not is_prime(q):
                continue
            for kk in range(1, k_hi + 1):
                if not counting.digit_pattern_check(counting.decompose_k(kk, q, 1)):
                    failures += 1
        inputs = {"k_max": k_hi, "p_max": p_hi}
        checks = [{"name": "digit_pattern_failures", "expected": 0,
                   "actual": failures, "pass": failures == 0}]
        return inputs, checks
    result = counting.digit_pattern_check(counting.decompose_k(k, p, 1))
    inputs = {"k": k, "p": p}
    checks = [{"name": "digit_pattern", "expected": True, "actual": result, "pass": result}]
    return inputs, checks


def _check_strata(cert, p):
    profile = counting.stratify(cert, p)
    checks = []
    for i in range(1, profile.alpha + 1):
        ok = counting.check_counting_identity(cert, p, i)
        checks.append({"name": f"stratum_{i}_identity", "expected": True,
                       "actual": ok, "pass": ok})
    inputs = {
        "group_factors": list(cert.group.factors), "p": p,
        "g_counts": list(profile.g_counts), "s_counts": list(profile.s_counts),
    }
    return inputs, checks


def _check_tw(cert):
    report = counting.tw_disjointness_check(cert)
    inputs = {"group_factors": list(cert.group.factors), "k": report.k, "p": report.p}
    checks = [
        {"name": "hypothesis", "expected": True, "actual": report.hypothesis_ok,
         "pass": report.hypothesis_ok},
        {"name": "pairwise_disjoint", "expected": True, "actual": report.pairwise_disjoint,
         "pass": report.pairwise_disjoint},
        {"name": "within_units", "expected": True, "actual": report.within_units,
         "pass": report.within_units},
        {"name": "w_sizes_match_formula", "expected": report.w_size_formula,
         "actual": list(report.w_sizes), "pass": report.formula_consistent},
        {"name": "equality_chain", "expected": [report.card_d, report.card_e, report.unit_count],
         "actual": [list(report.tw_sizes), report.r], "pass": report.equality_chain},
    ]
    return inputs, checks


def _check_s87(order, config):
    group = FiniteAbelianGroup.cyclic(order)
    fac = group.order_factorization
    if len(fac) != 1 or fac[0][0] == 2:
        _fail_usage(f"order {order} is not an odd prime power")
    sizes = [d for d in range(1, order) if (order - 1) % d == 0]
    checks = []
    for size in sizes:
        certs = searchlib.enumerate_all_splittings(order, size, config)
        holds = sum(1 for c in certs if splitting.s87_property_check(c))
        checks.append({
            "name": f"multiplier_size_{size}",
            "expected": len(certs), "actual": holds, "pass": holds == len(certs),
        })
    inputs = {"order": order, "sizes": sizes}
    return inputs, checks


@main.command()
@click.argument("name", type=click.Choice(["abcde", "digits", "strata", "tw", "s87"]))
@click.option("--k", type=int, default=None)
@click.option("--p", type=int, default=None)
@click.option("--primes", type=str, default="",
              help="q:alpha:beta triples, comma separated (abcde only)")
@click.option("--cert", "cert_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--order", "-N", "order", type=int, default=None)
@click.option("--k-max", type=int, default=None, help="sweep bound for digits")
@click.option("--p-max", type=int, default=None, help="sweep bound for digits")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_budget_options
def check(name, k, p, primes, cert_path, order, k_max, p_max, out, node_limit, time_limit_s):
    """Run a named arithmetic check and write its report."""
    try:
        if name == "abcde":
            if k is None or p is None:
                _fail_usage("check abcde needs --k and --p")
            prime_rows = []
            if primes:
                for part in primes.split(","):
                    q, a, b = part.split(":")
                    prime_rows.append((int(q), int(a), int(b)))
            inputs, checks = _check_abcde(k, p, tuple(prime_rows))
        elif name == "digits":
            if k is None and k_max is None:
                _fail_usage("check digits needs --k/--p or --k-max/--p-max")
            inputs, checks = _check_digits(k, p, k_max, p_max)
        elif name == "strata":
            if cert_path is None or p is None:
                _fail_usage("check strata needs --cert and --p")
            inputs, checks = _check_strata(_load_certificate(cert_path), p)
        elif name == "tw":
            if cert_path is None:
                _fail_usage("check tw needs --cert")
            inputs, checks = _check_tw(_load_certificate(cert_path))
        else:  # s87
            if order is None:
                _fail_usage("check s87 needs --order")
            inputs, checks = _check_s87(order, _config(node_limit, time_limit_s))
    except searchlib.BudgetExceeded as exc:
        click.echo(f"result=resource_limit reason={exc}")
        sys.exit(EXIT_RESOURCE)
    except ValueError as exc:
        _fail_usage(str(exc))
    doc = certio.check_report_doc(name, inputs, checks)
    _emit(doc, out)
    failures = sum(1 for row in checks if not row["pass"])
    click.echo(f"check={name} checks={len(checks)} failures={failures} verdict={doc['verdict']}")
    sys.exit(EXIT_OK if failures == 0 else EXIT_NEGATIVE)


if __name__ == "__main__":
    main()
