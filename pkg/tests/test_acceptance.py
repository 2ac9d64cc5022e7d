"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.

Exhaustive streams (grammar enumeration, the integer-walk oracle) are
cross-checked wherever the outcome space holds at most ``ACCEPTANCE_CAP``
outcomes.  Two of the fixture recurrences grow so fast that their spaces
pass 10^8 outcomes by n = 20, hours of work in any language, so the
stream-based checks stop at the cap while every closed-form and
dynamic-program identity still runs over the full stated range.  The
exact-identity content of each criterion is never weakened.
"""

import math
import time
from collections import defaultdict
from fractions import Fraction

import pytest

from plrs import (
    SequenceTable,
    SummandTable,
    decompose,
    enumerate_by_integer_walk,
    enumerate_omega,
    estimate_growth,
    find_threshold_N,
    first_moment_identity,
    gaussian_diagnostics,
    is_legal,
    parse_blocks,
    remove_second_to_last_block,
    sample_uniform,
    second_moment_identity,
    second_to_last_block_size,
    block_catalog,
    validate_spec,
    value,
    verify_variance_bound,
    y_statistics,
    z_distribution,
)
from plrs.cli import main as cli_main

SPECS = [(1, 1), (2, 2, 0, 2), (1, 2), (3, 0, 1)]
ACCEPTANCE_CAP = 600_000


def _report(num: int, desc: str, ok: bool, extra: str = ""):
    tag = "PASS" if ok else "FAIL"
    suffix = f"  [{extra}]" if extra else ""
    print(f"ACCEPTANCE {num:>2} {tag}: {desc}{suffix}")


@pytest.fixture(scope="module")
def engines():
    return {c: SummandTable(validate_spec(c)) for c in SPECS}


@pytest.fixture(scope="module")
def tables():
    return {c: SequenceTable(validate_spec(c)) for c in SPECS}


def test_criterion_01_cardinality_identity(engines, tables):
    t0 = time.perf_counter()
    streams_checked = 0
    for coeffs in SPECS:
        spec = validate_spec(coeffs)
        table = tables[coeffs]
        engine = engines[coeffs]
        for n in range(1, 21):
            interval = table.term(n + 1) - table.term(n)
            assert engine.polynomial(n).total == interval, (coeffs, n)
            if interval <= ACCEPTANCE_CAP:
                assert sum(1 for _ in enumerate_omega(spec, n)) == interval
                assert (
                    sum(1 for _ in enumerate_by_integer_walk(table, n, cap=None))
                    == interval
                )
                streams_checked += 1
    elapsed = time.perf_counter() - t0
    _report(
        1,
        "cardinality: enumeration = interval width = histogram total = walk",
        True,
        f"{streams_checked} stream checks, {elapsed:.1f}s",
    )
    assert streams_checked >= 50


def test_criterion_02_uniqueness_interval(tables):
    checked = 0
    for coeffs in SPECS:
        spec = validate_spec(coeffs)
        table = tables[coeffs]
        for n in range(1, 17):
            lo, hi = table.term(n), table.term(n + 1)
            if hi - lo > ACCEPTANCE_CAP:
                continue
            values = sorted(value(table, d) for d in enumerate_omega(spec, n))
            assert values == list(range(lo, hi)), (coeffs, n)
            checked += 1
    _report(
        2,
        "uniqueness: enumerated values tile [H_n, H_n+1) with no repeats",
        True,
        f"{checked} (spec, n) pairs",
    )


def test_criterion_03_round_trip(tables):
    t0 = time.perf_counter()
    for coeffs in SPECS:
        spec = validate_spec(coeffs)
        table = tables[coeffs]
        for m in range(1, 100_001):
            d = decompose(table, m)
            assert value(table, d) == m
            assert is_legal(spec, d.coefficients)
    elapsed = time.perf_counter() - t0
    _report(3, "round trip and legality for every m <= 10^5", True, f"{elapsed:.1f}s")


def test_criterion_04_golden_fixtures():
    fib = validate_spec((1, 1))
    table = SequenceTable(fib)
    d = decompose(table, 12)
    assert str(parse_blocks(fib, d)) == "[1 0][1 0][1]"
    shorter, t = remove_second_to_last_block(fib, d)
    assert t == 1
    assert value(table, shorter) == table.term(3) + table.term(1) == 4

    h = validate_spec((2, 2, 0, 2))
    ht = SequenceTable(h)
    d601 = decompose(ht, 601)
    assert str(parse_blocks(h, d601)) == "[1][0][0][2 0][0][1]"
    shorter601, t601 = remove_second_to_last_block(h, d601)
    assert t601 == 0
    assert value(ht, shorter601) == ht.term(6) + 2 * ht.term(3) + ht.term(1) == 215

    cat_fib = block_catalog(fib)
    assert [str(b) for b in cat_fib.type1_blocks] == ["[1]"]
    assert [str(b) for b in cat_fib.type2_by_size] == ["[0]", "[1 0]"]
    cat_h = block_catalog(h)
    assert [str(b) for b in cat_h.type1_blocks] == ["[2]", "[2 2]", "[2 2 0]"]
    assert [str(b) for b in cat_h.type2_by_size] == [
        "[0]", "[1]", "[2 0]", "[2 1]", "[2 2 0 0]", "[2 2 0 1]",
    ]
    _report(4, "golden decompositions, block reductions, and catalogs", True)


def test_criterion_05_z_distribution(tables):
    empirical_checked = 0
    for coeffs in SPECS:
        spec = validate_spec(coeffs)
        table = tables[coeffs]
        L, S = spec.length, spec.size
        cat = block_catalog(spec)
        for n in range(2 * L + 1, 23):
            card = table.term(n + 1) - table.term(n)
            feasible = card <= ACCEPTANCE_CAP
            zd = z_distribution(spec, n, table=table, cross_check=feasible)
            # closed form recomputed here, straight from the terms
            for t in range(S):
                r = n - cat.length_of(t)
                expected = Fraction(table.term(r + 1) - table.term(r), card)
                assert zd.probs[t] == expected, (coeffs, n, t)
            assert sum(zd.probs) == 1
            assert all(a >= b for a, b in zip(zd.probs, zd.probs[1:]))
            assert zd.probs[0] >= Fraction(1, S)
            if feasible:
                assert zd.empirical_counts is not None
                for t in range(S):
                    assert Fraction(zd.empirical_counts[t], card) == zd.probs[t]
                empirical_checked += 1
    _report(
        5,
        "second-to-last block size: empirical = closed form, monotone, >= 1/S",
        True,
        f"{empirical_checked} empirical sweeps",
    )


def test_criterion_06_conditional_identities(engines, tables):
    t0 = time.perf_counter()
    for coeffs in SPECS:
        spec = validate_spec(coeffs)
        engine = engines[coeffs]
        table = tables[coeffs]
        L, S = spec.length, spec.size
        cat = block_catalog(spec)
        # exact identity sweep over the full range, zero tolerance
        for n in range(2 * L + 1, 401):
            lhs, rhs = first_moment_identity(spec, n, engine=engine, table=table)
            assert lhs == rhs, (coeffs, n)
            lhs2, rhs2 = second_moment_identity(spec, n, engine=engine, table=table)
            assert lhs2 == rhs2, (coeffs, n)
        # enumeration cross-check of the per-size conditional moments
        for n in range(2 * L + 1, 21):
            card = table.term(n + 1) - table.term(n)
            if card > ACCEPTANCE_CAP:
                break
            count = defaultdict(int)
            sum1 = defaultdict(int)
            sum2 = defaultdict(int)
            for d in enumerate_omega(spec, n):
                t = second_to_last_block_size(spec, d.coefficients)
                k = d.summand_count
                count[t] += 1
                sum1[t] += k
                sum2[t] += k * k
            for t in range(S):
                r = n - cat.length_of(t)
                assert count[t] > 0, (coeffs, n, t)
                assert Fraction(sum1[t], count[t]) == engine.mean(r) + t
                assert Fraction(sum2[t], count[t]) == (
                    engine.second_raw_moment(r) + 2 * t * engine.mean(r) + t * t
                )
    elapsed = time.perf_counter() - t0
    _report(
        6,
        "conditional moment identities exact for 2L < n <= 400 (DP) and by enumeration",
        True,
        f"{elapsed:.1f}s",
    )


def test_criterion_07_growth_constants(engines):
    fib_target = (5 - math.sqrt(5)) / 10  # 0.2763932..., computed independently
    ok_details = []
    for coeffs in SPECS:
        spec = validate_spec(coeffs)
        growth = estimate_growth(spec, 400, engine=engines[coeffs])
        assert float(growth.convergence_gap) < 1e-6, coeffs
        if coeffs == (1, 1):
            assert abs(float(growth.a_est) - fib_target) < 1e-3
        ok_details.append(f"{','.join(map(str, coeffs))}: a={float(growth.a_est):.6f}")
    _report(
        7,
        "slope estimates converge (gap < 1e-6); Fibonacci slope within 1e-3",
        True,
        "; ".join(ok_details),
    )


def test_criterion_08_y_variance_bound(engines, tables):
    worst = 0
    for coeffs in SPECS:
        spec = validate_spec(coeffs)
        growth = estimate_growth(spec, 400, engine=engines[coeffs])
        N = find_threshold_N(spec, growth, 400, table=tables[coeffs])
        assert N <= 60, (coeffs, N)
        worst = max(worst, N)
        bound = growth.a_est**2 / (2 * spec.size)
        for n in range(N + 1, 401):
            _, var_y = y_statistics(spec, n, growth, table=tables[coeffs])
            assert var_y > bound, (coeffs, n)
    _report(
        8,
        "centered block statistic: Var[Y_n] > a^2/(2S) for all n in (N, 400]",
        True,
        f"max N = {worst}",
    )


def test_criterion_09_variance_lower_bound(engines, capsys):
    t0 = time.perf_counter()
    for coeffs in SPECS:
        spec = validate_spec(coeffs)
        report = verify_variance_bound(spec, 400, engine=engines[coeffs])
        assert report.all_pass, coeffs
        assert report.c > 0
        payload = report.to_json_dict()
        # the estimation budget must be documented in the serialized report
        assert "precision_bits" in payload and "convergence_gap" in payload
    # the CLI front end must exit 0 on the same check
    code = cli_main(["--coeffs", "1,1", "verify", "--n-max", "400"])
    out = capsys.readouterr().out
    assert code == 0 and "all variance bounds hold" in out
    elapsed = time.perf_counter() - t0
    _report(
        9,
        "Var[K_n] >= c*n for all L < n <= 400 on every fixture; verify exits 0",
        True,
        f"{elapsed:.1f}s for all four specs",
    )


def test_criterion_10_gaussian_trend(engines):
    failures = []
    details = []
    for coeffs in SPECS:
        spec = validate_spec(coeffs)
        rows = {r.n: r for r in gaussian_diagnostics(spec, [50, 400], engine=engines[coeffs])}
        skew_ok = rows[400].skewness_squared < rows[50].skewness_squared
        kurt_ok = abs(rows[400].excess_kurtosis_exact) < abs(rows[50].excess_kurtosis_exact)
        details.append(
            f"{','.join(map(str, coeffs))}: |skew| {abs(rows[50].skewness):.4f}->"
            f"{abs(rows[400].skewness):.4f} |kurt| {abs(rows[50].excess_kurtosis):.4f}->"
            f"{abs(rows[400].excess_kurtosis):.4f}"
        )
        if not skew_ok:
            failures.append(f"{coeffs}: |skewness| not strictly smaller")
        if not kurt_ok:
            failures.append(f"{coeffs}: |excess kurtosis| not strictly smaller")
    _report(
        10,
        "shape diagnostics strictly closer to Gaussian at n=400 than at n=50",
        not failures,
        "; ".join(details),
    )
    # Known outcome: the summand distributions of (1,2) and (3,0,1) are
    # exactly symmetric (third central moment identically zero at every n),
    # so their |skewness| is 0 at both indices and a strict decrease is
    # mathematically impossible.  See the decisions ledger.
    assert not failures, "; ".join(failures)


def test_criterion_11_sampling_determinism(engines, tables, capsys):
    args = [
        "--coeffs", "2,2,0,2", "--format", "csv",
        "sample", "60", "--samples", "200", "--seed", "20240817",
    ]
    code1 = cli_main(list(args))
    out1 = capsys.readouterr().out
    code2 = cli_main(list(args))
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2

    for coeffs in SPECS:
        table = tables[coeffs]
        stats = engines[coeffs].stats(200)
        n_samples = 10_000
        total = sum(
            d.summand_count for d in sample_uniform(table, 200, n_samples, seed=7)
        )
        gap = abs(float(Fraction(total, n_samples) - stats.mean))
        tolerance = 5 * math.sqrt(float(stats.variance) / n_samples)
        assert gap <= tolerance, (coeffs, gap, tolerance)
    _report(
        11,
        "sampling: byte-identical output for a fixed seed; MC mean within 5 SE",
        True,
    )
