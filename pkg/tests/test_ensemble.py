import math
from collections import Counter
from fractions import Fraction

import pytest

from plrs import (
    CapExceeded,
    EmptyDistribution,
    IndexTooSmall,
    SequenceTable,
    SizeOutOfRange,
    SummandPolynomial,
    SummandTable,
    conditional_mean_check,
    enumerate_by_integer_walk,
    enumerate_omega,
    parse_blocks,
    sample_uniform,
    stats_from_polynomial,
    summand_polynomial,
    validate_spec,
    value,
    z_distribution,
)


# -- enumeration ---------------------------------------------------------------

def test_enumerate_goldens(fib, h2202):
    assert [d.coefficients for d in enumerate_omega(fib, 3)] == [(1, 0, 0), (1, 0, 1)]
    assert [d.coefficients for d in enumerate_omega(fib, 1)] == [(1,)]
    assert [d.coefficients for d in enumerate_omega(h2202, 1)] == [(1,), (2,)]


def test_walk_goldens(fib, h2202):
    t = SequenceTable(fib)
    assert [d.coefficients for d in enumerate_by_integer_walk(t, 4)] == [
        (1, 0, 0, 0), (1, 0, 0, 1), (1, 0, 1, 0),
    ]
    assert [d.coefficients for d in enumerate_by_integer_walk(t, 2)] == [(1, 0)]
    assert len(list(enumerate_by_integer_walk(SequenceTable(h2202), 2))) == 6


def test_walk_cap(fib):
    with pytest.raises(CapExceeded):
        list(enumerate_by_integer_walk(SequenceTable(fib), 12, cap=10))
    # cap=None disables the guard; |interval| = H_13 - H_12 = 377 - 233
    assert len(list(enumerate_by_integer_walk(SequenceTable(fib), 12, cap=None))) == 144


def test_enumerators_agree(fixture_spec):
    table = SequenceTable(fixture_spec)
    for n in range(1, 10):
        grammar = {d.coefficients for d in enumerate_omega(fixture_spec, n)}
        walk = {d.coefficients for d in enumerate_by_integer_walk(table, n)}
        assert grammar == walk


def test_cardinality_four_ways(fixture_spec):
    table = SequenceTable(fixture_spec)
    engine = SummandTable(fixture_spec)
    for n in range(1, 12):
        expected = table.term(n + 1) - table.term(n)
        assert sum(1 for _ in enumerate_omega(fixture_spec, n)) == expected
        assert sum(1 for _ in enumerate_by_integer_walk(table, n)) == expected
        assert engine.polynomial(n).total == expected


def test_enumeration_is_sorted_by_block_sizes(fixture_spec):
    # The documented order: lexicographic in block-size sequences, with a
    # closing type-1 block (the shorter sequence) first on ties.
    for n in range(1, 9):
        keys = []
        for d in enumerate_omega(fixture_spec, n):
            parse = parse_blocks(fixture_spec, d)
            keys.append(parse.sizes)
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)


# -- the dynamic program -------------------------------------------------------

def test_polynomial_goldens(fib):
    assert summand_polynomial(fib, 3).coeffs == (0, 1, 1)  # x + x^2
    assert summand_polynomial(fib, 1).coeffs == (0, 1)  # x
    assert summand_polynomial(fib, 4).coeffs == (0, 1, 2)  # x + 2x^2


def test_polynomial_matches_enumeration_tally(fixture_spec):
    engine = SummandTable(fixture_spec)
    for n in range(1, 10):
        tally = Counter(d.summand_count for d in enumerate_omega(fixture_spec, n))
        coeffs = engine.polynomial(n).coeffs
        assert {k: c for k, c in enumerate(coeffs) if c} == dict(tally)


def test_polynomial_never_counts_zero_summands(fixture_spec):
    engine = SummandTable(fixture_spec)
    for n in range(1, 25):
        assert engine.polynomial(n).coeffs[0] == 0


def test_binary_system_is_binomial():
    # For coefficients (1,2) the terms are 2^(n-1), decompositions are plain
    # binary digits, so the count with k summands is C(n-1, k-1).
    spec = validate_spec((1, 2))
    engine = SummandTable(spec)
    for n in range(1, 31):
        coeffs = engine.polynomial(n).coeffs
        expected = [0] + [math.comb(n - 1, k - 1) for k in range(1, n + 1)]
        assert list(coeffs) == expected


def test_stats_goldens(fib):
    engine = SummandTable(fib)
    s4 = engine.stats(4)
    assert (s4.mean, s4.variance) == (Fraction(5, 3), Fraction(2, 9))
    s3 = engine.stats(3)
    assert (s3.mean, s3.variance) == (Fraction(3, 2), Fraction(1, 4))


def test_stats_single_term_polynomial():
    s = stats_from_polynomial(SummandPolynomial(1, (0, 0, 0, 7)))
    assert (s.mean, s.variance) == (3, 0)
    assert (s.central3, s.central4) == (0, 0)


def test_stats_empty_distribution():
    with pytest.raises(EmptyDistribution):
        stats_from_polynomial(SummandPolynomial(1, (0, 0)))


def test_stats_invariants(fixture_spec):
    engine = SummandTable(fixture_spec)
    table = SequenceTable(fixture_spec)
    for n in range(1, 31):
        s = engine.stats(n)
        assert s.variance >= 0
        assert s.cardinality == s.histogram.total
        assert s.cardinality == table.term(n + 1) - table.term(n)


def test_polynomial_json_csv_round_trip(fib):
    p = summand_polynomial(fib, 4)
    assert p.to_json() == '{"n": 4, "coeffs": ["0", "1", "2"]}'
    assert p.to_csv() == "k,count\n0,0\n1,1\n2,2\n"
    assert SummandPolynomial.from_json(p.to_json()) == p


def test_polynomial_coefficients_exceed_float_range():
    # Exactness must survive far past 2^53 and even past float overflow.
    spec = validate_spec((3, 0, 1))
    engine = SummandTable(spec)
    total = engine.polynomial(800).total
    table = SequenceTable(spec)
    assert total == table.term(801) - table.term(800)
    assert total > 10**390


# -- distribution of the second-to-last block size ------------------------------

def test_z_distribution_golden(fib):
    zd = z_distribution(fib, 5)
    assert zd.probs == (Fraction(3, 5), Fraction(2, 5))
    assert zd.empirical_counts == (3, 2)
    assert zd.length_distribution == {1: Fraction(3, 5), 2: Fraction(2, 5)}


def test_z_distribution_contracts(fixture_spec):
    L, S = fixture_spec.length, fixture_spec.size
    table = SequenceTable(fixture_spec)
    for n in range(2 * L + 1, 19):
        zd = z_distribution(fixture_spec, n, table=table, cross_check=False)
        assert sum(zd.probs) == 1
        assert all(a >= b for a, b in zip(zd.probs, zd.probs[1:]))
        assert zd.probs[0] >= Fraction(1, S)


def test_z_distribution_bijection_cardinality(fixture_spec):
    # The tally of each block size equals the cardinality of the shorter
    # space reached by deleting the block.
    L = fixture_spec.length
    table = SequenceTable(fixture_spec)
    n = 2 * L + 2
    zd = z_distribution(fixture_spec, n, table=table, cross_check=True)
    assert zd.empirical_counts is not None
    for t, count in enumerate(zd.empirical_counts):
        shorter = n - zd.lengths[t]
        assert count == table.term(shorter + 1) - table.term(shorter)


def test_z_distribution_index_too_small(fixture_spec):
    with pytest.raises(IndexTooSmall):
        z_distribution(fixture_spec, 2 * fixture_spec.length)


def test_z_distribution_formats(fib):
    zd = z_distribution(fib, 5)
    assert zd.to_csv() == "t,length,prob\n0,1,3/5\n1,2,2/5\n"
    assert (
        zd.to_json()
        == '{"n": 5, "probs": ["3/5", "2/5"], "lengths": [1, 2], "cardinality": "5"}'
    )


# -- conditional moments ---------------------------------------------------------

def test_conditional_mean_goldens(fib):
    assert conditional_mean_check(fib, 5, 0) == (Fraction(5, 3), Fraction(5, 3))
    assert conditional_mean_check(fib, 5, 1) == (Fraction(5, 2), Fraction(5, 2))
    assert conditional_mean_check(fib, 5, 0, moment=2) == (Fraction(3), Fraction(3))


@pytest.mark.parametrize(
    "coeffs, ns",
    [
        ((1, 1), (5, 6, 7)),
        ((1, 2), (5, 6, 7)),
        ((2, 2, 0, 2), (9, 10)),
        ((3, 0, 1), (7, 8)),
    ],
)
def test_conditional_moments_exact(coeffs, ns):
    spec = validate_spec(coeffs)
    engine = SummandTable(spec)
    for n in ns:
        for t in range(spec.size):
            for moment in (1, 2):
                lhs, rhs = conditional_mean_check(
                    spec, n, t, moment=moment, engine=engine
                )
                assert lhs == rhs, (coeffs, n, t, moment)


def test_conditional_check_errors(fib):
    with pytest.raises(IndexTooSmall):
        conditional_mean_check(fib, 4, 0)
    with pytest.raises(SizeOutOfRange):
        conditional_mean_check(fib, 5, 9)
    with pytest.raises(ValueError):
        conditional_mean_check(fib, 5, 0, moment=3)
    with pytest.raises(CapExceeded):
        conditional_mean_check(fib, 30, 0, cap=10)


# -- sampling --------------------------------------------------------------------

def test_sampling_deterministic(fib):
    table = SequenceTable(fib)
    a = [d.coefficients for d in sample_uniform(table, 25, 50, seed=123)]
    b = [d.coefficients for d in sample_uniform(table, 25, 50, seed=123)]
    assert a == b
    c = [d.coefficients for d in sample_uniform(table, 25, 50, seed=124)]
    assert a != c


def test_sampling_values_in_range(fixture_spec):
    table = SequenceTable(fixture_spec)
    lo, hi = table.term(12), table.term(13)
    for d in sample_uniform(table, 12, 200, seed=9):
        assert d.m == 12
        v = value(table, d)
        assert lo <= v < hi


def test_sampling_single_draw(fib):
    table = SequenceTable(fib)
    (d,) = sample_uniform(table, 8, 1, seed=3)
    assert d.m == 8


def test_sampling_mean_close_to_exact(fib):
    # 10^4 draws at n=30; the sample mean sits within five standard errors
    # of the exact mean (a fixed seed keeps this deterministic).
    table = SequenceTable(fib)
    engine = SummandTable(fib)
    stats = engine.stats(30)
    n_samples = 10_000
    total = sum(d.summand_count for d in sample_uniform(table, 30, n_samples, seed=7))
    sample_mean = Fraction(total, n_samples)
    tolerance = 5 * math.sqrt(float(stats.variance) / n_samples)
    assert abs(float(sample_mean - stats.mean)) <= tolerance


def test_sampling_argument_validation(fib):
    table = SequenceTable(fib)
    with pytest.raises(ValueError):
        list(sample_uniform(table, 0, 1, seed=1))
    with pytest.raises(ValueError):
        list(sample_uniform(table, 1, 0, seed=1))


# -- single-coefficient recurrences: plain positional digits ----------------------

def test_length_one_spec_is_base_k():
    spec = validate_spec((4,))
    # strings are base-4 digit sequences with a leading nonzero digit
    got = [d.coefficients for d in enumerate_omega(spec, 2)]
    expected = [(a, b) for a in range(1, 4) for b in range(4)]
    assert sorted(got) == sorted(expected)
    # second-to-last digit is uniform once n > 2L = 2
    zd = z_distribution(spec, 3)
    assert zd.probs == (Fraction(1, 4),) * 4
    assert zd.lengths == (1, 1, 1, 1)
