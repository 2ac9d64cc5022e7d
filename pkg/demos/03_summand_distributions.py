#!/usr/bin/env python3
"""Exact summand-count distributions, three independent ways.

The outcome space at index n holds the decompositions of the integers in
[H_n, H_n+1).  This script counts summands over that space by (1) walking
the block grammar, (2) greedily decomposing every integer in the interval,
and (3) an exact polynomial dynamic program, and shows all three agree
coefficient by coefficient.  It then prints the exact distribution of the
second-to-last block's size next to its closed form.
"""

from collections import Counter

from plrs import (
    SequenceTable,
    SummandTable,
    enumerate_by_integer_walk,
    enumerate_omega,
    sample_uniform,
    validate_spec,
    z_distribution,
)

spec = validate_spec((2, 2, 0, 2))
table = SequenceTable(spec)
engine = SummandTable(spec)
n = 7

print(f"recurrence {spec}, index n = {n}")
print(f"interval [{table.term(n)}, {table.term(n + 1)}) holds "
      f"{table.term(n + 1) - table.term(n)} integers")
print()

grammar_tally = Counter(d.summand_count for d in enumerate_omega(spec, n))
walk_tally = Counter(
    d.summand_count for d in enumerate_by_integer_walk(table, n)
)
poly = engine.polynomial(n)
print("summands k -> count of outcomes:")
print(f"  {'k':>3} {'grammar':>9} {'walk':>9} {'polynomial':>11}")
for k, c in enumerate(poly.coeffs):
    if c or grammar_tally[k] or walk_tally[k]:
        print(f"  {k:>3} {grammar_tally[k]:>9} {walk_tally[k]:>9} {c:>11}")
assert dict(grammar_tally) == dict(walk_tally) == {
    k: c for k, c in enumerate(poly.coeffs) if c
}
print("  all three agree exactly")
print()

stats = engine.stats(n)
print(f"exact moments at n={n}: mean {stats.mean}, variance {stats.variance}")
print()

print("distribution of the second-to-last block size (closed form = tally):")
zd = z_distribution(spec, 9, table=table)
for t, p in enumerate(zd.probs):
    bar = "#" * round(40 * float(p))
    print(f"  t={t} (len {zd.lengths[t]}): {str(p):>12}  {bar}")
assert sum(zd.probs) == 1
print()

print("Monte Carlo view at n = 120 (exact arithmetic underneath):")
exact = engine.stats(120)
draws = 20_000
total = sum(d.summand_count for d in sample_uniform(table, 120, draws, seed=11))
print(f"  exact mean  = {float(exact.mean):.6f}")
print(f"  sample mean = {total / draws:.6f}  ({draws} draws, seed 11)")
