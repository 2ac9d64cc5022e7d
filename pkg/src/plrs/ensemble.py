"""The outcome spaces of fixed-length decompositions, exactly.

For each index n, the outcome space collects the legal decompositions of
the integers in ``[H_n, H_{n+1})``; those are exactly the legal coefficient
strings of length n with a positive leading coefficient, and there are
``H_{n+1} - H_n`` of them.  This module materializes that space three ways:

* :func:`enumerate_omega` walks the block grammar directly;
* :func:`enumerate_by_integer_walk` greedily decomposes every integer in
  the interval (the independent oracle, kept forever in the test suite);
* :class:`SummandTable` runs an exact dynamic program over tail
  polynomials, giving the full summand-count histogram of every n without
  enumerating anything.

Counts are exact integers, probabilities and moments exact rationals.
Exports use decimal strings so arbitrary precision survives JSON and CSV.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .decomposition import Decomposition, decompose, second_to_last_block_size
from .errors import (
    CapExceeded,
    EmptyConditionalEvent,
    EmptyDistribution,
    IndexTooSmall,
    PlrsError,
    SizeOutOfRange,
)
from .rationals import format_fraction
from .recurrence import RecurrenceSpec, SequenceTable, block_catalog

__all__ = [
    "DEFAULT_ENUM_CAP",
    "SummandPolynomial",
    "EnsembleStats",
    "ZDistribution",
    "SummandTable",
    "enumerate_omega",
    "enumerate_by_integer_walk",
    "summand_polynomial",
    "stats_from_polynomial",
    "z_distribution",
    "conditional_mean_check",
    "sample_uniform",
]

# Exhaustive sweeps refuse to materialize more outcomes than this unless the
# caller raises the cap explicitly; the spaces grow geometrically in n.
DEFAULT_ENUM_CAP = 2_000_000


def enumerate_omega(spec: RecurrenceSpec, n: int) -> Iterator[Decomposition]:
    """Yield every legal coefficient string of length ``n``, exactly once.

    Walks the block grammar: a run of type-2 blocks, optionally closed by a
    type-1 block, total length n, where the first block must carry a
    positive leading coefficient (a type-2 block of size >= 1, or a type-1
    block filling the whole string, which needs n < L).

    Order is lexicographic in the sequence of block sizes; when a closing
    type-1 block ties with a type-2 block of equal size, the type-1 string
    comes first because it is the shorter size sequence.  Intended for small
    n; the yield count is ``H_{n+1} - H_n``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    catalog = block_catalog(spec)
    lengths = catalog.length_table
    L = spec.length
    prefix_sums = [sum(spec.coefficients[:m]) for m in range(L)]
    coeffs: list[int] = []

    def choices(remaining: int, first: bool):
        out = []
        for t in range(1 if first else 0, spec.size):
            if lengths[t] > remaining:
                break  # lengths are non-decreasing in t
            out.append((t, 2))
        if 1 <= remaining < L:
            out.append((prefix_sums[remaining], 1))
        out.sort()
        return out

    def walk(remaining: int, first: bool):
        for size, kind in choices(remaining, first):
            if kind == 1:
                block = catalog.type1_blocks[remaining - 1]
                coeffs.extend(block.coefficients)
                yield Decomposition._trusted(spec, tuple(coeffs))
                del coeffs[-block.length :]
                continue
            block = catalog.type2_by_size[size]
            coeffs.extend(block.coefficients)
            if block.length == remaining:
                yield Decomposition._trusted(spec, tuple(coeffs))
            else:
                yield from walk(remaining - block.length, False)
            del coeffs[-block.length :]

    yield from walk(n, True)


def enumerate_by_integer_walk(
    table: SequenceTable, n: int, cap: int | None = DEFAULT_ENUM_CAP
) -> Iterator[Decomposition]:
    """Greedily decompose every integer in ``[H_n, H_{n+1})``, in order.

    This is the independent oracle for :func:`enumerate_omega` and the
    dynamic program: it never looks at the block grammar.  Raises
    :class:`CapExceeded` when the interval holds more than ``cap`` integers
    (pass ``cap=None`` to disable the guard).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lo, hi = table.term(n), table.term(n + 1)
    if cap is not None and hi - lo > cap:
        raise CapExceeded(hi - lo, cap)
    for m in range(lo, hi):
        yield decompose(table, m)


@dataclass(frozen=True)
class SummandPolynomial:
    """Summand-count histogram of index ``n`` as an exact polynomial.

    ``coeffs[k]`` counts the outcomes with exactly k summands, so
    evaluating at 1 gives the cardinality ``H_{n+1} - H_n``.
    """

    n: int
    coeffs: tuple[int, ...]

    @property
    def total(self) -> int:
        """The cardinality: the polynomial evaluated at 1."""
        return sum(self.coeffs)

    def to_json(self) -> str:
        body = ", ".join(f'"{c}"' for c in self.coeffs)
        return f'{{"n": {self.n}, "coeffs": [{body}]}}'

    def to_csv(self) -> str:
        lines = ["k,count"]
        lines.extend(f"{k},{c}" for k, c in enumerate(self.coeffs))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SummandPolynomial":
        data = json.loads(text)
        return cls(int(data["n"]), tuple(int(c) for c in data["coeffs"]))


@dataclass(frozen=True)
class EnsembleStats:
    """Exact moments of the summand count at one index."""

    n: int
    cardinality: int
    mean: Fraction
    variance: Fraction
    central3: Fraction
    central4: Fraction
    histogram: SummandPolynomial


def _shift_add(acc: list[int], src: list[int] | tuple[int, ...], t: int) -> None:
    """acc += x^t * src, growing acc as needed."""
    need = t + len(src)
    if len(acc) < need:
        acc.extend([0] * (need - len(acc)))
    acc[t:need] = [a + b for a, b in zip(acc[t:need], src)]


class SummandTable:
    """Exact dynamic program over tail polynomials.

    ``Q_r`` counts the legal *remainder* strings of length r (leading zeros
    allowed) by summand count:

        Q_0 = 1
        Q_r = sum over type-2 sizes t with len(t) <= r of x^t Q_{r-len(t)}
              + x^{size of the type-1 block of length r}   (only if r < L)

    The histogram of the full outcome space follows by restricting the
    first block to positive sizes:

        P_n = sum over t >= 1 with len(t) <= n of x^t Q_{n-len(t)}
              + x^{size of the type-1 block of length n}   (only if n < L)

    The type-1 term enters only when the block fills the rest of the
    string, which encodes "at most one type-1 block, always last".  All
    coefficients are exact integers; cost is quadratic in n, fine for the
    desk scale of a few thousand indices.

    One table may be shared by concurrent readers once :meth:`extend` has
    completed; extension itself is not thread-safe.
    """

    def __init__(self, spec: RecurrenceSpec):
        self.spec = spec
        self.catalog = block_catalog(spec)
        self._prefix_sums = [sum(spec.coefficients[:m]) for m in range(spec.length)]
        self._tails: list[list[int]] = [[1]]
        self._stats: dict[int, EnsembleStats] = {}

    def extend(self, n: int) -> None:
        """Ensure tail polynomials up to length ``n`` exist."""
        lengths = self.catalog.length_table
        L = self.spec.length
        tails = self._tails
        while len(tails) <= n:
            r = len(tails)
            acc: list[int] = []
            for t, ell in enumerate(lengths):
                if ell > r:
                    break
                _shift_add(acc, tails[r - ell], t)
            if r < L:
                size = self._prefix_sums[r]
                if len(acc) <= size:
                    acc.extend([0] * (size + 1 - len(acc)))
                acc[size] += 1
            tails.append(acc)

    def polynomial(self, n: int) -> SummandPolynomial:
        """The exact summand-count histogram of index ``n``."""
        if n < 1:
            raise ValueError("n must be >= 1")
        self.extend(n - 1)
        lengths = self.catalog.length_table
        acc: list[int] = []
        for t in range(1, self.spec.size):
            ell = lengths[t]
            if ell > n:
                break
            _shift_add(acc, self._tails[n - ell], t)
        if n < self.spec.length:
            size = self._prefix_sums[n]
            if len(acc) <= size:
                acc.extend([0] * (size + 1 - len(acc)))
            acc[size] += 1
        return SummandPolynomial(n, tuple(acc))

    def stats(self, n: int) -> EnsembleStats:
        """Exact moments at index ``n``, cached."""
        got = self._stats.get(n)
        if got is None:
            got = self._stats[n] = stats_from_polynomial(self.polynomial(n))
        return got

    def cardinality(self, n: int) -> int:
        return self.stats(n).cardinality

    def mean(self, n: int) -> Fraction:
        return self.stats(n).mean

    def second_raw_moment(self, n: int) -> Fraction:
        s = self.stats(n)
        return s.variance + s.mean * s.mean


def summand_polynomial(spec: RecurrenceSpec, n: int) -> SummandPolynomial:
    """One-shot histogram; build a :class:`SummandTable` for sweeps."""
    return SummandTable(spec).polynomial(n)


def stats_from_polynomial(poly: SummandPolynomial) -> EnsembleStats:
    """Exact mean, variance and central moments 3 and 4 of a histogram."""
    total = poly.total
    if total == 0:
        raise EmptyDistribution(f"histogram for n={poly.n} has no outcomes")
    r1 = r2 = r3 = r4 = 0
    for k, c in enumerate(poly.coeffs):
        if not c:
            continue
        kc = k * c
        r1 += kc
        kc *= k
        r2 += kc
        kc *= k
        r3 += kc
        r4 += kc * k
    m1 = Fraction(r1, total)
    m2 = Fraction(r2, total)
    m3 = Fraction(r3, total)
    m4 = Fraction(r4, total)
    variance = m2 - m1 * m1
    central3 = m3 - 3 * m1 * m2 + 2 * m1**3
    central4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1**4
    return EnsembleStats(poly.n, total, m1, variance, central3, central4, poly)


@dataclass(frozen=True)
class ZDistribution:
    """Distribution of the size of the second-to-last block at index ``n``.

    ``probs[t]`` is the exact probability of size t under the uniform
    measure; ``lengths[t]`` is the block length that size implies.  When
    the space was small enough to enumerate, ``empirical_counts`` holds the
    tally that was checked against the closed form.
    """

    n: int
    probs: tuple[Fraction, ...]
    lengths: tuple[int, ...]
    cardinality: int
    empirical_counts: tuple[int, ...] | None = None

    @property
    def length_distribution(self) -> dict[int, Fraction]:
        """Induced distribution of the second-to-last block's length."""
        out: dict[int, Fraction] = {}
        for t, p in enumerate(self.probs):
            out[self.lengths[t]] = out.get(self.lengths[t], Fraction(0)) + p
        return dict(sorted(out.items()))

    def expected_length(self) -> Fraction:
        return sum(
            (Fraction(ell) * p for ell, p in self.length_distribution.items()),
            Fraction(0),
        )

    def to_json(self) -> str:
        probs = ", ".join(f'"{format_fraction(p)}"' for p in self.probs)
        lens = ", ".join(str(x) for x in self.lengths)
        return (
            f'{{"n": {self.n}, "probs": [{probs}], "lengths": [{lens}], '
            f'"cardinality": "{self.cardinality}"}}'
        )

    def to_csv(self) -> str:
        lines = ["t,length,prob"]
        lines.extend(
            f"{t},{self.lengths[t]},{format_fraction(p)}"
            for t, p in enumerate(self.probs)
        )
        return "\n".join(lines) + "\n"


def z_distribution(
    spec: RecurrenceSpec,
    n: int,
    *,
    table: SequenceTable | None = None,
    cross_check: bool | None = None,
    cap: int = DEFAULT_ENUM_CAP,
) -> ZDistribution:
    """Exact distribution of the second-to-last block size.

    Valid for ``n > 2L`` (at least three blocks, so the second-to-last is
    always type 2).  The closed form weighs each size t by the cardinality
    of the space at index ``n - length(t)``:

        P(size = t) = (H_{n-len(t)+1} - H_{n-len(t)}) / (H_{n+1} - H_n)

    With ``cross_check`` unset, the space is also enumerated and tallied
    whenever it has at most ``cap`` outcomes; the tally must reproduce the
    closed form exactly.  Pass ``cross_check=False`` inside large sweeps or
    ``cross_check=True`` to force enumeration.
    """
    L = spec.length
    if n <= 2 * L:
        raise IndexTooSmall(f"need n > 2L = {2 * L}, got {n}")
    table = table if table is not None else SequenceTable(spec)
    catalog = block_catalog(spec)
    omega = table.term(n + 1) - table.term(n)
    probs = tuple(
        Fraction(table.term(n - ell + 1) - table.term(n - ell), omega)
        for ell in catalog.length_table
    )
    counts = None
    if cross_check or (cross_check is None and omega <= cap):
        tally = [0] * spec.size
        for d in enumerate_omega(spec, n):
            tally[second_to_last_block_size(spec, d.coefficients)] += 1
        counts = tuple(tally)
        if any(Fraction(c, omega) != p for c, p in zip(counts, probs)):
            raise PlrsError(
                f"empirical second-to-last block tally at n={n} disagrees "
                "with the closed form"
            )
    return ZDistribution(n, probs, catalog.length_table, omega, counts)


def conditional_mean_check(
    spec: RecurrenceSpec,
    n: int,
    t: int,
    *,
    moment: int = 1,
    cap: int = DEFAULT_ENUM_CAP,
    engine: SummandTable | None = None,
) -> tuple[Fraction, Fraction]:
    """Conditional moment of the summand count, two independent ways.

    Left side: enumerate the space at index n, keep the outcomes whose
    second-to-last block has size ``t``, and average ``K^moment`` over
    them.  Right side, from the dynamic program at the shorter index
    ``r = n - length(t)`` (removing the block drops the count by t):

        moment 1:  E[K_r] + t
        moment 2:  E[K_r^2] + 2 t E[K_r] + t^2

    Both sides are exact rationals and must be equal.
    """
    L = spec.length
    if n <= 2 * L:
        raise IndexTooSmall(f"need n > 2L = {2 * L}, got {n}")
    if not 0 <= t < spec.size:
        raise SizeOutOfRange(f"block size {t} outside [0, {spec.size - 1}]")
    if moment not in (1, 2):
        raise ValueError("moment must be 1 or 2")
    catalog = block_catalog(spec)
    table = SequenceTable(spec)
    omega = table.term(n + 1) - table.term(n)
    if omega > cap:
        raise CapExceeded(omega, cap)

    count = 0
    acc = 0
    for d in enumerate_omega(spec, n):
        if second_to_last_block_size(spec, d.coefficients) != t:
            continue
        count += 1
        k = d.summand_count
        acc += k if moment == 1 else k * k
    if count == 0:
        raise EmptyConditionalEvent(f"no outcome at n={n} has block size {t}")
    lhs = Fraction(acc, count)

    engine = engine if engine is not None else SummandTable(spec)
    r = n - catalog.length_of(t)
    if moment == 1:
        rhs = engine.mean(r) + t
    else:
        rhs = engine.second_raw_moment(r) + 2 * t * engine.mean(r) + t * t
    return lhs, rhs


def sample_uniform(
    table: SequenceTable, n: int, count: int, seed: int
) -> Iterator[Decomposition]:
    """Decompose ``count`` integers drawn uniformly from ``[H_n, H_{n+1})``.

    Uniformity is exact at arbitrary precision (``random.Random.randrange``
    on the exact interval) and the stream is a pure function of the seed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    lo, hi = table.term(n), table.term(n + 1)
    for _ in range(count):
        yield decompose(table, rng.randrange(lo, hi))
