"""Positive linear recurrence sequences and their block catalogs.

A sequence is fixed by non-negative integer coefficients ``c_1, ..., c_L``
with ``c_1 > 0`` and ``c_L > 0``.  Terms obey

    H_{n+1} = c_1 H_n + c_2 H_{n-1} + ... + c_L H_{n+1-L}        (n >= L)

with ``H_1 = 1`` and the ramp-up rule
``H_{n+1} = c_1 H_n + ... + c_n H_1 + 1`` for ``1 <= n < L``.  All terms are
exact Python integers; nothing here ever touches floating point.

The digit strings of the associated numeration system are built from two
kinds of blocks over the coefficient alphabet:

* a type-1 block is a strict prefix ``(c_1, ..., c_m)`` with ``m < L``; it
  can only close a string;
* a type-2 block is ``(c_1, ..., c_{s-1}, a_s)`` with ``a_s < c_s``; it is
  uniquely determined by its size ``t`` (the sum of its entries), which
  ranges over ``0 <= t < S`` where ``S = c_1 + ... + c_L``.

``length_of(t)`` tabulates the length of the unique type-2 block of size t.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from functools import cache

from .errors import (
    DegenerateRecurrence,
    EmptyCoefficients,
    LeadingCoefficientZero,
    NegativeCoefficient,
    SizeOutOfRange,
    TrailingCoefficientZero,
)

__all__ = [
    "RecurrenceSpec",
    "SequenceTable",
    "Block",
    "BlockKind",
    "BlockCatalog",
    "validate_spec",
    "sequence_terms",
    "block_catalog",
    "block_length",
]


@dataclass(frozen=True)
class RecurrenceSpec:
    """Validated recurrence coefficients with derived size and length.

    Use :func:`validate_spec` to construct one; the constructor itself does
    not re-check the invariants.
    """

    coefficients: tuple[int, ...]

    @property
    def length(self) -> int:
        """Number of coefficients L."""
        return len(self.coefficients)

    @property
    def size(self) -> int:
        """Sum of the coefficients S."""
        return sum(self.coefficients)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coefficients)

    @classmethod
    def from_text(cls, text: str) -> "RecurrenceSpec":
        """Parse a comma-separated coefficient list, e.g. ``"2,2,0,2"``."""
        try:
            coeffs = [int(part) for part in text.split(",")]
        except ValueError:
            raise ValueError(f"cannot parse coefficients {text!r}") from None
        return validate_spec(coeffs)


def validate_spec(coefficients) -> RecurrenceSpec:
    """Validate a coefficient list and return the spec.

    Raises :class:`EmptyCoefficients`, :class:`LeadingCoefficientZero`,
    :class:`TrailingCoefficientZero` or :class:`NegativeCoefficient` on bad
    input, and :class:`DegenerateRecurrence` for ``(1,)``, whose sequence
    would be constant.
    """
    coeffs = tuple(int(c) for c in coefficients)
    if not coeffs:
        raise EmptyCoefficients("need at least one coefficient")
    for i, c in enumerate(coeffs):
        if c < 0:
            raise NegativeCoefficient(f"coefficient c_{i + 1} = {c} is negative")
    if coeffs[0] == 0:
        raise LeadingCoefficientZero("c_1 must be positive")
    if coeffs[-1] == 0:
        raise TrailingCoefficientZero("c_L must be positive")
    if coeffs == (1,):
        raise DegenerateRecurrence(
            "coefficients (1,) give the constant sequence 1, 1, 1, ..."
        )
    return RecurrenceSpec(coeffs)


class SequenceTable:
    """Cached terms ``H_1, ..., H_n`` of a sequence.

    The table extends itself on demand and never mutates already-computed
    terms, so concurrent readers are safe once an extension has finished.
    """

    def __init__(self, spec: RecurrenceSpec, n: int = 1):
        self.spec = spec
        self._terms: list[int] = [1]
        self.extend(n)

    def __len__(self) -> int:
        return len(self._terms)

    def extend(self, n: int) -> None:
        """Ensure terms up to ``H_n`` are cached."""
        c = self.spec.coefficients
        L = self.spec.length
        H = self._terms
        while len(H) < n:
            k = len(H)  # about to compute H_{k+1}
            if k < L:
                H.append(sum(c[i] * H[k - 1 - i] for i in range(k)) + 1)
            else:
                H.append(sum(c[i] * H[k - 1 - i] for i in range(L)))

    def term(self, i: int) -> int:
        """Return ``H_i`` (1-indexed), extending the cache if needed."""
        if i < 1:
            raise IndexError(f"term index {i} out of range (terms start at H_1)")
        self.extend(i)
        return self._terms[i - 1]

    def terms(self, n: int) -> tuple[int, ...]:
        """Return ``(H_1, ..., H_n)``."""
        self.extend(n)
        return tuple(self._terms[:n])

    def extend_beyond(self, value: int) -> int:
        """Grow the table until ``H_{n+1} > value``; return that n.

        n is then the index of the largest term at or below ``value``
        (terms are strictly increasing, so a bisection finds it).
        """
        if value < 1:
            raise ValueError("value must be >= 1")
        while self._terms[-1] <= value:
            self.extend(len(self._terms) + 8)
        n = bisect_right(self._terms, value)
        self.extend(n + 1)
        return n


def sequence_terms(spec: RecurrenceSpec, n: int) -> SequenceTable:
    """Build a table holding the exact terms ``H_1, ..., H_n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return SequenceTable(spec, n)


class BlockKind(Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"


@dataclass(frozen=True)
class Block:
    """One block of a digit string: its kind and coefficient run."""

    kind: BlockKind
    coefficients: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.coefficients)

    @property
    def length(self) -> int:
        return len(self.coefficients)

    def __str__(self) -> str:
        return "[" + " ".join(str(c) for c in self.coefficients) + "]"


@dataclass(frozen=True)
class BlockCatalog:
    """All blocks of a spec plus the size-to-length table.

    ``type1_blocks[m-1]`` is the prefix block of length m (1 <= m < L).
    ``type2_by_size[t]`` is the unique type-2 block of size t (0 <= t < S),
    and ``length_table[t]`` is its length.
    """

    spec: RecurrenceSpec
    type1_blocks: tuple[Block, ...]
    type2_by_size: tuple[Block, ...]
    length_table: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "length_table", tuple(b.length for b in self.type2_by_size)
        )

    def length_of(self, t: int) -> int:
        """Length of the type-2 block of size ``t``."""
        if not 0 <= t < self.spec.size:
            raise SizeOutOfRange(
                f"block size {t} outside [0, {self.spec.size - 1}]"
            )
        return self.length_table[t]

    def type1_of_length(self, m: int) -> Block:
        """The type-1 block of length ``m`` (1 <= m < L)."""
        if not 1 <= m < self.spec.length:
            raise SizeOutOfRange(f"no type-1 block of length {m}")
        return self.type1_blocks[m - 1]


@cache
def block_catalog(spec: RecurrenceSpec) -> BlockCatalog:
    """Enumerate every block of the spec.  Cached per spec.

    For each size ``t`` the type-2 block is found by walking the coefficient
    prefix sums: the block ends at the first index s with ``c_s > 0`` and
    ``t - (c_1 + ... + c_{s-1}) < c_s``.  Indices with ``c_s = 0`` can never
    end a block (nothing is strictly below zero), which is why e.g. a zero
    in the middle of the coefficients is always copied verbatim.
    """
    c = spec.coefficients
    type1 = tuple(
        Block(BlockKind.TYPE1, c[:m]) for m in range(1, spec.length)
    )
    type2 = []
    for t in range(spec.size):
        cum = 0
        for s, cs in enumerate(c, start=1):
            if cs > 0 and t - cum < cs:
                type2.append(Block(BlockKind.TYPE2, c[: s - 1] + (t - cum,)))
                break
            cum += cs
        else:  # pragma: no cover - prefix sums reach S > t, so unreachable
            raise AssertionError(f"no block terminates size {t}")
    return BlockCatalog(spec, type1, tuple(type2))


def block_length(catalog: BlockCatalog, t: int) -> int:
    """Length of the type-2 block of size ``t`` (the table lookup)."""
    return catalog.length_of(t)
