"""Integer partitions and the combinatorial predicates built on them.

A partition is stored as a weakly decreasing tuple of positive integers with
trailing zeros stripped.  Positional access through :meth:`Partition.part`
is 1-based and returns 0 past the last part, which is the convention used
by every criterion in :mod:`orbit_gate.criteria`.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import zip_longest
from typing import Iterable, Iterator

from .errors import InvalidInputError

_TEXT_RE = re.compile(r"^\d+(,\d+)*$")


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __init__(self, parts: Iterable[int] = ()):
        values = [int(x) for x in parts]
        while values and values[-1] == 0:
            values.pop()
        if any(v < 1 for v in values):
            raise InvalidInputError(f"partition entries must be positive: {values}")
        if any(a < b for a, b in zip(values, values[1:])):
            raise InvalidInputError(f"partition must be weakly decreasing: {values}")
        object.__setattr__(self, "parts", tuple(values))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Parse ``"5,3,1"``; ``"0"`` and ``""`` give the empty partition."""
        text = text.strip()
        if text in ("", "0"):
            return cls()
        if not _TEXT_RE.match(text):
            raise InvalidInputError(f"bad partition text {text!r}; expected e.g. 3,2,1")
        return cls(int(x) for x in text.split(","))

    @classmethod
    def from_unsorted(cls, values: Iterable[int]) -> Partition:
        return cls(sorted((v for v in values if v > 0), reverse=True))

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) if self.parts else "0"

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """The i-th part, 1-based, zero beyond the length."""
        if i < 1:
            raise IndexError("partition indices are 1-based")
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def padded(self, length: int) -> tuple[int, ...]:
        return self.parts + (0,) * (length - len(self.parts))

    def transpose(self) -> Partition:
        return transpose(self)

    def to_json(self) -> list[int]:
        return list(self.parts)


def as_partition(value) -> Partition:
    if isinstance(value, Partition):
        return value
    if isinstance(value, str):
        return Partition.parse(value)
    return Partition(value)


@lru_cache(maxsize=4096)
def _transpose_parts(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= i) for i in range(1, parts[0] + 1))


def transpose(lam) -> Partition:
    lam = as_partition(lam)
    return Partition(_transpose_parts(lam.parts))


def _partial_sums(parts: Iterable[int]) -> list[int]:
    out, total = [], 0
    for v in parts:
        total += v
        out.append(total)
    return out


def dominance_leq(mu, lam) -> bool:
    """True iff every partial sum of ``mu`` is at most that of ``lam``."""
    mu, lam = as_partition(mu), as_partition(lam)
    if mu.size != lam.size:
        raise InvalidInputError(
            f"dominance needs equal sizes, got {mu.size} and {lam.size}")
    n = max(len(mu), len(lam))
    return all(a <= b for a, b in zip(_partial_sums(mu.padded(n)),
                                      _partial_sums(lam.padded(n))))


def dominance_failures(mu, lam) -> list[int]:
    """1-based positions j where sum_{i<=j} mu_i exceeds sum_{i<=j} lam_i."""
    mu, lam = as_partition(mu), as_partition(lam)
    if mu.size != lam.size:
        raise InvalidInputError(
            f"dominance needs equal sizes, got {mu.size} and {lam.size}")
    n = max(len(mu), len(lam))
    return [j + 1 for j, (a, b) in enumerate(zip(_partial_sums(mu.padded(n)),
                                                 _partial_sums(lam.padded(n))))
            if a > b]


def interlace_leq_plus_one(lam, lam_prime) -> bool:
    """lam_i <= lam'_i <= lam_i + 1 for every i, zero-padded."""
    lam, lam_prime = as_partition(lam), as_partition(lam_prime)
    return all(a <= b <= a + 1
               for a, b in zip_longest(lam.parts, lam_prime.parts, fillvalue=0))


def odd_part_count(lam) -> int:
    return sum(1 for v in as_partition(lam) if v % 2)


def is_very_even(lam) -> bool:
    return all(v % 2 == 0 for v in as_partition(lam))


def has_even_multiplicities(lam) -> bool:
    return all(c % 2 == 0 for c in Counter(as_partition(lam).parts).values())


def pointwise_sum(mu, nu) -> Partition:
    mu, nu = as_partition(mu), as_partition(nu)
    return Partition(a + b for a, b in zip_longest(mu.parts, nu.parts, fillvalue=0))


def sorted_merge(mu, nu) -> Partition:
    mu, nu = as_partition(mu), as_partition(nu)
    return Partition(sorted(mu.parts + nu.parts, reverse=True))


def pointwise_min(mu, nu) -> Partition:
    mu, nu = as_partition(mu), as_partition(nu)
    return Partition(min(a, b) for a, b in zip_longest(mu.parts, nu.parts, fillvalue=0))


def max_abs_difference_positions(a, b) -> list[int]:
    """1-based positions where |a_i - b_i| > 1 (zero-padded)."""
    a, b = as_partition(a), as_partition(b)
    return [i + 1 for i, (x, y) in enumerate(zip_longest(a.parts, b.parts, fillvalue=0))
            if abs(x - y) > 1]


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        return
    if max_part is None:
        max_part = n

    def rec(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for parts in rec(n, max_part):
        yield Partition(parts)


def partitions_up_to(n: int) -> Iterator[Partition]:
    for m in range(n + 1):
        yield from partitions_of(m)
