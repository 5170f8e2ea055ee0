"""Partitions, Young diagrams and their statistics."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import BoundExceeded, UsageError

SYT_BOUND = 10


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    ``Partition()`` is the empty partition of 0.  Being a tuple, a partition
    hashes and compares equal to the plain tuple of its parts.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise UsageError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise UsageError(f"partition parts must be weakly decreasing: {parts}")
        return tuple.__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: Iterable[int]) -> Partition:
        return tuple.__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Parse ``"3,1,1"``; ``"-"`` is the empty partition."""
        text = text.strip()
        if text == "-":
            return cls()
        if not text:
            raise UsageError("empty partition string (use '-' for the empty partition)")
        try:
            parts = [int(tok) for tok in text.split(",")]
        except ValueError as exc:
            raise UsageError(f"malformed partition: {text!r}") from exc
        return cls(parts)

    def __str__(self) -> str:
        return ",".join(map(str, self)) if self else "-"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def conjugate(self) -> Partition:
        if not self:
            return self
        return Partition._trusted(sum(1 for p in self if p > j) for j in range(self[0]))

    def cells(self) -> Iterator[tuple[int, int]]:
        """Yield zero-based ``(row, column)`` pairs row by row."""
        for i, row in enumerate(self):
            for j in range(row):
                yield i, j

    def merge(self, other: Iterable[int]) -> Partition:
        return Partition._trusted(sorted(self + tuple(other), reverse=True))

    def remove_part(self, part: int) -> Partition:
        parts = list(self)
        parts.remove(part)
        return Partition._trusted(parts)


def rlex_key(mu: Iterable[int]) -> tuple[int, ...]:
    """Sort key that puts partitions of equal weight in reverse-lexicographic order."""
    return tuple(-p for p in mu)


def series_key(mu: Iterable[int]) -> tuple:
    """Sort key by weight, then reverse-lexicographic."""
    mu = tuple(mu)
    return (sum(mu), rlex_key(mu))


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n``, reverse-lexicographic, e.g. (4), (3,1), (2,2), ..."""
    if n < 0:
        raise UsageError("cannot partition a negative integer")
    return [Partition._trusted(p) for p in _partitions(n, n)]


def partitions_up_to(n: int) -> list[Partition]:
    return [mu for k in range(n + 1) for mu in partitions_of(k)]


def contents(nu: Partition) -> list[int]:
    """Column minus row for each cell, zero-based, row by row."""
    return [j - i for i, j in nu.cells()]


def hooks(nu: Partition) -> list[int]:
    conj = nu.conjugate()
    return [(nu[i] - j - 1) + (conj[j] - i - 1) + 1 for i, j in nu.cells()]


def z_nu(nu: Partition) -> int:
    """Centralizer order ``prod i^{d_i} d_i!``."""
    out = 1
    for part, mult in Counter(nu).items():
        out *= part**mult * math.factorial(mult)
    return out


def aut_order(nu: Partition) -> int:
    out = 1
    for mult in Counter(nu).values():
        out *= math.factorial(mult)
    return out


@dataclass(frozen=True)
class DiagramStats:
    contents: tuple[int, ...]
    hooks: tuple[int, ...]
    dim: int
    z: int
    class_size: int
    aut: int


@lru_cache(maxsize=None)
def diagram_stats(nu: Partition) -> DiagramStats:
    nu = Partition(nu)
    n = nu.size
    hk = hooks(nu)
    fact = math.factorial(n)
    dim, rem = divmod(fact, math.prod(hk))
    assert rem == 0, f"hook product does not divide {n}! for {nu}"
    z = z_nu(nu)
    return DiagramStats(
        contents=tuple(contents(nu)),
        hooks=tuple(hk),
        dim=dim,
        z=z,
        class_size=fact // z,
        aut=aut_order(nu),
    )


def dimension_by_syt(nu: Partition, bound: int = SYT_BOUND) -> int:
    """Count standard Young tableaux of shape ``nu`` by backtracking.

    Entries 1..n are placed one at a time; a cell may be filled once the cells
    above and to its left are filled.
    """
    nu = Partition(nu)
    if nu.size > bound:
        raise BoundExceeded(f"|nu| = {nu.size} exceeds the SYT bound {bound}")
    filled = [0] * len(nu)
    remaining = nu.size

    def place() -> int:
        nonlocal remaining
        if remaining == 0:
            return 1
        total = 0
        for i in range(len(nu)):
            if filled[i] < nu[i] and (i == 0 or filled[i - 1] > filled[i]):
                filled[i] += 1
                remaining -= 1
                total += place()
                filled[i] -= 1
                remaining += 1
        return total

    return place()
