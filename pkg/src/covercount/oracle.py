"""Brute-force enumeration of constellations.

An m-tuple ``(g_1, ..., g_m)`` of permutations of ``{0, ..., n-1}`` is closed
up by ``sigma = (g_1 ... g_m)^{-1}``.  Tuples generating a transitive group
are classified by the cycle type of ``sigma`` and by the genus from
``2 - 2g = 2n - sum_P (n - cycles(g_P))`` over the ``m + 1`` points.  Each
cell is divided by ``n!`` to give the automorphism-weighted count.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

from .errors import BudgetExceeded, NonIntegerGenus, UsageError
from .exactalg import rat_from_str, rat_to_str
from .genseries import _pool_map
from .partitions import Partition, rlex_key

DEFAULT_BUDGET = 10**9

Permutation = tuple  # images of 0..n-1


def compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """``(a b)(x) = a(b(x))``."""
    return tuple(a[x] for x in b)


def inverse(a: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def cycle_type(a: Sequence[int]) -> Partition:
    seen = [False] * len(a)
    lengths = []
    for start in range(len(a)):
        if seen[start]:
            continue
        k, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = a[x]
            k += 1
        lengths.append(k)
    return Partition._trusted(sorted(lengths, reverse=True))


def is_transitive(gens: Iterable[Sequence[int]], n: int) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    blocks = n
    for g in gens:
        for x in range(n):
            rx, ry = find(x), find(g[x])
            if rx != ry:
                parent[rx] = ry
                blocks -= 1
    return blocks <= 1


def genus_of(tuple_: Sequence[Sequence[int]], product_: Sequence[int], n: int) -> int:
    """Genus of the covering with monodromies ``tuple_`` and ``product_``."""
    ramification = sum(n - len(cycle_type(g)) for g in tuple_) + n - len(cycle_type(product_))
    twice, odd = divmod(ramification - 2 * n + 2, 2)
    if odd:
        raise NonIntegerGenus(f"total ramification {ramification} has the wrong parity for n = {n}")
    return twice


@dataclass
class CountTable:
    """Weighted counts keyed by ``(cycle type, genus)``."""

    n: int
    m: int
    cells: dict = field(default_factory=dict)  # (Partition, genus) -> Fraction
    transitive_tuples: int = 0
    intransitive_tuples: int = 0

    @property
    def total_tuples(self) -> int:
        return self.transitive_tuples + self.intransitive_tuples

    def sorted_cells(self) -> list[tuple[Partition, int, Fraction]]:
        keys = sorted(self.cells, key=lambda k: (rlex_key(k[0]), k[1]))
        return [(nu, g, self.cells[(nu, g)]) for nu, g in keys]

    def to_json(self) -> list[dict]:
        return [{"nu": list(nu), "genus": g, "count": rat_to_str(c)} for nu, g, c in self.sorted_cells()]

    @classmethod
    def from_json(cls, data: list[dict], n: int, m: int) -> CountTable:
        cells = {(Partition(t["nu"]), int(t["genus"])): rat_from_str(t["count"]) for t in data}
        return cls(n, m, cells)


@lru_cache(maxsize=8)
def _tables(n: int):
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    comp = [[index[compose(a, b)] for b in perms] for a in perms]
    inv = [index[inverse(p)] for p in perms]
    types = [cycle_type(p) for p in perms]
    return perms, comp, inv, types


def _count_block(args) -> tuple[dict, int, int]:
    n, m, first_lo, first_hi = args
    perms, comp, inv, types = _tables(n)
    rank = [n - len(t) for t in types]
    raw: Counter = Counter()
    ok = bad = 0
    for first in range(first_lo, first_hi):
        for rest in product(range(len(perms)), repeat=m - 1):
            acc = first
            for r in rest:
                acc = comp[acc][r]
            sigma = inv[acc]
            gens = [perms[first]] + [perms[r] for r in rest]
            if not is_transitive(gens, n):
                bad += 1
                continue
            ok += 1
            ram = rank[first] + sum(rank[r] for r in rest) + rank[sigma]
            twice, odd = divmod(ram - 2 * n + 2, 2)
            if odd or twice < 0:
                raise NonIntegerGenus(f"invalid genus from ramification {ram} at n = {n}")
            raw[(types[sigma], twice)] += 1
    return dict(raw), ok, bad


def _blocks(total: int, threads: int) -> list[tuple[int, int]]:
    pieces = max(1, min(total, 4 * threads))
    step = -(-total // pieces)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def enumerate_counts(n: int, m: int, budget: int = DEFAULT_BUDGET, threads: int = 1) -> CountTable:
    """All ``(n!)^m`` tuples, classified by product cycle type and genus.

    Work is split into contiguous blocks of the first permutation's rank;
    blocks are merged in block order, so the result does not depend on
    ``threads``.
    """
    if n < 1 or m < 0:
        raise UsageError("need n >= 1 and m >= 0")
    fact = math.factorial(n)
    if fact**m > budget:
        raise BudgetExceeded(f"({n}!)^{m} = {fact ** m} tuples exceed the budget {budget}")
    table = CountTable(n, m)
    raw: Counter = Counter()
    if m == 0:
        # empty tuple, sigma = id: transitive only on one point
        if n == 1:
            raw[(Partition((1,)), 0)] += 1
            table.transitive_tuples = 1
        else:
            table.intransitive_tuples = 1
    else:
        jobs = [(n, m, lo, hi) for lo, hi in _blocks(fact, threads)]
        for part, ok, bad in _pool_map(_count_block, jobs, threads):
            raw.update(part)
            table.transitive_tuples += ok
            table.intransitive_tuples += bad
    table.cells = {key: Fraction(v, fact) for key, v in raw.items()}
    return table


def count_conjugacy_orbits(n: int, m: int, nu: Iterable[int], budget: int = DEFAULT_BUDGET) -> int:
    """Orbits of transitive tuples with product of type ``nu`` under simultaneous conjugation.

    Burnside: the orbit count is ``sum_x |Stab(x)| / n!`` over the tuples ``x``.
    """
    nu = Partition(nu)
    if nu.size != n:
        raise UsageError(f"nu = {nu} is not a partition of {n}")
    fact = math.factorial(n)
    if fact ** (m + 1) > budget:
        raise BudgetExceeded(f"({n}!)^{m + 1} steps exceed the budget {budget}")
    perms, comp, inv, types = _tables(n)
    identity = perms.index(tuple(range(n)))
    stab_total = 0
    for tup in product(range(len(perms)), repeat=m):
        acc = identity
        for r in tup:
            acc = comp[acc][r]
        if types[inv[acc]] != nu or not is_transitive([perms[r] for r in tup] or [perms[identity]], n):
            continue
        for h in range(len(perms)):
            if all(comp[h][r] == comp[r][h] for r in tup):
                stab_total += 1
    orbits, rem = divmod(stab_total, fact)
    assert rem == 0, "Burnside sum not divisible by n!"
    return orbits
