from __future__ import annotations

import math
from fractions import Fraction

import pytest

from covercount.errors import BudgetExceeded, NonIntegerGenus, UsageError
from covercount.genseries import b_number, build_S
from covercount.oracle import (
    CountTable,
    compose,
    count_conjugacy_orbits,
    cycle_type,
    enumerate_counts,
    genus_of,
    inverse,
    is_transitive,
)

F = Fraction
T = (1, 0)  # the transposition in S_2
C3 = (1, 2, 0)  # 0 -> 1 -> 2 -> 0


def test_permutation_helpers():
    assert compose(C3, C3) == (2, 0, 1)
    assert compose(C3, inverse(C3)) == (0, 1, 2)
    assert cycle_type((1, 0, 2, 4, 3)) == (2, 2, 1)
    assert is_transitive([C3], 3)
    assert not is_transitive([(1, 0, 2)], 3)


def test_genus_examples():
    assert genus_of([T, T], (0, 1), 2) == 0
    assert genus_of([(0,)] * 3, (0,), 1) == 0
    assert genus_of([C3, C3], C3, 3) == 1


def test_genus_parity_error():
    with pytest.raises(NonIntegerGenus):
        genus_of([T], (0, 1), 2)


def test_two_sheets_two_points():
    table = enumerate_counts(2, 2)
    assert table.cells == {((2,), 0): 1, ((1, 1), 0): F(1, 2)}
    assert (table.transitive_tuples, table.intransitive_tuples) == (3, 1)


def test_one_sheet():
    assert enumerate_counts(1, 3).cells == {((1,), 0): 1}
    assert enumerate_counts(1, 0).cells == {((1,), 0): 1}
    assert enumerate_counts(2, 0).cells == {}


def test_three_sheets_three_cycle():
    # genus 0: (e, c), (c, e) with c a 3-cycle, plus six ordered pairs of distinct
    # transpositions; genus 1: (c, c) for both 3-cycles.  Each cell is divided by 3!.
    table = enumerate_counts(3, 2)
    assert table.cells[((3,), 0)] == F(10, 6)
    assert table.cells[((3,), 1)] == F(2, 6)


@pytest.mark.parametrize("n, m", [(2, 2), (3, 2), (3, 3), (4, 2)])
def test_tuple_conservation(n, m):
    table = enumerate_counts(n, m)
    fact = math.factorial(n)
    assert sum(c * fact for c in table.cells.values()) == table.transitive_tuples
    assert table.total_tuples == fact**m


@pytest.mark.parametrize("n, m", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3)])
def test_cells_match_series(n, m):
    gf = build_S(n, n * m)
    for (nu, g), count in enumerate_counts(n, m).cells.items():
        assert g >= 0
        assert b_number(gf, g, nu, m_value=m) == count, (nu, g)


@pytest.mark.parametrize("threads", [2, 3])
def test_sharding_is_deterministic(threads):
    serial = enumerate_counts(4, 2, threads=1)
    parallel = enumerate_counts(4, 2, threads=threads)
    assert parallel.to_json() == serial.to_json()
    assert parallel.transitive_tuples == serial.transitive_tuples


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_counts(4, 3, budget=1000)
    with pytest.raises(UsageError):
        enumerate_counts(0, 2)


def test_json_roundtrip():
    table = enumerate_counts(3, 2)
    again = CountTable.from_json(table.to_json(), 3, 2)
    assert again.cells == table.cells
    assert table.to_json()[0] == {"nu": [3], "genus": 0, "count": "5/3"}


def test_orbit_counts():
    # simultaneous conjugation keeps each factor in its slot, so (e, t) and (t, e)
    # lie in different orbits
    assert count_conjugacy_orbits(2, 2, (2,)) == 2
    assert count_conjugacy_orbits(2, 2, (1, 1)) == 1
    assert count_conjugacy_orbits(1, 1, (1,)) == 1
    assert count_conjugacy_orbits(3, 2, (3,)) == 4


def test_orbit_budget():
    with pytest.raises(BudgetExceeded):
        count_conjugacy_orbits(4, 3, (4,), budget=10)
