from __future__ import annotations

import math
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from covercount.errors import BoundExceeded, UsageError
from covercount.partitions import (
    Partition,
    diagram_stats,
    dimension_by_syt,
    partitions_of,
    rlex_key,
)
from oracles import partitions_brute, syt_count_brute

small_partitions = st.integers(0, 8).flatmap(lambda n: st.sampled_from(partitions_of(n)))


def test_parse_and_render():
    assert Partition.parse("3,1,1") == (3, 1, 1)
    assert Partition.parse("-") == ()
    assert str(Partition((3, 1, 1))) == "3,1,1"
    assert str(Partition(())) == "-"


@pytest.mark.parametrize("text", ["", "1,2", "0", "a", "2,,1", "-1"])
def test_parse_rejects(text):
    with pytest.raises(UsageError):
        Partition.parse(text)


def test_partitions_of_examples():
    assert partitions_of(0) == [()]
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(partitions_of(8)) == 22


@pytest.mark.parametrize("n", range(0, 11))
def test_partitions_against_compositions(n):
    got = partitions_of(n)
    assert set(got) == partitions_brute(n)
    assert len(got) == len(set(got))
    assert got == sorted(got, key=rlex_key)


def test_diagram_stats_examples():
    s = diagram_stats(Partition((2, 1)))
    assert Counter(s.contents) == Counter([-1, 0, 1])
    assert Counter(s.hooks) == Counter([3, 1, 1])
    assert (s.dim, s.z, s.class_size, s.aut) == (2, 2, 3, 1)

    s = diagram_stats(Partition((3, 1)))
    assert Counter(s.hooks) == Counter([4, 2, 1, 1])
    assert (s.dim, s.class_size) == (3, 8)

    for n in range(1, 6):
        s = diagram_stats(Partition((n,)))
        assert sorted(s.contents) == list(range(n))
        assert sorted(s.hooks) == list(range(1, n + 1))
        assert s.dim == 1


def test_content_sign_convention():
    # column minus row: the first row carries the positive contents
    assert diagram_stats(Partition((3,))).contents == (0, 1, 2)
    assert diagram_stats(Partition((1, 1, 1))).contents == (0, -1, -2)


def test_empty_partition():
    s = diagram_stats(Partition(()))
    assert (s.contents, s.hooks, s.dim, s.z, s.aut) == ((), (), 1, 1, 1)


@pytest.mark.parametrize("nu, dim", [((1, 1, 1), 1), ((2, 2), 2), ((2, 1), 2)])
def test_dimension_by_syt_examples(nu, dim):
    assert dimension_by_syt(Partition(nu)) == dim


def test_dimension_by_syt_bound():
    with pytest.raises(BoundExceeded):
        dimension_by_syt(Partition((6, 5)))


@pytest.mark.parametrize("n", range(0, 7))
def test_syt_backtracking_against_brute_force(n):
    for nu in partitions_of(n):
        assert dimension_by_syt(nu) == syt_count_brute(nu)


@pytest.mark.parametrize("n", range(0, 9))
def test_regular_representation_and_class_sizes(n):
    stats = [diagram_stats(nu) for nu in partitions_of(n)]
    assert sum(s.dim**2 for s in stats) == math.factorial(n)
    assert sum(s.class_size for s in stats) == math.factorial(n)


@given(small_partitions)
def test_conjugation_negates_contents(nu):
    s, t = diagram_stats(nu), diagram_stats(nu.conjugate())
    assert Counter(t.contents) == Counter(-c for c in s.contents)
    assert Counter(t.hooks) == Counter(s.hooks)
    assert nu.conjugate().conjugate() == nu


@given(small_partitions)
def test_content_sum(nu):
    expected = sum(math.comb(p, 2) for p in nu) - sum(math.comb(p, 2) for p in nu.conjugate())
    assert sum(diagram_stats(nu).contents) == expected
