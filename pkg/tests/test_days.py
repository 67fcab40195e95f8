import itertools

import numpy as np
import pytest

from diplace import days, games
from diplace.games import ResourceLimitError


def brute_force_max_antichain(values):
    """Scan every subset of the poset."""
    n = len(values)
    comp = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        if games.leq(values[i], values[j]) or games.leq(values[j], values[i]):
            comp[i] |= 1 << j
            comp[j] |= 1 << i
    masks = np.arange(1 << n, dtype=np.uint32)
    ok = np.ones(masks.shape, dtype=bool)
    for i in range(n):
        member = (masks >> np.uint32(i)) & np.uint32(1)
        ok &= (member == 0) | ((masks & np.uint32(comp[i])) == 0)
    sizes = np.zeros(masks.shape, dtype=np.int64)
    for i in range(n):
        sizes += (masks >> np.uint32(i)) & np.uint32(1)
    return int(sizes[ok].max())


def test_counts():
    assert [len(days.enumerate_day(b)) for b in range(4)] == [1, 4, 22, 1474]
    assert days.enumerate_day(0).values == (games.ZERO,)


def test_day_sets_nest():
    for b in range(3):
        assert set(days.enumerate_day(b).values) <= set(days.enumerate_day(b + 1).values)


def test_birthdays_and_new_values():
    for b in range(1, 4):
        vals = days.enumerate_day(b).values
        assert all(games.birthday(x) <= b for x in vals)
        born = sum(games.birthday(x) == b for x in vals)
        assert born == len(vals) - len(days.enumerate_day(b - 1))
    assert sum(games.birthday(x) == 3 for x in days.enumerate_day(3).values) == 1452


def test_closed_under_negation():
    for b in range(4):
        vals = set(days.enumerate_day(b).values)
        assert {games.negate(x) for x in vals} == vals


def test_options_born_earlier():
    for b in range(1, 4):
        prev = set(days.enumerate_day(b - 1).values)
        for x in days.enumerate_day(b).values:
            assert set(games.left_options(x)) <= prev
            assert set(games.right_options(x)) <= prev


def test_bad_day():
    with pytest.raises(ValueError):
        days.enumerate_day(4)


def test_pair_budget():
    days._days.pop(3, None)
    try:
        with pytest.raises(ResourceLimitError):
            days.enumerate_day(3, pair_budget=100)
    finally:
        days._days.pop(3, None)
    assert len(days.enumerate_day(3)) == 1474


def test_antichains_small():
    # day 1: -1 < 0 < 1 and -1 < * < 1, * confused with 0 only
    assert len(days.antichains(days.enumerate_day(1).values)) == 1 + 4 + 1
    assert len(days.antichains(days.enumerate_day(2).values)) == 98


def test_max_antichain_small_days():
    assert days.max_antichain(days.enumerate_day(0)) == 1
    assert days.max_antichain(days.enumerate_day(1)) == 2


def test_max_antichain_day2_matches_subset_scan():
    d2 = days.enumerate_day(2)
    expected = brute_force_max_antichain(list(d2.values))
    assert expected == 4  # frozen from the subset scan
    assert days.max_antichain(d2) == expected
