import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from diplace import days, games
from diplace.games import LiteralGame, Outcome, ResourceLimitError
from diplace.notation import parse_game, parse_value, z_value

ZERO, STAR, UP = games.ZERO, games.STAR, games.UP


def test_leq_examples_against_brute_force():
    assert games.leq(ZERO, ZERO)
    # frozen from the brute-force solver on the difference game
    assert oracles.bf_leq(oracles.ZERO, oracles.STAR) is False
    assert oracles.bf_leq(oracles.STAR, oracles.ZERO) is False
    assert oracles.bf_leq(oracles.ZERO, oracles.UP) is True
    assert oracles.bf_leq(oracles.UP, oracles.ZERO) is False
    assert games.leq(ZERO, STAR) is False
    assert games.leq(STAR, ZERO) is False
    assert games.leq(ZERO, UP) is True
    assert games.leq(UP, ZERO) is False


def test_eq_examples():
    assert games.eq(ZERO, ZERO)
    assert games.canonicalize(parse_game("{-1|1}")) == ZERO
    assert games.add(UP, STAR) == games.canonical_pair([ZERO, STAR], [ZERO])


def test_negate_examples():
    assert games.negate(ZERO) == ZERO
    assert games.negate(games.ONE) == games.NEG_ONE
    z = z_value()
    assert games.negate(z) == z


def test_add_examples():
    assert games.add(ZERO, STAR) == STAR
    assert games.add(UP, STAR) == games.UP_STAR
    assert games.left_options(games.UP_STAR) == (ZERO, STAR)
    assert games.right_options(games.UP_STAR) == (ZERO,)
    assert games.add(games.ONE, games.ONE) == games.integer(2)


def test_canonicalize_examples():
    assert games.canonicalize(LiteralGame()) == ZERO
    assert games.canonicalize(parse_game("{0,*|0}")) == games.add(UP, STAR)
    lit = parse_game("{^*,^,{1|*,0}|{0,*|-1},v,v*}")
    z = games.canonicalize(lit)
    assert set(games.left_options(z)) == {games.canonicalize(a) for a in lit.left}
    assert set(games.right_options(z)) == {games.canonicalize(b) for b in lit.right}


def test_canonicalize_budget():
    g = games.to_literal(games.integer(5))
    with pytest.raises(ResourceLimitError):
        games.canonicalize(g, node_budget=3)


def test_canonicalize_idempotent_on_literal_expansion():
    for x in days.enumerate_day(3).values[::37]:
        assert games.canonicalize(games.to_literal(x)) == x


def test_birthday_examples():
    assert games.birthday(ZERO) == 0
    assert games.birthday(games.nimber(2)) == 2
    assert games.birthday(z_value()) == 3


def test_outcome_examples():
    assert games.outcome(ZERO) is Outcome.SECOND_PLAYER_WINS
    assert games.outcome(STAR) is Outcome.FIRST_PLAYER_WINS
    assert oracles.bf_outcome(oracles.UP) == "L"
    assert games.outcome(UP) is Outcome.LEFT_WINS
    assert games.outcome(games.NEG_ONE) is Outcome.RIGHT_WINS


def test_named_values():
    assert UP == parse_value("{0|*}")
    assert games.nimber(2) == parse_value("{0,*|0,*}")
    assert games.dyadic(3, 3) == parse_value("{1/4|1/2}")
    assert games.dyadic(-1, 1) == parse_value("{-1|0}")
    assert games.multiple(UP, 2) == parse_value("{0|^*}")
    assert games.number_value(games.dyadic(-5, 2)) == (-5, 2)
    assert games.nim_value(games.nimber(4)) == 4
    assert games.nim_value(UP) is None


def test_dyadic_numbers_match_halving_chain():
    # {0|1}=1/2, {0|1/2}=1/4, ... written out in braces only
    text = "1"
    for k in range(1, 6):
        text = "{0|" + text + "}"
        assert games.canonicalize(parse_game(text)) == games.dyadic(1, k)


def test_random_literals_match_brute_force():
    rng = random.Random(20241015)
    for _ in range(2000):
        a = oracles.random_literal(rng, rng.randint(1, 6))
        b = oracles.random_literal(rng, rng.randint(1, 12 - a.node_count()))
        x, y = games.canonicalize(a), games.canonicalize(b)
        assert (x == y) == oracles.bf_eq(a, b)
        assert games.leq(x, y) == oracles.bf_leq(a, b)


def test_outcome_matches_brute_force():
    rng = random.Random(7)
    for _ in range(1000):
        a = oracles.random_literal(rng, 12)
        assert games.outcome(games.canonicalize(a)).value == oracles.bf_outcome(a)


def test_export_import_round_trip():
    for x in days.enumerate_day(3).values[::11]:
        assert games.import_(games.export(x)) == x


def test_order_key_is_total_and_deterministic():
    vals = list(days.enumerate_day(3).values)
    keys = [games.order_key(x) for x in vals]
    assert len(set(keys)) == len(vals)
    assert games.sort_values(reversed(vals)) == games.sort_values(vals)


day2 = st.sampled_from(days.enumerate_day(2).values)


@settings(max_examples=300, deadline=None)
@given(day2, day2, day2)
def test_sum_laws(x, y, z):
    assert games.add(x, y) == games.add(y, x)
    assert games.add(games.add(x, y), z) == games.add(x, games.add(y, z))
    assert games.add(x, games.negate(x)) == ZERO
    assert games.add(x, ZERO) == x


@settings(max_examples=300, deadline=None)
@given(day2, day2)
def test_duality_and_eq_consistency(x, y):
    assert games.leq(x, y) == games.leq(games.negate(y), games.negate(x))
    assert (x == y) == (games.leq(x, y) and games.leq(y, x))
    assert games.negate(games.negate(x)) == x
