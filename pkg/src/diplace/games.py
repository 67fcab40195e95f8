"""Canonical-form short game values.

Every value lives in a process-global store and is referred to by a dense
integer id.  Two ids are equal exactly when the values are equal, so value
equality is integer comparison.  The store keeps, per id, the sorted tuple of
left option ids and right option ids of the canonical form.

Usage::

    from diplace import games

    up = games.intern((games.ZERO,), (games.STAR,))
    games.add(up, games.STAR)      # canonical {0,*|0}
    games.leq(games.ZERO, up)      # True
"""
from __future__ import annotations

import enum
import sys
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

GameId = int


class ResourceLimitError(RuntimeError):
    """Raised when a computation exceeds its configured budget."""


@dataclass(frozen=True)
class LiteralGame:
    """An unsimplified game tree, as written or as built by a ruleset."""

    left: tuple["LiteralGame", ...] = ()
    right: tuple["LiteralGame", ...] = ()

    def node_count(self) -> int:
        return 1 + sum(g.node_count() for g in self.left) + sum(g.node_count() for g in self.right)

    def formal_birthday(self) -> int:
        opts = self.left + self.right
        return 1 + max(g.formal_birthday() for g in opts) if opts else 0


class Outcome(enum.Enum):
    LEFT_WINS = "L"
    RIGHT_WINS = "R"
    FIRST_PLAYER_WINS = "N"
    SECOND_PLAYER_WINS = "P"

    def describe(self) -> str:
        return {
            "L": "Left wins",
            "R": "Right wins",
            "N": "first player wins",
            "P": "second player wins",
        }[self.value]


class _Store:
    def __init__(self) -> None:
        self.left: list[tuple[int, ...]] = []
        self.right: list[tuple[int, ...]] = []
        self.birthday: list[int] = []
        self.index: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
        self.lock = threading.Lock()

    def intern(self, left: tuple[int, ...], right: tuple[int, ...]) -> int:
        key = (left, right)
        gid = self.index.get(key)
        if gid is not None:
            return gid
        with self.lock:
            gid = self.index.get(key)
            if gid is None:
                gid = len(self.left)
                self.left.append(left)
                self.right.append(right)
                opts = left + right
                self.birthday.append(1 + max(self.birthday[o] for o in opts) if opts else 0)
                self.index[key] = gid
        return gid


_store = _Store()
_L = _store.left
_R = _store.right
_leq_cache: dict[int, bool] = {}
_neg_cache: dict[int, int] = {}
_add_cache: dict[tuple[int, int], int] = {}

# ids never exceed this; leq memo keys pack the ordered pair into one int
_KEY_SHIFT = 32

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


def intern(left: Iterable[int], right: Iterable[int]) -> GameId:
    """Intern a game whose options are canonical and which is itself canonical.

    No simplification is performed; use :func:`canonical_pair` when the
    options may be dominated or reversible.
    """
    return _store.intern(tuple(sorted(set(left))), tuple(sorted(set(right))))


def left_options(x: GameId) -> tuple[int, ...]:
    return _L[x]


def right_options(x: GameId) -> tuple[int, ...]:
    return _R[x]


def birthday(x: GameId) -> int:
    return _store.birthday[x]


def store_size() -> int:
    return len(_L)


def is_valid(x: int) -> bool:
    return 0 <= x < len(_L)


ZERO = intern((), ())
STAR = intern((ZERO,), (ZERO,))
ONE = intern((ZERO,), ())
NEG_ONE = intern((), (ZERO,))
UP = intern((ZERO,), (STAR,))
DOWN = intern((STAR,), (ZERO,))
UP_STAR = intern((ZERO, STAR), (ZERO,))
DOWN_STAR = intern((ZERO,), (ZERO, STAR))


# ---------------------------------------------------------------- order


def leq(x: GameId, y: GameId) -> bool:
    """Game order: x <= y iff no x^L >= y and no y^R <= x."""
    if x == y:
        return True
    key = (x << _KEY_SHIFT) | y
    r = _leq_cache.get(key)
    if r is None:
        r = True
        for xl in _L[x]:
            if leq(y, xl):
                r = False
                break
        if r:
            for yr in _R[y]:
                if leq(yr, x):
                    r = False
                    break
        _leq_cache[key] = r
    return r


def eq(x: GameId, y: GameId) -> bool:
    return x == y


def lt(x: GameId, y: GameId) -> bool:
    return x != y and leq(x, y)


def comparable(x: GameId, y: GameId) -> bool:
    return leq(x, y) or leq(y, x)


def outcome(x: GameId) -> Outcome:
    le0 = leq(x, ZERO)
    ge0 = leq(ZERO, x)
    if le0 and ge0:
        return Outcome.SECOND_PLAYER_WINS
    if ge0:
        return Outcome.LEFT_WINS
    if le0:
        return Outcome.RIGHT_WINS
    return Outcome.FIRST_PLAYER_WINS


# Comparisons against a form (left ids, right ids) that is not yet interned.
# Only the top level is a pair; everything below is canonical and memoized.


def _pair_leq_id(left: Sequence[int], right: Sequence[int], y: GameId) -> bool:
    for gl in left:
        if leq(y, gl):
            return False
    for yr in _R[y]:
        if _id_leq_pair(yr, left, right):
            return False
    return True


def _id_leq_pair(x: GameId, left: Sequence[int], right: Sequence[int]) -> bool:
    for gr in right:
        if leq(gr, x):
            return False
    for xl in _L[x]:
        if _pair_leq_id(left, right, xl):
            return False
    return True


# ---------------------------------------------------------------- simplification


def _maximal(ids: Iterable[int]) -> list[int]:
    ids = sorted(set(ids))
    return [a for a in ids if not any(b != a and leq(a, b) for b in ids)]


def _minimal(ids: Iterable[int]) -> list[int]:
    ids = sorted(set(ids))
    return [a for a in ids if not any(b != a and leq(b, a) for b in ids)]


def canonical_pair(left: Iterable[int], right: Iterable[int]) -> GameId:
    """Canonical id of {left | right} where every option is already canonical.

    Dominated options are dropped and reversible options bypassed until
    neither rule applies.
    """
    left = _maximal(left)
    right = _minimal(right)
    while True:
        changed = False
        new_left: list[int] = []
        for gl in left:
            for glr in _R[gl]:
                if _id_leq_pair(glr, left, right):
                    new_left.extend(_L[glr])
                    changed = True
                    break
            else:
                new_left.append(gl)
        new_right: list[int] = []
        for gr in right:
            for grl in _L[gr]:
                if _pair_leq_id(left, right, grl):
                    new_right.extend(_R[grl])
                    changed = True
                    break
            else:
                new_right.append(gr)
        if not changed:
            break
        left = _maximal(new_left)
        right = _minimal(new_right)
    return _store.intern(tuple(left), tuple(right))


def canonicalize(g: LiteralGame, node_budget: int | None = 1_000_000) -> GameId:
    """Canonical id of a literal game tree."""
    if node_budget is not None and g.node_count() > node_budget:
        raise ResourceLimitError(f"game tree exceeds node budget of {node_budget}")
    memo: dict[int, int] = {}

    def go(h: LiteralGame) -> int:
        k = id(h)
        r = memo.get(k)
        if r is None:
            r = canonical_pair([go(a) for a in h.left], [go(b) for b in h.right])
            memo[k] = r
        return r

    return go(g)


def to_literal(x: GameId) -> LiteralGame:
    """Expand a canonical id into its literal tree (shared subtrees)."""
    memo: dict[int, LiteralGame] = {}

    def go(y: int) -> LiteralGame:
        r = memo.get(y)
        if r is None:
            r = LiteralGame(tuple(go(a) for a in _L[y]), tuple(go(b) for b in _R[y]))
            memo[y] = r
        return r

    return go(x)


# ---------------------------------------------------------------- arithmetic


def negate(x: GameId) -> GameId:
    r = _neg_cache.get(x)
    if r is None:
        r = _store.intern(
            tuple(sorted(negate(b) for b in _R[x])),
            tuple(sorted(negate(a) for a in _L[x])),
        )
        _neg_cache[x] = r
        _neg_cache[r] = x
    return r


def add(x: GameId, y: GameId) -> GameId:
    """Disjunctive sum."""
    if x == ZERO:
        return y
    if y == ZERO:
        return x
    key = (x, y) if x <= y else (y, x)
    r = _add_cache.get(key)
    if r is None:
        left = [add(a, y) for a in _L[x]] + [add(x, a) for a in _L[y]]
        right = [add(b, y) for b in _R[x]] + [add(x, b) for b in _R[y]]
        r = canonical_pair(left, right)
        _add_cache[key] = r
    return r


def subtract(x: GameId, y: GameId) -> GameId:
    return add(x, negate(y))


def integer(n: int) -> GameId:
    g = ZERO
    step = ONE if n >= 0 else NEG_ONE
    for _ in range(abs(n)):
        g = add(g, step)
    return g


def nimber(n: int) -> GameId:
    opts: list[int] = []
    for _ in range(n):
        opts.append(intern(opts, opts))
    return intern(opts, opts)


def dyadic(numerator: int, log_denominator: int) -> GameId:
    """The number numerator / 2**log_denominator."""
    while log_denominator > 0 and numerator % 2 == 0:
        numerator //= 2
        log_denominator -= 1
    if log_denominator == 0:
        return integer(numerator)
    lo = dyadic(numerator - 1, log_denominator)
    hi = dyadic(numerator + 1, log_denominator)
    return intern((lo,), (hi,))


def multiple(x: GameId, k: int) -> GameId:
    g = ZERO
    base = x if k >= 0 else negate(x)
    for _ in range(abs(k)):
        g = add(g, base)
    return g


# ---------------------------------------------------------------- recognizers


_number_cache: dict[int, tuple[int, int] | None] = {}


def number_value(x: GameId) -> tuple[int, int] | None:
    """(numerator, log2 denominator) if x is a number, else None.

    The fraction is in lowest terms.
    """
    if x in _number_cache:
        return _number_cache[x]
    res: tuple[int, int] | None = None
    lo, hi = _L[x], _R[x]
    if not lo and not hi:
        res = (0, 0)
    elif len(lo) <= 1 and len(hi) <= 1:
        lv = number_value(lo[0]) if lo else None
        hv = number_value(hi[0]) if hi else None
        if lo and hi and lv is not None and hv is not None:
            # canonical m/2^(k+1) is {(m-1)/2^(k+1) | (m+1)/2^(k+1)}, reduced
            (ln, lk), (hn, hk) = lv, hv
            k = max(lk, hk)
            a, b = ln << (k - lk), hn << (k - hk)
            if b - a == 1:
                res = _reduce(2 * a + 1, k + 1)
        elif lo and not hi and lv is not None and lv[1] == 0 and lv[0] >= 0:
            res = (lv[0] + 1, 0)
        elif hi and not lo and hv is not None and hv[1] == 0 and hv[0] <= 0:
            res = (hv[0] - 1, 0)
    _number_cache[x] = res
    return res


def _reduce(num: int, k: int) -> tuple[int, int]:
    while k > 0 and num % 2 == 0:
        num //= 2
        k -= 1
    return num, k


def is_number(x: GameId) -> bool:
    return number_value(x) is not None


def is_integer(x: GameId) -> bool:
    v = number_value(x)
    return v is not None and v[1] == 0


def nim_value(x: GameId) -> int | None:
    """n if x is the nimber *n, else None."""
    if _L[x] != _R[x]:
        return None
    vals = []
    for o in _L[x]:
        v = nim_value(o)
        if v is None:
            return None
        vals.append(v)
    n = len(vals)
    return n if sorted(vals) == list(range(n)) else None


def export(x: GameId) -> tuple:
    """Structural form as nested tuples, stable across processes."""
    memo: dict[int, tuple] = {}

    def go(y: int) -> tuple:
        r = memo.get(y)
        if r is None:
            r = (tuple(go(a) for a in _L[y]), tuple(go(b) for b in _R[y]))
            memo[y] = r
        return r

    return go(x)


def import_(form: tuple) -> GameId:
    """Inverse of :func:`export` (the form must be canonical)."""
    left, right = form
    return intern([import_(a) for a in left], [import_(b) for b in right])


_order_key_cache: dict[int, tuple] = {}


def order_key(x: GameId) -> tuple:
    """Deterministic total-order key: birthday, then ordered option lists."""
    r = _order_key_cache.get(x)
    if r is None:
        r = (
            _store.birthday[x],
            tuple(sorted(order_key(a) for a in _L[x])),
            tuple(sorted(order_key(b) for b in _R[x])),
        )
        _order_key_cache[x] = r
    return r


def sort_values(ids: Iterable[int]) -> list[int]:
    return sorted(set(ids), key=order_key)
