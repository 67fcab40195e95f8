"""Digraph placement positions and their canonical values.

A move by Left picks a blue vertex v and deletes v together with its
out-neighbours; Right does the same with a red vertex.  Positions are the
original graph plus a bitset of surviving vertices, so a move is a single
mask operation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from diplace import games
from diplace.digraphs import ColouredDigraph
from diplace.games import GameId, Outcome


@dataclass(frozen=True)
class Position:
    graph: ColouredDigraph
    alive: int

    @classmethod
    def start(cls, g: ColouredDigraph) -> "Position":
        return cls(g, g.full)

    def moves(self, left: bool) -> list[int]:
        mask = self.alive & (self.graph.blue if left else self.graph.red)
        return [v for v in range(self.graph.n) if (mask >> v) & 1]


def move(pos: Position, v: int) -> Position:
    """Delete v and its surviving out-neighbours."""
    if not (pos.alive >> v) & 1:
        raise ValueError(f"vertex {v} is not in the position")
    return Position(pos.graph, pos.alive & ~(pos.graph.out[v] | (1 << v)))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def evaluate_position(g: ColouredDigraph, alive: int | None = None) -> GameId:
    """Canonical value of g restricted to the alive vertices (default: all)."""
    closed = [g.out[v] | (1 << v) for v in range(g.n)]
    blue, red = g.blue, g.red
    memo: dict[int, int] = {0: games.ZERO}
    canonical_pair = games.canonical_pair

    def val(a: int) -> int:
        r = memo.get(a)
        if r is None:
            left = {val(a & ~closed[v]) for v in _bits(a & blue)}
            right = {val(a & ~closed[v]) for v in _bits(a & red)}
            r = canonical_pair(left, right)
            memo[a] = r
        return r

    return val(g.full if alive is None else alive)


def evaluate(g: ColouredDigraph) -> GameId:
    """Canonical value of the placement game on g."""
    return evaluate_position(g)


def first_player_wins(g: ColouredDigraph, alive: int, left_to_move: bool, memo: dict | None = None) -> bool:
    """Plain win/loss search: does the player to move win?"""
    if memo is None:
        memo = {}
    key = (alive, left_to_move)
    r = memo.get(key)
    if r is None:
        r = False
        mask = alive & (g.blue if left_to_move else g.red)
        for v in _bits(mask):
            if not first_player_wins(g, alive & ~(g.out[v] | (1 << v)), not left_to_move, memo):
                r = True
                break
        memo[key] = r
    return r


def search_outcome(g: ColouredDigraph) -> Outcome:
    """Outcome class by direct game-tree search, without game values."""
    memo: dict = {}
    left_first = first_player_wins(g, g.full, True, memo)
    right_first = first_player_wins(g, g.full, False, memo)
    if left_first and right_first:
        return Outcome.FIRST_PLAYER_WINS
    if left_first:
        return Outcome.LEFT_WINS
    if right_first:
        return Outcome.RIGHT_WINS
    return Outcome.SECOND_PLAYER_WINS


class Unknown(int):
    """f(x) is not known; the value only certifies f(x) > bound."""

    def __new__(cls, bound: int) -> "Unknown":
        return super().__new__(cls, bound)

    def __repr__(self) -> str:
        return f"greater than {int(self)}"

    __str__ = __repr__


def min_vertices(x: GameId, witnesses: Mapping[GameId, tuple[int, str]], n_max: int) -> int | Unknown:
    """f(x) from a census complete through n_max vertices.

    ``witnesses`` maps values to (vertex count, digraph6 line) of a smallest
    witness, as kept by :class:`diplace.search.CensusStore`.
    """
    w = witnesses.get(x)
    if w is not None and w[0] <= n_max:
        return w[0]
    return Unknown(n_max)


def values_of(graphs: Iterable[ColouredDigraph]) -> list[GameId]:
    return [evaluate(g) for g in graphs]
