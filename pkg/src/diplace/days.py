"""Values born by day b (b <= 3) and the antichain structure of those posets."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from diplace import games
from diplace.games import GameId, ResourceLimitError

log = logging.getLogger(__name__)

MAX_DAY = 3
DEFAULT_PAIR_BUDGET = 50_000_000


@dataclass(frozen=True)
class DayValueSet:
    day: int
    values: tuple[GameId, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[GameId]:
        return iter(self.values)

    def __contains__(self, x: object) -> bool:
        return x in set(self.values)


def comparability_masks(values: Sequence[GameId]) -> list[int]:
    """mask[i] has bit j set iff values i and j are distinct and comparable."""
    n = len(values)
    masks = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if games.comparable(values[i], values[j]):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def antichains(values: Sequence[GameId]) -> list[tuple[GameId, ...]]:
    """Every antichain (the empty one included) of the given values."""
    masks = comparability_masks(values)
    n = len(values)
    out: list[tuple[GameId, ...]] = []

    def extend(start: int, blocked: int, chosen: list[GameId]) -> None:
        out.append(tuple(chosen))
        for i in range(start, n):
            if not (blocked >> i) & 1:
                chosen.append(values[i])
                extend(i + 1, blocked | masks[i], chosen)
                chosen.pop()

    extend(0, 0, [])
    return out


_days: dict[int, DayValueSet] = {}


def enumerate_day(b: int, pair_budget: int = DEFAULT_PAIR_BUDGET) -> DayValueSet:
    """All canonical values with birthday at most b.

    Each value born by day b is {A | B} for antichains A, B of the values
    born by day b-1; dominated options never change a value, so restricting
    to antichains loses nothing.
    """
    if not 0 <= b <= MAX_DAY:
        raise ValueError(f"day must be in 0..{MAX_DAY}, got {b}")
    cached = _days.get(b)
    if cached is not None:
        return cached
    if b == 0:
        result = DayValueSet(0, (games.ZERO,))
    else:
        prev = enumerate_day(b - 1, pair_budget)
        chains = antichains(prev.values)
        n_pairs = len(chains) ** 2
        log.info("day %d: %d antichains, %d pairs", b, len(chains), n_pairs)
        if n_pairs > pair_budget:
            raise ResourceLimitError(f"{n_pairs} option pairs exceed budget {pair_budget}")
        found = set(prev.values)
        for left in chains:
            for right in chains:
                found.add(games.canonical_pair(left, right))
        result = DayValueSet(b, tuple(games.sort_values(found)))
    _days[b] = result
    return result


def leq_matrix(values: Sequence[GameId]) -> np.ndarray:
    """Boolean matrix M[i, j] = values[i] <= values[j]."""
    n = len(values)
    m = np.zeros((n, n), dtype=bool)
    for i, x in enumerate(values):
        for j, y in enumerate(values):
            m[i, j] = games.leq(x, y)
    return m


def max_antichain(values: DayValueSet | Sequence[GameId]) -> int:
    """Size of a largest antichain.

    By Dilworth's theorem this equals n minus a maximum matching in the
    bipartite graph with an edge i -> j whenever values[i] < values[j]
    (the relation is already transitive).
    """
    vals = list(values)
    n = len(vals)
    if n == 0:
        return 0
    strict = leq_matrix(vals)
    np.fill_diagonal(strict, False)
    matching = maximum_bipartite_matching(csr_matrix(strict), perm_type="column")
    return n - int(np.count_nonzero(matching >= 0))
