"""Census and targeted searches over digraph streams, and witness-file checks.

Work is cut into fixed shards that are evaluated independently (optionally in
worker processes) and merged in shard order, so every report depends only on
its parameters and never on the worker count.
"""
from __future__ import annotations

import json
import logging
import os
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from diplace import days, digraphs, games, notation, placement
from diplace.digraphs import ColouredDigraph
from diplace.games import GameId

log = logging.getLogger(__name__)

CENSUS_SHARD = 20_000
RANDOM_SHARD = 10_000
COLOUR_ISO_SHARD = digraphs.COLOUR_ISO_PER_BASE
CHECKPOINT_EVERY = 8


# ---------------------------------------------------------------- targets


@dataclass(frozen=True)
class TargetList:
    name: str
    values: tuple[GameId, ...]


TARGET_NAMES = ("day3", "day3-missing-19", "Z")


def target_list(name: str) -> TargetList:
    if name == "day3":
        return TargetList(name, days.enumerate_day(3).values)
    if name == "day3-missing-19":
        return TargetList(name, tuple(notation.missing_day3_values()))
    if name == "Z":
        return TargetList(name, (notation.z_value(),))
    raise ValueError(f"unknown target list {name!r}; choose from {', '.join(TARGET_NAMES)}")


# ---------------------------------------------------------------- store


def _better(a: tuple[int, str], b: tuple[int, str]) -> bool:
    return a < b


class CensusStore:
    """Smallest known witness per value, in order of first confirmation."""

    def __init__(self) -> None:
        self.witnesses: dict[GameId, tuple[int, str]] = {}
        self.order: list[GameId] = []
        self.counters: dict[str, int] = {}
        self._lock = threading.Lock()

    def offer(self, x: GameId, n: int, line: str) -> bool:
        """Record a witness; True if x was not covered before."""
        cand = (n, line)
        with self._lock:
            old = self.witnesses.get(x)
            if old is None:
                self.witnesses[x] = cand
                self.order.append(x)
                return True
            if _better(cand, old):
                self.witnesses[x] = cand
            return False

    def count(self, generator: str, k: int) -> None:
        with self._lock:
            self.counters[generator] = self.counters.get(generator, 0) + k

    @property
    def instances(self) -> int:
        return sum(self.counters.values())

    def covered(self, targets: Iterable[GameId]) -> list[GameId]:
        return [t for t in targets if t in self.witnesses]

    def __contains__(self, x: object) -> bool:
        return x in self.witnesses

    def __len__(self) -> int:
        return len(self.witnesses)

    def write(self, graphs_path: str | os.PathLike, values_path: str | os.PathLike) -> None:
        with open(graphs_path, "w", encoding="utf-8") as fg, open(values_path, "w", encoding="utf-8") as fv:
            for x in self.order:
                fg.write(self.witnesses[x][1] + "\n")
                fv.write(notation.format_game(x) + "\n")

    @classmethod
    def from_lines(cls, lines: Iterable[str], generator: str = "witness-file") -> "CensusStore":
        store = cls()
        k = 0
        for line in lines:
            line = line.strip()
            if not line:
                continue
            g = digraphs.parse_digraph6(line)
            store.offer(placement.evaluate(g), g.n, line)
            k += 1
        store.count(generator, k)
        return store


# ---------------------------------------------------------------- shard machinery


@dataclass
class ShardResult:
    index: int
    instances: int
    # (exported value, vertex count, digraph6 line) in first-seen order
    found: list[tuple[tuple, int, str]]
    self_negation_failures: int = 0


def _evaluate_graphs(index: int, graphs: Iterable[ColouredDigraph], check_symmetric: bool = False) -> ShardResult:
    best: dict[GameId, tuple[int, str]] = {}
    order: list[GameId] = []
    k = 0
    bad = 0
    for g in graphs:
        k += 1
        x = placement.evaluate(g)
        if check_symmetric and games.negate(x) != x:
            bad += 1
        cand = (g.n, digraphs.emit_digraph6(g))
        old = best.get(x)
        if old is None:
            best[x] = cand
            order.append(x)
        elif cand < old:
            best[x] = cand
    return ShardResult(index, k, [(games.export(x), *best[x]) for x in order], bad)


def _census_shard(args: tuple[int, int, int, int]) -> ShardResult:
    index, n, lo, hi = args
    if n < digraphs.MAX_GEN_VERTICES:
        codes = digraphs.canonical_codes(n)[lo:hi].tolist()
    else:
        codes = digraphs.canonical_code_batch(n, lo).tolist()
    return _evaluate_graphs(index, (digraphs.from_code(n, c) for c in codes))


def _random_shard(args: tuple[int, int, float, int, int]) -> ShardResult:
    index, n, p, seed, count = args
    rng = digraphs.RngStream(seed, index).generator()
    return _evaluate_graphs(index, digraphs.gen_random_batch(n, p, rng, count))


def _colour_iso_shard(args: tuple[int, int, int]) -> ShardResult:
    index, lo, hi = args
    return _evaluate_graphs(index, digraphs.gen_colour_iso_8(lo, hi), check_symmetric=True)


def _run_shards(
    fn: Callable[[tuple], ShardResult],
    shard_args: Sequence[tuple],
    workers: int,
) -> Iterator[ShardResult]:
    if workers <= 1 or len(shard_args) <= 1:
        for a in shard_args:
            yield fn(a)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, shard_args)


@dataclass
class Checkpoint:
    """Resumable cursor: the next shard to run plus everything found so far."""

    kind: str
    params: dict
    next_shard: int = 0
    counters: dict[str, int] = field(default_factory=dict)
    witnesses: list[tuple[int, str]] = field(default_factory=list)
    self_negation_failures: int = 0

    def save(self, path: str | os.PathLike) -> None:
        tmp = Path(str(path) + ".tmp")
        tmp.write_text(json.dumps(self.__dict__, sort_keys=True), encoding="utf-8")
        tmp.replace(path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "Checkpoint":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        data["witnesses"] = [tuple(w) for w in data["witnesses"]]
        return cls(**data)

    def restore(self) -> CensusStore:
        store = CensusStore()
        for n, line in self.witnesses:
            g = digraphs.parse_digraph6(line)
            store.offer(placement.evaluate(g), n, line)
        store.counters = dict(self.counters)
        return store


def _drive(
    kind: str,
    params: dict,
    fn: Callable[[tuple], ShardResult],
    shard_args: Sequence[tuple],
    counter_of: Callable[[tuple], str],
    store: CensusStore | None,
    workers: int,
    checkpoint: str | os.PathLike | None,
    resume: bool,
    stop_after: int | None = None,
) -> tuple[CensusStore, int, int]:
    """Run shards in order, merging into store. Returns (store, shards done, failures)."""
    start = 0
    failures = 0
    if resume and checkpoint is not None and Path(checkpoint).exists():
        cp = Checkpoint.load(checkpoint)
        if cp.kind != kind or cp.params != params:
            raise ValueError(f"checkpoint {checkpoint} was written for different parameters")
        store = cp.restore()
        start = cp.next_shard
        failures = cp.self_negation_failures
    if store is None:
        store = CensusStore()
    todo = list(shard_args[start:])
    if stop_after is not None:
        todo = todo[:stop_after]
    done = saved = start

    def save() -> None:
        Checkpoint(
            kind,
            params,
            done,
            dict(store.counters),
            [store.witnesses[x] for x in store.order],
            failures,
        ).save(checkpoint)

    for res in _run_shards(fn, todo, workers):
        for form, n, line in res.found:
            store.offer(games.import_(form), n, line)
        store.count(counter_of(shard_args[res.index]), res.instances)
        failures += res.self_negation_failures
        done += 1
        if checkpoint is not None and done % CHECKPOINT_EVERY == 0:
            save()
            saved = done
        log.info("%s shard %d/%d: %d values", kind, done, len(shard_args), len(store))
    if checkpoint is not None and (saved != done or not Path(checkpoint).exists()):
        save()
    return store, done, failures


# ---------------------------------------------------------------- reports


@dataclass
class CensusReport:
    n_max: int
    instances: int
    instances_by_n: dict[int, int]
    distinct_values: int
    day2_covered: int
    day3_covered: int
    missing19_covered: int
    store: CensusStore = field(repr=False)

    def summary(self) -> dict[str, object]:
        out: dict[str, object] = {
            "max_vertices": self.n_max,
            "instances": self.instances,
            "distinct_values": self.distinct_values,
            "day2_covered": self.day2_covered,
            "day3_covered": self.day3_covered,
            "missing19_covered": self.missing19_covered,
        }
        for n, k in sorted(self.instances_by_n.items()):
            out[f"instances_n{n}"] = k
        return out


@dataclass
class SearchReport:
    kind: str
    instances: int
    targets: str
    targets_total: int
    covered: list[tuple[GameId, int, str]]
    new: list[GameId]
    distinct_values: int
    self_negation_failures: int = 0
    shards_done: int = 0
    shards_total: int = 0
    store: CensusStore = field(repr=False, default_factory=CensusStore)

    @property
    def complete(self) -> bool:
        return self.shards_done == self.shards_total

    def summary(self) -> dict[str, object]:
        z = notation.z_value()
        return {
            "search": self.kind,
            "instances": self.instances,
            "targets": self.targets,
            "targets_total": self.targets_total,
            "targets_covered": len(self.covered),
            "targets_new": len(self.new),
            "distinct_values": self.distinct_values,
            "z_witnessed": int(any(x == z for x, _, _ in self.covered) or z in self.store),
            "self_negation_failures": self.self_negation_failures,
            "shards_done": self.shards_done,
            "shards_total": self.shards_total,
        }

    def lines(self) -> list[str]:
        return [f"{notation.format_game(x)}\t{line}\t{n}" for x, n, line in self.covered]


def format_summary(summary: dict[str, object]) -> str:
    return "\n".join(f"{k}={v}" for k, v in summary.items())


# ---------------------------------------------------------------- operations


def _census_shards(n_max: int) -> list[tuple[int, int, int, int]]:
    shards = []
    for n in range(n_max + 1):
        if n < digraphs.MAX_GEN_VERTICES:
            total = int(digraphs.canonical_codes(n).size)
            for lo in range(0, total, CENSUS_SHARD):
                shards.append((len(shards), n, lo, min(lo + CENSUS_SHARD, total)))
        else:
            for b in range(digraphs.batch_count(n)):
                shards.append((len(shards), n, b, b + 1))
    return shards


def census_run(
    n_max: int,
    out_graphs: str | os.PathLike | None = None,
    out_values: str | os.PathLike | None = None,
    workers: int = 1,
    checkpoint: str | os.PathLike | None = None,
    resume: bool = False,
    shard_order: Sequence[int] | None = None,
) -> CensusReport:
    """Evaluate every digraph class on at most n_max vertices.

    ``shard_order`` permutes the shards (for checking that witness minimality
    does not depend on processing order); it disables checkpointing.
    """
    if not 0 <= n_max <= digraphs.MAX_GEN_VERTICES:
        raise ValueError(f"census supports 0..{digraphs.MAX_GEN_VERTICES} vertices")
    shards = _census_shards(n_max)
    if shard_order is not None:
        shards = [(i, *shards[k][1:]) for i, k in enumerate(shard_order)]
        checkpoint = None
    store, _, _ = _drive(
        "census",
        {"n_max": n_max},
        _census_shard,
        shards,
        lambda a: f"n{a[1]}",
        None,
        workers,
        checkpoint,
        resume,
    )
    if out_graphs is not None and out_values is not None:
        store.write(out_graphs, out_values)
    d2 = days.enumerate_day(2).values
    d3 = days.enumerate_day(3).values
    missing = notation.missing_day3_values()
    by_n = {int(k[1:]): v for k, v in store.counters.items()}
    return CensusReport(
        n_max,
        store.instances,
        by_n,
        len(store),
        len(store.covered(d2)),
        len(store.covered(d3)),
        len(store.covered(missing)),
        store,
    )


def _search_report(
    kind: str,
    targets: TargetList,
    store: CensusStore,
    baseline: CensusStore | None,
    done: int,
    total: int,
    failures: int = 0,
) -> SearchReport:
    covered = [(t, *store.witnesses[t]) for t in targets.values if t in store]
    new = [t for t, _, _ in covered if baseline is None or t not in baseline]
    return SearchReport(
        kind,
        store.instances,
        targets.name,
        len(targets.values),
        covered,
        new,
        len(store),
        failures,
        done,
        total,
        store,
    )


def random_search(
    n: int,
    p: float,
    seed: int,
    count: int,
    targets: TargetList,
    workers: int = 1,
    baseline: CensusStore | None = None,
    shard_size: int = RANDOM_SHARD,
) -> SearchReport:
    """Evaluate ``count`` random graphs; shard i draws from RngStream(seed, i)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    shards = []
    for lo in range(0, max(count, 0), shard_size):
        shards.append((len(shards), n, p, seed, min(shard_size, count - lo)))
    store, done, _ = _drive(
        "random", {}, _random_shard, shards, lambda a: "random", None, workers, None, False
    )
    return _search_report("random", targets, store, baseline, done, len(shards))


def colour_iso_search(
    targets: TargetList,
    workers: int = 1,
    checkpoint: str | os.PathLike | None = None,
    resume: bool = False,
    baseline: CensusStore | None = None,
    max_shards: int | None = None,
    shard_size: int = COLOUR_ISO_SHARD,
) -> SearchReport:
    """Evaluate the 218 * 2**16 colour-isomorphic 8-vertex digraphs.

    ``max_shards`` stops early (resumable through the checkpoint).
    """
    total = digraphs.colour_iso_count()
    shards = [(i, lo, min(lo + shard_size, total)) for i, lo in enumerate(range(0, total, shard_size))]
    store, done, failures = _drive(
        "colour-iso",
        {"shard_size": shard_size},
        _colour_iso_shard,
        shards,
        lambda a: "colour-iso",
        None,
        workers,
        checkpoint,
        resume,
        stop_after=max_shards,
    )
    return _search_report("colour-iso", targets, store, baseline, done, len(shards), failures)


# ---------------------------------------------------------------- verification


@dataclass
class LineCheck:
    line: int
    ok: bool
    message: str = ""


@dataclass
class VerifyReport:
    checks: list[LineCheck]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[LineCheck]:
        return [c for c in self.checks if not c.ok]

    def summary(self) -> dict[str, object]:
        return {
            "lines": len(self.checks),
            "passed": sum(c.ok for c in self.checks),
            "failed": len(self.failures),
            "status": "ok" if self.passed else "fail",
        }


class VerifyInputError(ValueError):
    pass


def _read_lines(path: str | os.PathLike) -> list[str]:
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    return lines


def verify(graphs_path: str | os.PathLike, values_path: str | os.PathLike) -> VerifyReport:
    """Check that graph i in the digraph6 file has the value on line i."""
    graphs = _read_lines(graphs_path)
    values = _read_lines(values_path)
    if len(graphs) != len(values):
        raise VerifyInputError(f"{graphs_path} has {len(graphs)} lines but {values_path} has {len(values)}")
    checks = []
    for i, (gl, vl) in enumerate(zip(graphs, values), start=1):
        try:
            g = digraphs.parse_digraph6(gl)
        except ValueError as e:
            checks.append(LineCheck(i, False, f"digraph6 parse error: {e}"))
            continue
        try:
            want = notation.parse_value(vl)
        except ValueError as e:
            checks.append(LineCheck(i, False, f"value parse error: {e}"))
            continue
        got = placement.evaluate(g)
        if got == want:
            checks.append(LineCheck(i, True))
        else:
            checks.append(LineCheck(i, False, f"graph has value {notation.format_game(got)}, file says {vl.strip()}"))
    return VerifyReport(checks)
