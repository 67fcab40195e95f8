"""Two-coloured digraphs: digraph6 I/O, isomorphism labels and generators.

A blue vertex corresponds to a vertex with a loop in the digraph6 encoding
and a red vertex to one without.  Arcs are stored as per-vertex out-neighbour
bitsets, colours as a single blue bitset.

Canonical labels use a vertex-incremental bit order: vertex k contributes its
loop bit followed by the pairs (arc i->k, arc k->i) for i < k.  The code of a
graph on n vertices is therefore the code of its first n-1 vertices followed
by 2n-1 new bits, and the minimum code over all relabelings of a graph has a
minimal prefix.  :func:`gen_all` relies on this to grow representatives one
vertex at a time.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

import numpy as np

MAX_VERTICES = 62
MAX_LABEL_VERTICES = 8
MAX_GEN_VERTICES = 6
HEADER = ">>digraph6<<"


class DigraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ColouredDigraph:
    n: int
    out: tuple[int, ...]
    blue: int

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.out) != self.n:
            raise ValueError("one out-neighbour set per vertex required")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.out):
            if nb & ~full or (nb >> v) & 1:
                raise ValueError(f"bad out-neighbours for vertex {v}")
        if self.blue & ~full:
            raise ValueError("colour mask has bits beyond n")

    @classmethod
    def from_arcs(cls, n: int, arcs: Sequence[tuple[int, int]], blue: Sequence[int]) -> "ColouredDigraph":
        out = [0] * n
        for u, v in arcs:
            out[u] |= 1 << v
        mask = 0
        for v in blue:
            mask |= 1 << v
        return cls(n, tuple(out), mask)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def red(self) -> int:
        return self.full & ~self.blue

    def is_blue(self, v: int) -> bool:
        return bool((self.blue >> v) & 1)

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.out[u] >> v) & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(self.n) if (self.out[u] >> v) & 1]

    def relabel(self, perm: Sequence[int]) -> "ColouredDigraph":
        """Graph with vertex v renamed perm[v]."""
        out = [0] * self.n
        blue = 0
        for u in range(self.n):
            pu = perm[u]
            if (self.blue >> u) & 1:
                blue |= 1 << pu
            nb = self.out[u]
            while nb:
                low = nb & -nb
                out[pu] |= 1 << perm[low.bit_length() - 1]
                nb ^= low
        return ColouredDigraph(self.n, tuple(out), blue)

    def induced(self, vertices: Sequence[int]) -> "ColouredDigraph":
        index = {v: i for i, v in enumerate(vertices)}
        out = []
        blue = 0
        for i, v in enumerate(vertices):
            if (self.blue >> v) & 1:
                blue |= 1 << i
            out.append(sum(1 << index[w] for w in vertices if (self.out[v] >> w) & 1))
        return ColouredDigraph(len(vertices), tuple(out), blue)

    def __str__(self) -> str:
        return emit_digraph6(self)


# ---------------------------------------------------------------- digraph6


def parse_digraph6(line: str) -> ColouredDigraph:
    s = line.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER) :]
    if not s or s[0] != "&":
        raise DigraphFormatError(f"digraph6 line must start with '&': {line!r}")
    if len(s) < 2:
        raise DigraphFormatError("missing vertex count")
    if any(not 63 <= ord(c) <= 126 for c in s[1:]):
        raise DigraphFormatError(f"character outside digraph6 range in {line!r}")
    n = ord(s[1]) - 63
    if n > MAX_VERTICES:
        raise DigraphFormatError(f"vertex count {n} exceeds {MAX_VERTICES}")
    body = s[2:]
    nbits = n * n
    if len(body) != (nbits + 5) // 6:
        raise DigraphFormatError(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}")
    value = 0
    for c in body:
        value = (value << 6) | (ord(c) - 63)
    pad = 6 * len(body) - nbits
    if value & ((1 << pad) - 1):
        raise DigraphFormatError("non-zero padding bits")
    value >>= pad
    out = [0] * n
    blue = 0
    for i in range(n):
        for j in range(n):
            if (value >> (nbits - 1 - (i * n + j))) & 1:
                if i == j:
                    blue |= 1 << i
                else:
                    out[i] |= 1 << j
    return ColouredDigraph(n, tuple(out), blue)


def emit_digraph6(g: ColouredDigraph) -> str:
    n = g.n
    value = 0
    for i in range(n):
        row = g.out[i] | (g.blue & (1 << i))
        for j in range(n):
            value = (value << 1) | ((row >> j) & 1)
    nbits = n * n
    nbytes = (nbits + 5) // 6
    value <<= 6 * nbytes - nbits
    chars = [chr(((value >> (6 * (nbytes - 1 - k))) & 63) + 63) for k in range(nbytes)]
    return "&" + chr(n + 63) + "".join(chars)


def colour_swap(g: ColouredDigraph) -> ColouredDigraph:
    return ColouredDigraph(g.n, g.out, g.red)


# ---------------------------------------------------------------- labels


class CanonicalLabel(NamedTuple):
    n: int
    code: int


def _block(g: ColouredDigraph, order: Sequence[int], v: int) -> int:
    b = (g.blue >> v) & 1
    ov = g.out[v]
    for u in order:
        b = (b << 2) | (((g.out[u] >> v) & 1) << 1) | ((ov >> u) & 1)
    return b


def labelled_code(g: ColouredDigraph) -> int:
    """Vertex-incremental code of g with its current labelling."""
    code = 0
    order: list[int] = []
    for v in range(g.n):
        code = (code << (2 * v + 1)) | _block(g, order, v)
        order.append(v)
    return code


def from_code(n: int, code: int) -> ColouredDigraph:
    out = [0] * n
    blue = 0
    pos = n * n
    for k in range(n):
        pos -= 1
        if (code >> pos) & 1:
            blue |= 1 << k
        for i in range(k):
            pos -= 1
            if (code >> pos) & 1:
                out[i] |= 1 << k
            pos -= 1
            if (code >> pos) & 1:
                out[k] |= 1 << i
    return ColouredDigraph(n, tuple(out), blue)


def canonical_label(g: ColouredDigraph) -> CanonicalLabel:
    """Minimum vertex-incremental code over all relabelings (n <= 8).

    Vertices are placed one position at a time; only placements achieving
    the smallest block so far survive, which is exact because earlier blocks
    are more significant.
    """
    if g.n > MAX_LABEL_VERTICES:
        raise ValueError(f"canonical labels supported for n <= {MAX_LABEL_VERTICES}")
    frontier: list[tuple[int, ...]] = [()]
    code = 0
    for k in range(g.n):
        best = None
        nxt: list[tuple[int, ...]] = []
        for order in frontier:
            used = set(order)
            for v in range(g.n):
                if v in used:
                    continue
                b = _block(g, order, v)
                if best is None or b < best:
                    best = b
                    nxt = [order + (v,)]
                elif b == best:
                    nxt.append(order + (v,))
        code = (code << (2 * k + 1)) | best
        frontier = nxt
    return CanonicalLabel(g.n, code)


def canonical_form(g: ColouredDigraph) -> ColouredDigraph:
    lab = canonical_label(g)
    return from_code(lab.n, lab.code)


def is_isomorphic(g: ColouredDigraph, h: ColouredDigraph) -> bool:
    return g.n == h.n and canonical_label(g) == canonical_label(h)


# ---------------------------------------------------------------- exhaustive generation


def _seq_index(a: int, b: int) -> int:
    """Position of matrix entry (a, b) in the vertex-incremental order."""
    if a == b:
        return a * a
    if a < b:  # arc a -> b belongs to the block of b
        return b * b + 1 + 2 * a
    return a * a + 2 + 2 * b


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> np.ndarray:
    """Byte lookup tables mapping a code to its image under each relabeling.

    Shape (perms, chunks, 256); identity excluded.
    """
    nbits = n * n
    chunks = (nbits + 7) // 8
    perms = [p for p in itertools.permutations(range(n)) if list(p) != list(range(n))]
    tables = np.zeros((len(perms), chunks, 256), dtype=np.uint64)
    lsb = [[nbits - 1 - _seq_index(a, b) for b in range(n)] for a in range(n)]
    src_to_entry = {}
    for a in range(n):
        for b in range(n):
            src_to_entry[lsb[a][b]] = (a, b)
    for pi, p in enumerate(perms):
        # new graph H[i][j] = G[p[i]][p[j]]; source entry (a, b) lands at (inv[a], inv[b])
        inv = [0] * n
        for i, v in enumerate(p):
            inv[v] = i
        dest = np.zeros(nbits, dtype=np.uint64)
        for s in range(nbits):
            a, b = src_to_entry[s]
            dest[s] = np.uint64(1) << np.uint64(lsb[inv[a]][inv[b]])
        for c in range(chunks):
            for byte in range(256):
                acc = np.uint64(0)
                for k in range(8):
                    s = 8 * c + k
                    if s < nbits and (byte >> k) & 1:
                        acc |= dest[s]
                tables[pi, c, byte] = acc
    return tables


def _keep_canonical(codes: np.ndarray, n: int) -> np.ndarray:
    if n <= 1 or codes.size == 0:
        return codes
    tables = _perm_tables(n)
    chunks = tables.shape[1]
    byte_mask = np.uint64(255)
    parts = [((codes >> np.uint64(8 * c)) & byte_mask).astype(np.intp) for c in range(chunks)]
    for pi in range(tables.shape[0]):
        img = tables[pi, 0][parts[0]]
        for c in range(1, chunks):
            img |= tables[pi, c][parts[c]]
        keep = codes <= img
        if not keep.all():
            codes = codes[keep]
            parts = [p[keep] for p in parts]
            if codes.size == 0:
                break
    return codes


def _children(parents: np.ndarray, n: int) -> np.ndarray:
    width = 2 * n - 1
    ext = np.arange(1 << width, dtype=np.uint64)
    return ((parents[:, None] << np.uint64(width)) | ext[None, :]).ravel()


@lru_cache(maxsize=None)
def canonical_codes(n: int) -> np.ndarray:
    """Sorted canonical codes of all 2-coloured digraphs on n vertices."""
    if not 0 <= n <= MAX_GEN_VERTICES:
        raise ValueError(f"exhaustive generation supports n in 0..{MAX_GEN_VERTICES}")
    if n == 0:
        return np.zeros(1, dtype=np.uint64)
    return np.sort(np.concatenate(list(iter_canonical_code_batches(n))))


BATCH_PARENTS = 1024


def batch_count(n: int, batch_parents: int = BATCH_PARENTS) -> int:
    if n == 0:
        return 1
    return (int(canonical_codes(n - 1).size) + batch_parents - 1) // batch_parents


def canonical_code_batch(n: int, index: int, batch_parents: int = BATCH_PARENTS) -> np.ndarray:
    """Canonical codes on n vertices whose (n-1)-vertex prefix is in parent batch ``index``."""
    if n == 0:
        return np.zeros(1, dtype=np.uint64)
    parents = canonical_codes(n - 1)
    start = index * batch_parents
    return _keep_canonical(_children(parents[start : start + batch_parents], n), n)


def iter_canonical_code_batches(n: int, batch_parents: int = BATCH_PARENTS) -> Iterator[np.ndarray]:
    """Canonical codes on n vertices, in batches grown from (n-1)-vertex parents."""
    for b in range(batch_count(n, batch_parents)):
        yield canonical_code_batch(n, b, batch_parents)


def gen_all(n: int) -> Iterator[ColouredDigraph]:
    """One representative per isomorphism class of 2-coloured digraphs on n vertices."""
    if n == MAX_GEN_VERTICES:
        for batch in iter_canonical_code_batches(n):
            for c in batch.tolist():
                yield from_code(n, c)
        return
    for c in canonical_codes(n).tolist():
        yield from_code(n, c)


# ---------------------------------------------------------------- random graphs


@dataclass(frozen=True)
class RngStream:
    seed: int
    stream_index: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_index,))
        return np.random.Generator(np.random.PCG64(ss))


def gen_random(n: int, p: float, rng: np.random.Generator) -> ColouredDigraph:
    """Erdos-Renyi-Gilbert digraph with uniformly random colours."""
    return next(gen_random_batch(n, p, rng, 1))


def gen_random_batch(n: int, p: float, rng: np.random.Generator, count: int) -> Iterator[ColouredDigraph]:
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    if count <= 0:
        return
    arcs = rng.random((count, n, n)) < p
    colours = rng.integers(0, 2, size=(count, n), dtype=np.int64)
    weights = np.int64(1) << np.arange(n, dtype=np.int64)
    idx = np.arange(n)
    arcs[:, idx, idx] = False
    rows = (arcs.astype(np.int64) * weights).sum(axis=2)
    blue = (colours * weights).sum(axis=1)
    for k in range(count):
        yield ColouredDigraph(n, tuple(rows[k].tolist()), int(blue[k]))


# ---------------------------------------------------------------- colour-isomorphic graphs


@lru_cache(maxsize=None)
def loopless_classes(n: int = 4) -> tuple[tuple[int, ...], ...]:
    """Out-neighbour sets of one representative per loopless digraph class on n vertices."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen: dict[CanonicalLabel, tuple[int, ...]] = {}
    for mask in range(1 << len(pairs)):
        out = [0] * n
        for k, (i, j) in enumerate(pairs):
            if (mask >> k) & 1:
                out[i] |= 1 << j
        g = ColouredDigraph(n, tuple(out), 0)
        lab = canonical_label(g)
        if lab not in seen:
            seen[lab] = from_code(n, lab.code).out
    return tuple(seen[k] for k in sorted(seen))


COLOUR_ISO_PER_BASE = 1 << 16


def colour_iso_graph(base: Sequence[int], subset: int) -> ColouredDigraph:
    """Blue copy of base on 0..3, red copy on 4..7, cross arcs chosen by subset.

    Bit 4*i + j of subset adds the arcs b_i -> r_j and r_i -> b_j.
    """
    out = [0] * 8
    for i in range(4):
        out[i] = base[i]
        out[i + 4] = base[i] << 4
    for i in range(4):
        for j in range(4):
            if (subset >> (4 * i + j)) & 1:
                out[i] |= 1 << (j + 4)
                out[i + 4] |= 1 << j
    return ColouredDigraph(8, tuple(out), 0x0F)


def colour_iso_count() -> int:
    return len(loopless_classes(4)) * COLOUR_ISO_PER_BASE


def gen_colour_iso_8(start: int = 0, stop: int | None = None) -> Iterator[ColouredDigraph]:
    """The 218 * 2**16 labelled colour-isomorphic 8-vertex digraphs, in index order.

    Index k corresponds to base class k // 2**16 and cross-arc subset k % 2**16.
    """
    bases = loopless_classes(4)
    total = len(bases) * COLOUR_ISO_PER_BASE
    stop = total if stop is None else min(stop, total)
    for k in range(start, stop):
        yield colour_iso_graph(bases[k >> 16], k & 0xFFFF)
