import itertools
import random

import pytest

from diplace import digraphs
from diplace.digraphs import ColouredDigraph, DigraphFormatError


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> ColouredDigraph:
    out = []
    for u in range(n):
        out.append(sum(1 << v for v in range(n) if v != u and rng.random() < p))
    return ColouredDigraph(n, tuple(out), rng.getrandbits(n) if n else 0)


def brute_label(g: ColouredDigraph) -> int:
    return min(digraphs.labelled_code(g.relabel(p)) for p in itertools.permutations(range(g.n)))


def test_digraph6_examples():
    blue = digraphs.parse_digraph6("&@_")
    assert blue.n == 1 and blue.blue == 1
    assert digraphs.emit_digraph6(blue) == "&@_"
    red = digraphs.parse_digraph6("&@?")
    assert red.n == 1 and red.blue == 0
    g = ColouredDigraph.from_arcs(2, [(0, 1)], blue=[0])
    assert digraphs.emit_digraph6(g) == "&Ao"
    assert digraphs.parse_digraph6("&Ao") == g
    assert digraphs.emit_digraph6(ColouredDigraph(0, (), 0)) == "&?"


def test_digraph6_header_tolerated():
    assert digraphs.parse_digraph6(">>digraph6<<&Ao") == digraphs.parse_digraph6("&Ao")


@pytest.mark.parametrize("bad", ["", "Ao", "&", "&A", "&Aoo", "&A~", "&@`", "&~?", "&A\x7f"])
def test_digraph6_errors(bad):
    with pytest.raises(DigraphFormatError):
        digraphs.parse_digraph6(bad)


def test_digraph6_round_trip_random():
    rng = random.Random(1)
    for _ in range(500):
        g = random_graph(rng, rng.randint(0, 62), rng.random())
        line = digraphs.emit_digraph6(g)
        assert digraphs.parse_digraph6(line) == g
        assert digraphs.emit_digraph6(digraphs.parse_digraph6(line)) == line


def test_graph_validation():
    with pytest.raises(ValueError):
        ColouredDigraph(1, (1,), 0)  # self-arc
    with pytest.raises(ValueError):
        ColouredDigraph(63, (0,) * 63, 0)


def test_colour_swap():
    blue = digraphs.parse_digraph6("&@_")
    assert digraphs.colour_swap(blue) == digraphs.parse_digraph6("&@?")
    rng = random.Random(2)
    for _ in range(200):
        g = random_graph(rng, rng.randint(0, 9))
        assert digraphs.colour_swap(digraphs.colour_swap(g)) == g
        assert digraphs.colour_swap(g).out == g.out


def test_single_vertex_labels():
    b = digraphs.canonical_label(digraphs.parse_digraph6("&@_"))
    r = digraphs.canonical_label(digraphs.parse_digraph6("&@?"))
    assert b != r
    assert (b.code, r.code) == (1, 0)


def test_two_vertex_graphs_form_ten_classes():
    labels = set()
    for out0, out1, blue in itertools.product((0, 2), (0, 1), range(4)):
        labels.add(digraphs.canonical_label(ColouredDigraph(2, (out0, out1), blue)))
    assert len(labels) == 10


def test_label_matches_brute_force_minimum():
    rng = random.Random(3)
    for _ in range(150):
        g = random_graph(rng, rng.randint(0, 6), rng.random())
        assert digraphs.canonical_label(g).code == brute_label(g)


def test_label_invariant_under_relabelling():
    rng = random.Random(4)
    for _ in range(20):
        g = random_graph(rng, rng.choice([5, 6, 7, 8]))
        lab = digraphs.canonical_label(g)
        for _ in range(100):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert digraphs.canonical_label(g.relabel(perm)) == lab


def test_label_separates_non_isomorphic():
    # 3-vertex classes by brute-force isomorphism testing
    graphs = []
    for mask in range(1 << 9):
        out = [0, 0, 0]
        blue = 0
        bit = 0
        for i in range(3):
            for j in range(3):
                if (mask >> bit) & 1:
                    if i == j:
                        blue |= 1 << i
                    else:
                        out[i] |= 1 << j
                bit += 1
        graphs.append(ColouredDigraph(3, tuple(out), blue))
    classes: list[ColouredDigraph] = []
    for g in graphs:
        if not any(
            g.relabel(p) == h for h in classes for p in itertools.permutations(range(3))
        ):
            classes.append(g)
    assert len(classes) == 104
    assert len({digraphs.canonical_label(g) for g in graphs}) == 104


def test_canonical_label_size_limit():
    with pytest.raises(ValueError):
        digraphs.canonical_label(ColouredDigraph(9, (0,) * 9, 0))


@pytest.mark.parametrize("n, count", [(0, 1), (1, 2), (2, 10), (3, 104), (4, 3044), (5, 291968)])
def test_gen_all_counts(n, count):
    assert digraphs.canonical_codes(n).size == count


def test_gen_all_representatives_are_canonical_and_distinct():
    for n in range(5):
        seen = set()
        for g in digraphs.gen_all(n):
            lab = digraphs.canonical_label(g)
            assert lab.code == digraphs.labelled_code(g)
            seen.add(lab)
        assert len(seen) == digraphs.canonical_codes(n).size


def test_gen_all_n5_sample_is_canonical():
    codes = digraphs.canonical_codes(5)
    for c in codes[::997].tolist():
        g = digraphs.from_code(5, c)
        assert digraphs.canonical_label(g).code == c


def test_gen_all_rejects_unsupported():
    with pytest.raises(ValueError):
        list(digraphs.gen_all(7))


def test_code_round_trip():
    rng = random.Random(5)
    for _ in range(300):
        g = random_graph(rng, rng.randint(0, 8))
        assert digraphs.from_code(g.n, digraphs.labelled_code(g)) == g


def test_gen_random_extremes_and_determinism():
    rng = digraphs.RngStream(9).generator()
    for g in digraphs.gen_random_batch(6, 0.0, rng, 50):
        assert not any(g.out)
    rng = digraphs.RngStream(9).generator()
    for g in digraphs.gen_random_batch(6, 1.0, rng, 50):
        assert all(g.out[v] == g.full & ~(1 << v) for v in range(6))
    a = digraphs.gen_random(8, 0.5, digraphs.RngStream(42, 3).generator())
    b = digraphs.gen_random(8, 0.5, digraphs.RngStream(42, 3).generator())
    c = digraphs.gen_random(8, 0.5, digraphs.RngStream(42, 4).generator())
    assert a == b
    assert a != c
    with pytest.raises(ValueError):
        digraphs.gen_random(3, 1.5, rng)


def test_gen_random_arc_frequency():
    rng = digraphs.RngStream(11).generator()
    arcs = blue = 0
    k = 2000
    for g in digraphs.gen_random_batch(5, 0.3, rng, k):
        arcs += sum(bin(o).count("1") for o in g.out)
        blue += bin(g.blue).count("1")
    assert abs(arcs / (k * 20) - 0.3) < 0.02
    assert abs(blue / (k * 5) - 0.5) < 0.03


def test_colour_iso_base_classes():
    bases = digraphs.loopless_classes(4)
    assert len(bases) == 218
    assert digraphs.colour_iso_count() == 14286848


def test_colour_iso_graphs_have_swapping_automorphism():
    rng = random.Random(6)
    swap = [4, 5, 6, 7, 0, 1, 2, 3]
    total = digraphs.colour_iso_count()
    for _ in range(40):
        k = rng.randrange(total)
        g = next(digraphs.gen_colour_iso_8(k, k + 1))
        assert g.relabel(swap) == digraphs.colour_swap(g)
        assert digraphs.canonical_label(g) == digraphs.canonical_label(digraphs.colour_swap(g))


def test_colour_iso_stream_slicing():
    first = list(digraphs.gen_colour_iso_8(0, 5))
    assert len(first) == 5
    assert first[0] == digraphs.colour_iso_graph(digraphs.loopless_classes(4)[0], 0)
    assert len(list(digraphs.gen_colour_iso_8(14286840))) == 8
