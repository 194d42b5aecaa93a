import itertools

import pytest

from elimcanon import (
    ColouredGraph,
    Graph,
    brute_force_isomorphic,
    canon_coloured,
    decode_encoding,
    iso_coloured,
    permute_coloured,
    uniform_colouring,
)
from elimcanon.canon import canonical_key, stable_signature
from elimcanon.corpus import (
    all_graphs,
    graphs_upto_iso,
    random_colouring_values,
    random_graph,
    random_permutation,
)


def coloured(g, values):
    return ColouredGraph(g, tuple(frozenset(v) for v in values))


class TestEncodingBasics:
    def test_single_vertex_fixed_encoding(self):
        cg = coloured(Graph(1, frozenset()), [{1}])
        assert canon_coloured(cg).text == "n=1;c=1;e="

    def test_empty_graph(self):
        assert canon_coloured(uniform_colouring(Graph(0, frozenset()))).text == "n=0;c=;e="

    def test_swapped_colour_keys_give_different_encodings(self):
        g = Graph(1, frozenset())
        a = canon_coloured(coloured(g, [{1}]))
        b = canon_coloured(coloured(g, [{2}]))
        assert a != b

    def test_composite_keys_serialise(self):
        cg = coloured(Graph(1, frozenset()), [{2, 1, 7}])
        assert canon_coloured(cg).text == "n=1;c=1.2.7;e="

    def test_encoding_orderable(self):
        a = canon_coloured(coloured(Graph(1, frozenset()), [{1}]))
        b = canon_coloured(coloured(Graph(1, frozenset()), [{2}]))
        assert (a < b) != (b < a)


class TestPermutationInvariance:
    def test_exhaustive_small_with_random_colours(self, rng):
        for n in range(6):
            for g in graphs_upto_iso(n):
                values = random_colouring_values(rng, n, 3)
                cg = ColouredGraph(g, values)
                text = canon_coloured(cg).text
                for _ in range(8):
                    p = random_permutation(rng, n)
                    assert canon_coloured(permute_coloured(cg, p)).text == text

    def test_thousand_permutations_per_instance(self, rng):
        instances = [
            uniform_colouring(random_graph(rng, 7, 0.4)),
            ColouredGraph(
                random_graph(rng, 7, 0.6), random_colouring_values(rng, 7, 2)
            ),
            uniform_colouring(
                Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
            ),
        ]
        for cg in instances:
            text = canon_coloured(cg).text
            for _ in range(1000):
                p = random_permutation(rng, cg.graph.n)
                assert canon_coloured(permute_coloured(cg, p)).text == text


class TestCompleteness:
    def test_distinct_on_nonisomorphic_plain_graphs(self):
        # corpus members are pairwise non-isomorphic by construction
        for n in range(7):
            texts = [canonical_key(g) for g in graphs_upto_iso(n)]
            assert len(set(texts)) == len(texts)

    def test_agrees_with_brute_force_on_coloured_pairs(self, rng):
        pool = []
        for _ in range(60):
            n = rng.randint(0, 5)
            g = random_graph(rng, n, rng.random())
            pool.append(ColouredGraph(g, random_colouring_values(rng, n, 2)))
        for a, b in itertools.combinations(pool, 2):
            assert iso_coloured(a, b) == brute_force_isomorphic(a, b)

    def test_exhaustive_plain_pairs_n4(self):
        gs = [uniform_colouring(g) for g in all_graphs(4)]
        for a, b in itertools.combinations(gs, 2):
            assert iso_coloured(a, b) == brute_force_isomorphic(a, b)


class TestDecode:
    def test_decode_inverts_up_to_isomorphism(self, rng):
        for _ in range(50):
            n = rng.randint(0, 7)
            cg = ColouredGraph(
                random_graph(rng, n, rng.random()),
                random_colouring_values(rng, n, 3),
            )
            enc = canon_coloured(cg)
            back = decode_encoding(enc.text)
            assert brute_force_isomorphic(cg, back)
            assert canon_coloured(back) == enc

    def test_malformed_encodings_rejected(self):
        from elimcanon import GraphError

        for bad in ["", "n=2;c=1", "n=x;c=;e=", "n=1;c=1,2;e=", "n=2;c=1,1;e=0_1"]:
            with pytest.raises(GraphError):
                decode_encoding(bad)


class TestStableSignature:
    def test_invariant_under_permutation(self, rng):
        for _ in range(40):
            n = rng.randint(0, 8)
            cg = ColouredGraph(
                random_graph(rng, n, rng.random()),
                random_colouring_values(rng, n, 2),
            )
            p = random_permutation(rng, n)
            assert stable_signature(cg) == stable_signature(permute_coloured(cg, p))

    def test_respects_colour_classes(self):
        g = Graph.from_edges(2, [(0, 1)])
        a = ColouredGraph(g, (frozenset({1}), frozenset({1})))
        b = ColouredGraph(g, (frozenset({2}), frozenset({2})))
        assert stable_signature(a) != stable_signature(b)
