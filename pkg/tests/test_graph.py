import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elimcanon import (
    ColouredGraph,
    Graph,
    GraphError,
    ParseError,
    VertexPermutation,
    apply_permutation,
    brute_force_isomorphic,
    components,
    emit_edge_list,
    induced_subgraph,
    parse_edge_list,
    permute_coloured,
    uniform_colouring,
)
from elimcanon.corpus import all_graphs, random_graph, random_permutation


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


class TestGraphType:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError, match="self-loop"):
            Graph.from_edges(2, [(0, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError, match="outside"):
            Graph.from_edges(2, [(0, 2)])

    def test_adjacency_is_symmetric(self, rng):
        for _ in range(50):
            g = random_graph(rng, rng.randint(0, 8), rng.random())
            for u in g.vertices():
                for v in g.neighbours(u):
                    assert u in g.neighbours(v)

    def test_degree_and_edge_count(self):
        g = path(4)
        assert g.degree_sequence() == (1, 1, 2, 2)
        assert g.edge_count == 3
        assert g.max_degree() == 2
        assert Graph(0, frozenset()).max_degree() == 0


class TestParseEdgeList:
    def test_path_on_three(self):
        assert parse_edge_list("3 2\n0 1\n1 2") == path(3)

    def test_single_isolated_vertex(self):
        assert parse_edge_list("1 0") == Graph(1, frozenset())

    def test_self_loop_rejected(self):
        with pytest.raises(ParseError, match="self-loop"):
            parse_edge_list("2 1\n0 0")

    def test_duplicate_rejected(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_edge_list("3 2\n0 1\n1 0")

    def test_out_of_range_rejected(self):
        with pytest.raises(ParseError, match="out of range"):
            parse_edge_list("2 1\n0 5")

    def test_malformed_line_rejected(self):
        with pytest.raises(ParseError, match="malformed"):
            parse_edge_list("2 1\n0 1 2")

    def test_wrong_count_rejected(self):
        with pytest.raises(ParseError, match="edge lines"):
            parse_edge_list("3 2\n0 1")

    def test_round_trip(self, rng):
        for _ in range(40):
            g = random_graph(rng, rng.randint(0, 9), rng.random())
            assert parse_edge_list(emit_edge_list(g)) == g


class TestInducedSubgraph:
    def test_triangle_minus_vertex_is_edge(self):
        sub, mapping = induced_subgraph(complete(3), [0, 1])
        assert sub == Graph.from_edges(2, [(0, 1)])
        assert mapping == {0: 0, 1: 1}

    def test_full_vertex_set_is_identity(self):
        g = path(4)
        sub, mapping = induced_subgraph(g, range(4))
        assert sub == g and mapping == {i: i for i in range(4)}

    def test_empty_set(self):
        sub, mapping = induced_subgraph(path(3), [])
        assert sub.n == 0 and mapping == {}

    def test_out_of_range(self):
        with pytest.raises(GraphError):
            induced_subgraph(path(3), [0, 3])

    def test_edge_count_matches_contained_edges(self, rng):
        for _ in range(40):
            g = random_graph(rng, rng.randint(1, 9), rng.random())
            pick = [v for v in g.vertices() if rng.random() < 0.5]
            sub, _ = induced_subgraph(g, pick)
            keep = set(pick)
            assert sub.edge_count == sum(
                1 for u, v in g.edges if u in keep and v in keep
            )


class TestComponents:
    def test_two_disjoint_edges(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert components(g) == [frozenset({0, 1}), frozenset({2, 3})]

    def test_connected_graph(self):
        assert components(path(5)) == [frozenset(range(5))]

    def test_empty_graph(self):
        assert components(Graph(0, frozenset())) == []

    def test_partition_property(self, rng):
        for _ in range(40):
            g = random_graph(rng, rng.randint(0, 9), rng.random())
            parts = components(g)
            assert sum(len(p) for p in parts) == g.n
            assert set().union(*parts) == set(range(g.n)) if parts else g.n == 0


class TestApplyPermutation:
    def test_identity(self):
        g = path(4)
        assert apply_permutation(g, VertexPermutation((0, 1, 2, 3))) == g

    def test_swap_edge_endpoints(self):
        g = Graph.from_edges(2, [(0, 1)])
        assert apply_permutation(g, VertexPermutation((1, 0))) == g

    def test_path_middle_keeps_degree_two(self):
        g = path(3)
        for image in [(1, 0, 2), (2, 0, 1), (0, 2, 1)]:
            perm = VertexPermutation(image)
            h = apply_permutation(g, perm)
            assert h.degree(perm(1)) == 2

    def test_size_mismatch(self):
        with pytest.raises(GraphError, match="permutation"):
            apply_permutation(path(3), VertexPermutation((0, 1)))

    def test_rejects_non_bijection(self):
        with pytest.raises(GraphError, match="bijection"):
            VertexPermutation((0, 0, 1))


class TestBruteForceIsomorphic:
    def test_relabelled_path(self):
        a = uniform_colouring(path(3))
        b = uniform_colouring(Graph.from_edges(3, [(0, 2), (2, 1)]))
        assert brute_force_isomorphic(a, b)

    def test_path_vs_triangle(self):
        assert not brute_force_isomorphic(
            uniform_colouring(path(3)), uniform_colouring(complete(3))
        )

    def test_swapped_colour_keys_differ(self):
        g = Graph.from_edges(2, [(0, 1)])
        a = ColouredGraph(g, (frozenset({1}), frozenset({2})))
        b = ColouredGraph(g, (frozenset({2}), frozenset({1})))
        # exact key matching: the swap is not an isomorphism even though the
        # colour classes correspond
        assert brute_force_isomorphic(a, a)
        assert not brute_force_isomorphic(
            ColouredGraph(g, (frozenset({1}), frozenset({1}))),
            ColouredGraph(g, (frozenset({2}), frozenset({2}))),
        )
        assert brute_force_isomorphic(a, b)  # swap along the edge flip

    def test_permutation_always_isomorphic(self, rng):
        for n in range(7):
            for g in (random_graph(rng, n, rng.random()) for _ in range(8)):
                perm = random_permutation(rng, n)
                assert brute_force_isomorphic(
                    uniform_colouring(g),
                    uniform_colouring(apply_permutation(g, perm)),
                )

    def test_coloured_permutation(self, rng):
        for _ in range(30):
            n = rng.randint(1, 6)
            g = random_graph(rng, n, rng.random())
            colours = tuple(frozenset({rng.randint(1, 3)}) for _ in range(n))
            cg = ColouredGraph(g, colours)
            perm = random_permutation(rng, n)
            assert brute_force_isomorphic(cg, permute_coloured(cg, perm))

    def test_exhaustive_small_negative(self):
        # graphs with different edge counts are never isomorphic
        gs = list(all_graphs(4))
        for a in gs[:10]:
            for b in gs[:10]:
                if a.edge_count != b.edge_count:
                    assert not brute_force_isomorphic(
                        uniform_colouring(a), uniform_colouring(b)
                    )


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 7), st.randoms(use_true_random=False))
def test_components_are_reachability_classes(n, pyrng):
    g = random_graph(pyrng, n, pyrng.random())
    parts = components(g)
    index = {}
    for i, part in enumerate(parts):
        for v in part:
            index[v] = i
    for u, v in g.edges:
        assert index[u] == index[v]
