import itertools

import pytest

from elimcanon import (
    Graph,
    GraphError,
    OrderedGraph,
    apply_permutation,
    brute_force_isomorphic,
    build_invariant_tree,
    canon_tree,
    canonical_form,
    canonical_torso_decomposition,
    decorate_decomposition,
    emit_graph6,
    is_elimination_order,
    isomorphic,
    min_elim_order_to_degree,
    torso,
    tree_depth,
    uniform_colouring,
)
from elimcanon.corpus import graphs_upto_iso, random_graph, random_permutation


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def hub_path_hub():
    return Graph.from_edges(
        9, [(0, 1), (0, 2), (0, 3), (8, 4), (8, 5), (8, 6), (0, 7), (7, 8)]
    )


def text_of(g, d):
    return canon_tree(build_invariant_tree(g, d))


class TestCanonicalTorsoDecomposition:
    def test_empty_core(self):
        t = canonical_torso_decomposition(Graph(0, frozenset()))
        assert t.domain == frozenset() and t.height() == 0

    def test_single_edge_core(self):
        t = canonical_torso_decomposition(Graph.from_edges(2, [(0, 1)]))
        assert t.height() == 2
        assert is_elimination_order(OrderedGraph(Graph.from_edges(2, [(0, 1)]), t))

    def test_path_three_middle_rooted(self):
        t = canonical_torso_decomposition(path(3))
        assert t.roots == (1,)
        assert t.height() == 2 == tree_depth(path(3))

    def test_minimum_height_on_corpus(self, shared_memo):
        for n in range(1, 7):
            for g in graphs_upto_iso(n):
                t = canonical_torso_decomposition(g)
                assert is_elimination_order(OrderedGraph(g, t))
                assert t.height() == tree_depth(g, memo=shared_memo)

    def test_invariance_of_core_text(self, rng):
        from elimcanon.pipeline import _Context

        for _ in range(30):
            n = rng.randint(1, 8)
            g = random_graph(rng, n, rng.random())
            p = random_permutation(rng, n)
            h = apply_permutation(g, p)
            a, _ = _Context.for_core_only(g).full_tree_text()
            b, _ = _Context.for_core_only(h).full_tree_text()
            assert a == b


class TestBuildInvariantTree:
    def test_low_degree_graph_single_root(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        t = build_invariant_tree(g, 2)
        assert len(t) == 1
        root_label = t.label(t.root)
        assert root_label.levels == frozenset()
        assert len(root_label.components) == 2

    def test_star_example(self):
        t = build_invariant_tree(star(3), 2)
        assert len(t) == 2
        centre = next(i for i in range(2) if i != t.root)
        assert t.label(centre).components == ("n=1;c=1;e=",) * 3

    def test_hub_path_hub_connector_colours(self):
        t = build_invariant_tree(hub_path_hub(), 2)
        # root + two hub nodes in a chain; hubs are not graph-adjacent, so
        # both level sets are empty and the connector's colours {1,2} carry
        # the torso edge instead
        assert len(t) == 3
        deep = [
            i
            for i in range(len(t))
            if "n=1;c=1.2;e=" in t.label(i).components
        ]
        assert len(deep) == 1
        assert t.label(deep[0]).levels == frozenset()
        # the connector's node is the level-2 hub: its parent is the other hub
        parent = t.parents[deep[0]]
        assert parent is not None and parent != t.root
        # three pendant leaves coloured by the deep hub's level
        assert t.label(deep[0]).components.count("n=1;c=2;e=") == 3

    def test_search_text_matches_tree_canon(self, rng):
        for _ in range(40):
            n = rng.randint(0, 9)
            g = random_graph(rng, n, rng.random())
            d = rng.randint(1, 3)
            tree = build_invariant_tree(g, d)
            assert canon_tree(tree) == text_of(g, d)


class TestDecorate:
    def test_anchor_chain_and_levels(self, rng):
        for _ in range(50):
            n = rng.randint(1, 9)
            g = random_graph(rng, n, rng.random())
            d = rng.randint(1, 2)
            core = torso(g, d)
            order = canonical_torso_decomposition(core.core)
            deco = decorate_decomposition(g, d, order)
            for anchor, cg, enc in deco.attach.values():
                if anchor is None:
                    assert all(key == frozenset() for key in cg.colours)
                else:
                    top_level = deco.levels[anchor]
                    for key in cg.colours:
                        assert all(1 <= lvl <= top_level for lvl in key)

    def test_rejects_non_elimination_order(self):
        g = complete(4)
        from elimcanon import TreeOrder

        with pytest.raises(GraphError, match="elimination order"):
            decorate_decomposition(g, 2, TreeOrder(range(4), {}))


class TestCanonicalForm:
    def test_isomorphic_to_input(self, rng):
        for _ in range(60):
            n = rng.randint(0, 8)
            g = random_graph(rng, n, rng.random())
            d = rng.randint(1, 3)
            form = canonical_form(g, d)
            assert form.n == g.n and form.edge_count == g.edge_count
            assert brute_force_isomorphic(
                uniform_colouring(g), uniform_colouring(form)
            )

    def test_permutation_invariance(self, rng):
        for _ in range(120):
            n = rng.randint(0, 9)
            g = random_graph(rng, n, rng.random())
            d = rng.randint(1, 3)
            h = apply_permutation(g, random_permutation(rng, n))
            assert emit_graph6(canonical_form(g, d)) == emit_graph6(canonical_form(h, d))

    def test_idempotent_text(self, rng):
        for _ in range(40):
            n = rng.randint(0, 8)
            g = random_graph(rng, n, rng.random())
            d = rng.randint(1, 2)
            assert text_of(canonical_form(g, d), d) == text_of(g, d)

    def test_distinct_on_nonisomorphic(self):
        for n in range(7):
            texts = [text_of(g, 2) for g in graphs_upto_iso(n)]
            assert len(set(texts)) == len(texts)


class TestIsomorphic:
    def test_relabelled_true(self, rng):
        g = random_graph(rng, 7, 0.4)
        h = apply_permutation(g, random_permutation(rng, 7))
        assert isomorphic(g, h, 2)

    def test_k4_vs_star_false(self):
        assert not isomorphic(complete(4), star(3), 2)

    def test_agrees_with_oracle_exhaustively(self):
        for n in range(6):
            gs = graphs_upto_iso(n)
            for d in (1, 2):
                texts = [text_of(g, d) for g in gs]
                for (g1, t1), (g2, t2) in itertools.combinations(zip(gs, texts), 2):
                    want = brute_force_isomorphic(
                        uniform_colouring(g1), uniform_colouring(g2)
                    )
                    assert (t1 == t2) == want
