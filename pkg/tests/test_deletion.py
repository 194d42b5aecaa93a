from itertools import combinations

import pytest

from elimcanon import (
    ColouredGraph,
    DeletionIso,
    Graph,
    GraphError,
    apply_permutation,
    brute_force_isomorphic,
    colour_gadget,
    find_deletion_set,
    iso_by_deletion,
    kernelize,
    minimum_deletion_sets,
    uniform_colouring,
)
from elimcanon.corpus import (
    graphs_upto_iso,
    random_colouring_values,
    random_graph,
    random_permutation,
)


def complete(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def brute_min_sets(g: Graph, k: int, d: int):
    """Oracle: all minimum-size deletion sets of size <= k, or None."""
    for size in range(k + 1):
        hits = [
            frozenset(s)
            for s in combinations(range(g.n), size)
            if g.delete(s).max_degree() <= d
        ]
        if hits:
            return hits
    return None


class TestKernelize:
    def test_star_five(self):
        kern = kernelize(star(5), 1, 1)
        assert kern.forced == frozenset({0})
        assert kern.budget == 0
        assert kern.candidates == frozenset()
        assert not kern.infeasible
        assert kern.reduced.n == 5 and kern.reduced.edge_count == 0

    def test_low_degree_noop(self):
        g = cycle(5)
        kern = kernelize(g, 2, 2)
        assert kern.forced == frozenset() and kern.candidates == frozenset()
        assert kern.budget == 2 and not kern.infeasible

    def test_k4_budget_zero_infeasible(self):
        kern = kernelize(complete(4), 0, 2)
        assert kern.infeasible
        assert kern.forced == frozenset(range(4))
        assert kern.budget == 0 and kern.candidates == frozenset()
        assert kern.reduced == complete(4)

    def test_candidate_overflow_marks_infeasible(self):
        # five disjoint edges, k=1, d=0: ten candidates exceed the bound 3
        g = Graph.from_edges(10, [(2 * i, 2 * i + 1) for i in range(5)])
        kern = kernelize(g, 1, 0)
        assert kern.infeasible and kern.candidates == frozenset()
        assert brute_min_sets(g, 1, 0) is None

    def test_candidate_bound_always_holds(self, rng):
        for _ in range(300):
            g = random_graph(rng, rng.randint(0, 10), rng.random())
            k, d = rng.randint(0, 3), rng.randint(0, 2)
            kern = kernelize(g, k, d)
            assert len(kern.candidates) <= kern.candidate_bound
            if not kern.infeasible:
                assert kern.budget == k - len(kern.forced)
                assert kern.forced.isdisjoint(kern.back_map)

    def test_negative_rejected(self):
        with pytest.raises(GraphError):
            kernelize(cycle(3), -1, 0)


class TestFindDeletionSet:
    def test_k4(self):
        assert find_deletion_set(complete(4), 1, 2) == frozenset({0})

    def test_cycle_needs_nothing(self):
        assert find_deletion_set(cycle(5), 0, 2) == frozenset()

    def test_star_centre(self):
        assert find_deletion_set(star(3), 1, 0) == frozenset({0})

    def test_infeasible(self):
        assert find_deletion_set(complete(5), 1, 1) is None

    def test_matches_oracle(self, rng):
        for _ in range(200):
            g = random_graph(rng, rng.randint(0, 8), rng.random())
            k, d = rng.randint(0, 3), rng.randint(0, 2)
            got = minimum_deletion_sets(g, k, d)
            want = brute_min_sets(g, k, d)
            if want is None:
                assert got is None
            else:
                assert got is not None and set(got) == set(want)
                assert find_deletion_set(g, k, d) == min(want, key=sorted)

    def test_lexicographic_tie_break(self):
        # both endpoints of an edge are minimum deletion sets for d=0
        g = Graph.from_edges(2, [(0, 1)])
        assert find_deletion_set(g, 1, 0) == frozenset({0})


class TestIsoByDeletion:
    def test_identity_k4(self):
        assert iso_by_deletion(complete(4), complete(4), 1, 2) is DeletionIso.ISOMORPHIC

    def test_k4_vs_star(self):
        assert iso_by_deletion(complete(4), star(3), 1, 2) is DeletionIso.NOT_ISOMORPHIC

    def test_parameter_too_small(self):
        out = iso_by_deletion(complete(5), complete(5), 1, 1)
        assert out is DeletionIso.PARAMETER_TOO_SMALL
        assert not out

    def test_permutation_pairs_match_brute_force(self, rng):
        for _ in range(60):
            n = rng.randint(1, 8)
            g = random_graph(rng, n, rng.random() * 0.6)
            k, d = rng.randint(0, 2), rng.randint(0, 2)
            h = apply_permutation(g, random_permutation(rng, n))
            out = iso_by_deletion(g, h, k, d)
            if out is DeletionIso.PARAMETER_TOO_SMALL:
                assert brute_min_sets(g, k, d) is None
            else:
                assert out is DeletionIso.ISOMORPHIC

    def test_agrees_with_oracle_on_feasible_pairs(self, rng):
        pool = [g for g in graphs_upto_iso(5)]
        for _ in range(150):
            a, b = rng.choice(pool), rng.choice(pool)
            k, d = rng.randint(0, 2), rng.randint(0, 2)
            out = iso_by_deletion(a, b, k, d)
            if out is DeletionIso.PARAMETER_TOO_SMALL:
                assert brute_min_sets(a, k, d) is None or brute_min_sets(b, k, d) is None
                continue
            want = brute_force_isomorphic(uniform_colouring(a), uniform_colouring(b))
            assert bool(out) == want


class TestColourGadget:
    def test_single_vertex_colour_one_is_triangle(self):
        cg = ColouredGraph(Graph(1, frozenset()), (frozenset({1}),))
        out = colour_gadget(cg)
        assert out == complete(3)

    def test_single_edge_two_triangles(self):
        g = Graph.from_edges(2, [(0, 1)])
        cg = ColouredGraph(g, (frozenset({1}), frozenset({1})))
        out = colour_gadget(cg)
        assert out.n == 6
        assert out.edge_count == 1 + 3 + 3
        assert out.degree(0) == 3 and out.degree(1) == 3

    def test_degree_increases_by_exactly_two(self, rng):
        for _ in range(80):
            n = rng.randint(1, 7)
            g = random_graph(rng, n, rng.random())
            cg = ColouredGraph(g, random_colouring_values(rng, n, 3))
            assert colour_gadget(cg).max_degree() == g.max_degree() + 2

    def test_equivalence_with_coloured_iso(self, rng):
        for _ in range(80):
            n = rng.randint(1, 5)
            g = random_graph(rng, n, rng.random())
            a = ColouredGraph(g, random_colouring_values(rng, n, 3))
            h = random_graph(rng, n, rng.random())
            b = ColouredGraph(h, random_colouring_values(rng, n, 3))
            want = brute_force_isomorphic(a, b)
            got = brute_force_isomorphic(
                uniform_colouring(colour_gadget(a)),
                uniform_colouring(colour_gadget(b)),
            )
            assert want == got

    def test_permuted_coloured_graphs_give_isomorphic_gadgets(self, rng):
        from elimcanon import permute_coloured

        for _ in range(40):
            n = rng.randint(1, 5)
            cg = ColouredGraph(
                random_graph(rng, n, rng.random()),
                random_colouring_values(rng, n, 3),
            )
            p = random_permutation(rng, n)
            assert brute_force_isomorphic(
                uniform_colouring(colour_gadget(cg)),
                uniform_colouring(colour_gadget(permute_coloured(cg, p))),
            )
