"""Seeded generators and exhaustive small-graph corpora.

Everything here is deterministic given its inputs: exhaustive corpora are
generated on the fly (never shipped as files) and random families take an
explicit ``random.Random``.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations

from .canon import canonical_key, stable_signature
from .graph import Graph, VertexPermutation, uniform_colouring
from .treeorder import TreeOrder

__all__ = [
    "all_graphs",
    "graphs_upto_iso",
    "connected_graphs_upto_iso",
    "all_tree_orders",
    "random_graph",
    "random_permutation",
    "random_colouring_values",
    "planted_low_core_graph",
]


def all_graphs(n: int):
    """Every labelled graph on n vertices (2^C(n,2) of them); n <= 5 advised."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


@lru_cache(maxsize=None)
def graphs_upto_iso(n: int) -> tuple[Graph, ...]:
    """All graphs on exactly n vertices, one per isomorphism class.

    Built by extending the (n-1)-vertex corpus with every possible
    neighbourhood for a new vertex and deduplicating by canonical key,
    with a stable-partition prescreen to keep canonisation calls down.
    """
    if n == 0:
        return (Graph(0, frozenset()),)
    seen_by_sig: dict[tuple, dict[str, Graph]] = {}
    out: list[Graph] = []
    for base in graphs_upto_iso(n - 1):
        for mask in range(1 << (n - 1)):
            edges = set(base.edges)
            for u in range(n - 1):
                if mask >> u & 1:
                    edges.add((u, n - 1))
            g = Graph(n, frozenset(edges))
            sig = (g.edge_count, g.degree_sequence(),
                   stable_signature(uniform_colouring(g)))
            bucket = seen_by_sig.setdefault(sig, {})
            if not bucket:
                key = canonical_key(g)
                bucket[key] = g
                out.append(g)
                continue
            key = canonical_key(g)
            if key not in bucket:
                bucket[key] = g
                out.append(g)
    return tuple(out)


def connected_graphs_upto_iso(n: int) -> tuple[Graph, ...]:
    from .graph import components

    return tuple(g for g in graphs_upto_iso(n) if len(components(g)) <= 1)


@lru_cache(maxsize=None)
def all_tree_orders(n: int) -> tuple[TreeOrder, ...]:
    """Every tree order (labelled rooted forest) on vertices 0..n-1."""
    if n == 0:
        return (TreeOrder((), {}),)
    out: list[TreeOrder] = []
    choices = [[None] + [p for p in range(n) if p != v] for v in range(n)]
    assignment: list[int | None] = [None] * n

    def rec(v: int) -> None:
        if v == n:
            parent = {c: p for c, p in enumerate(assignment) if p is not None}
            # acyclicity check by walking up with a step budget
            for start in range(n):
                steps = 0
                u: int | None = start
                while u is not None:
                    u = parent.get(u)
                    steps += 1
                    if steps > n:
                        return
            out.append(TreeOrder(range(n), parent))
            return
        for p in choices[v]:
            assignment[v] = p
            rec(v + 1)
        assignment[v] = None

    rec(0)
    return tuple(out)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = frozenset(
        (u, v) for u, v in combinations(range(n), 2) if rng.random() < p
    )
    return Graph(n, edges)


def random_permutation(rng: random.Random, n: int) -> VertexPermutation:
    image = list(range(n))
    rng.shuffle(image)
    return VertexPermutation(tuple(image))


def random_colouring_values(rng: random.Random, n: int, max_colour: int) -> tuple[frozenset[int], ...]:
    """Per-vertex singleton colour keys drawn from 1..max_colour."""
    return tuple(frozenset({rng.randint(1, max_colour)}) for _ in range(n))


def _random_bounded_tree(rng: random.Random, size: int, max_deg: int) -> list[tuple[int, int]]:
    """Random labelled tree on 0..size-1 with maximum degree <= max_deg."""
    edges: list[tuple[int, int]] = []
    deg = [0] * size
    for v in range(1, size):
        anchors = [u for u in range(v) if deg[u] < max_deg]
        u = rng.choice(anchors)
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
    return edges


def planted_low_core_graph(
    rng: random.Random, n: int, d: int, max_core: int
) -> tuple[Graph, tuple[int, ...]]:
    """Random n-vertex graph whose degree->d core is a planted hub set.

    Hubs get enough pendant leaves to exceed degree d; all other vertices
    are kept at degree <= d.  Returns the graph and the sorted hub tuple.
    """
    hubs = rng.randint(max(2, max_core - 3), max_core)
    if n < hubs * (d + 4) + 1:
        raise ValueError("n too small for the requested core")
    edges: set[tuple[int, int]] = set()
    deg = [0] * n

    def add(u: int, v: int) -> None:
        e = (u, v) if u < v else (v, u)
        if e not in edges:
            edges.add(e)
            deg[u] += 1
            deg[v] += 1

    # sparse random hub-hub edges
    for u, v in combinations(range(hubs), 2):
        if rng.random() < 0.3:
            add(u, v)
    nxt = hubs
    # dedicated pendant leaves push every hub above degree d
    for h in range(hubs):
        need = d + 1 - deg[h] + rng.randint(0, 2)
        for _ in range(max(need, 0)):
            add(h, nxt)
            nxt += 1
    # remaining vertices form bounded-degree tree components attached to
    # at most two hubs through low-degree contact vertices
    while nxt < n:
        size = min(rng.randint(1, 14), n - nxt)
        base = nxt
        for u, v in _random_bounded_tree(rng, size, max(d, 1)):
            add(base + u, base + v)
        nxt += size
        for h in rng.sample(range(hubs), rng.randint(0, min(2, hubs))):
            contacts = [v for v in range(base, base + size) if deg[v] <= d - 1]
            if contacts:
                add(h, rng.choice(contacts))
    graph = Graph(n, frozenset(edges))
    core = tuple(v for v in range(n) if graph.degree(v) > d)
    return graph, core
