"""Elimination distance to bounded degree and its order constructions.

Contains the exact distance recursion, minimum-height order construction,
the d-degree torso, two order-rewriting operations (pulling high-degree
vertices into the non-maximal interior, dissolving low-degree ones out of
it), and exact evaluators for the closed-form height bounds.

Height bookkeeping: orders to degree d are measured by
:func:`~elimcanon.treeorder.nonmaximal_height`; see that docstring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canon import canonical_key
from .graph import Graph, GraphError, components, induced_subgraph
from .treeorder import (
    OrderedGraph,
    TreeOrder,
    is_elim_order_to_degree,
    nonmaximal_height,
)

__all__ = [
    "Torso",
    "torso",
    "elimination_distance",
    "min_elim_order_to_degree",
    "rewrite_add_high_degree",
    "rewrite_remove_low_degree",
    "HeightBudget",
    "height_bound",
    "bounded_case_bound",
]


@dataclass(frozen=True)
class Torso:
    """Induced subgraph on the degree->d vertices, closed under paths.

    ``core`` is reindexed; ``back_map[i]`` is the original vertex of core
    vertex i.  ``added_edges`` are the core edges realised only by a path
    through the low-degree remainder, i.e. not present in the induced
    subgraph itself.
    """

    core: Graph
    back_map: tuple[int, ...]
    added_edges: frozenset[tuple[int, int]]


def torso(graph: Graph, d: int) -> Torso:
    """The d-degree torso: high-degree vertices plus path-through edges.

    Two core vertices are adjacent iff they are adjacent in the graph or
    both neighbour one component of the low-degree remainder (equivalent to
    being joined by a path through it, and computable in linear time).
    """
    if d < 0:
        raise GraphError(f"degree bound must be non-negative, got {d}")
    high = [v for v in range(graph.n) if graph.degree(v) > d]
    core_induced, mapping = induced_subgraph(graph, high)
    high_set = frozenset(high)
    edges = set(core_induced.edges)
    induced_edges = frozenset(edges)
    rest = graph.delete(high_set)
    outside = sorted(set(range(graph.n)) - high_set)
    back = {new: old for new, old in enumerate(outside)}
    for comp in components(rest):
        attached = sorted(
            {
                mapping[u]
                for v in comp
                for u in graph.neighbours(back[v])
                if u in high_set
            }
        )
        for i, a in enumerate(attached):
            for b in attached[i + 1:]:
                edges.add((a, b))
    core = Graph(len(high), frozenset(edges))
    return Torso(core, tuple(high), frozenset(edges - induced_edges))


def elimination_distance(
    graph: Graph, d: int, *, cutoff: int | None = None, memo: dict | None = None
) -> int:
    """Exact elimination distance to degree d.

    Zero when the maximum degree is already at most d, the per-component
    maximum when disconnected, else one plus the best single deletion.
    With ``cutoff`` the recursion is truncated and any value >= cutoff is
    reported as cutoff.  Intended for n <= 14; pass a shared ``memo`` dict
    to reuse canonical-key results across calls.
    """
    if d < 0:
        raise GraphError(f"degree bound must be non-negative, got {d}")
    if cutoff is not None and cutoff < 0:
        raise GraphError(f"cutoff must be non-negative, got {cutoff}")
    canon_memo = memo if memo is not None else {}
    exact_memo: dict[tuple, int] = {}

    def ed(g: Graph, cap: int | None) -> int:
        if g.max_degree() <= d:
            return 0
        if cap is not None and cap <= 0:
            return 1  # already over budget; exact value not needed
        exact_key = (g.n, g.edges, cap)
        if exact_key in exact_memo:
            return exact_memo[exact_key]
        ckey = (canonical_key(g), d, cap)
        if ckey in canon_memo:
            exact_memo[exact_key] = canon_memo[ckey]
            return canon_memo[ckey]
        comps = components(g)
        if len(comps) > 1:
            val = max(ed(induced_subgraph(g, c)[0], cap) for c in comps)
        else:
            sub_cap = None if cap is None else cap - 1
            best: int | None = None
            for v in range(g.n):
                s = ed(g.delete([v]), sub_cap)
                if best is None or s < best:
                    best = s
                    if best == 0:
                        break
            val = 1 + best  # type: ignore[operator]
            if cap is not None and val > cap:
                val = cap
        exact_memo[exact_key] = val
        canon_memo[ckey] = val
        return val

    result = ed(graph, cutoff)
    return result if cutoff is None else min(result, cutoff)


def min_elim_order_to_degree(graph: Graph, d: int, *, memo: dict | None = None) -> TreeOrder:
    """An order to degree d whose non-maximal height equals the distance.

    Built by the distance recursion itself: identity on low-degree graphs,
    per-component composition when disconnected, else the best deletion
    vertex goes below everything.  Ties take the smallest vertex index.
    """
    canon_memo = memo if memo is not None else {}

    def build(g: Graph) -> dict[int, int]:
        """Parent map of the constructed order, in g's own indexing."""
        if g.max_degree() <= d:
            return {}
        comps = components(g)
        if len(comps) > 1:
            parent: dict[int, int] = {}
            for comp in comps:
                sub, mapping = induced_subgraph(g, comp)
                back = {new: old for old, new in mapping.items()}
                for c, p in build(sub).items():
                    parent[back[c]] = back[p]
            return parent
        best_v = None
        best_ed = None
        for v in range(g.n):
            s = elimination_distance(g.delete([v]), d, memo=canon_memo)
            if best_ed is None or s < best_ed:
                best_v, best_ed = v, s
        assert best_v is not None
        keep = [u for u in range(g.n) if u != best_v]
        back = {new: old for new, old in enumerate(keep)}
        sub = g.delete([best_v])
        parent = {back[c]: back[p] for c, p in build(sub).items()}
        sub_roots = set(back.values()) - set(parent)
        for r in sub_roots:
            parent[r] = best_v
        return parent

    order = TreeOrder(range(graph.n), build(graph))
    if not is_elim_order_to_degree(OrderedGraph(graph, order), d):
        raise AssertionError("constructed order failed validation")
    return order


def _residue_components(graph: Graph, removed: frozenset[int]) -> list[list[int]]:
    """Components of graph minus ``removed``, in original vertex ids."""
    rest = graph.delete(removed)
    outside = sorted(set(range(graph.n)) - removed)
    back = {new: old for new, old in enumerate(outside)}
    return [sorted(back[v] for v in comp) for comp in components(rest)]


def _common_ancestor_chain(order: TreeOrder, verts: list[int]) -> list[int]:
    """Shared strict-ancestor chain of a residue component, bottom-up sorted."""
    anc = order.ancestor_set(verts[0])
    for v in verts[1:]:
        if order.ancestor_set(v) != anc:
            raise GraphError(
                "residue component vertices do not share an ancestor chain"
            )
    return sorted(anc, key=order.level)


def rewrite_add_high_degree(og: OrderedGraph, d: int) -> TreeOrder:
    """Pull every high-degree vertex into the non-maximal interior.

    Requires a valid order to degree d with max degree at most k + d, where
    k is the order's non-maximal height.  Outside high-degree vertices are
    spliced, per residue component, directly above the top of the
    component's common ancestor chain, linearly ordered by ascending vertex
    index; blocks sharing a top are pooled.  The result is valid to degree
    d, its non-maximal vertices all lie in the old interior or have degree
    > d, and its non-maximal height is at most k * (k + d + 1).
    """
    g, t = og.graph, og.order
    if not is_elim_order_to_degree(og, d):
        raise GraphError("rewrite requires an elimination order to degree d")
    k = nonmaximal_height(t)
    if g.max_degree() > k + d:
        raise GraphError(f"max degree {g.max_degree()} exceeds k + d = {k + d}")
    interior = t.nonmaximal_vertices()
    target = interior | {v for v in range(g.n) if g.degree(v) > d}

    blocks: dict[int, list[int]] = {}
    comp_top: dict[int, int | None] = {}
    for verts in _residue_components(g, interior):
        chain = _common_ancestor_chain(t, verts)
        top = chain[-1] if chain else None
        for v in verts:
            comp_top[v] = top
        spliced = [v for v in verts if g.degree(v) > d]
        if spliced:
            if top is None:
                # impossible for valid inputs: a high-degree outside vertex
                # always has a comparable (ancestor) neighbour
                raise AssertionError("high-degree outside vertex with empty chain")
            blocks.setdefault(top, []).extend(spliced)

    parent: dict[int, int] = {v: p for v, p in t.parent.items() if v in interior}
    block_top: dict[int, int] = {}
    for anchor, members in sorted(blocks.items()):
        members.sort()
        prev = anchor
        for w in members:
            parent[w] = prev
            prev = w
        block_top[anchor] = prev

    for v in range(g.n):
        if v in interior or g.degree(v) > d:
            continue
        anchor = comp_top[v]
        if anchor is None:
            continue  # stays a root
        parent[v] = block_top.get(anchor, anchor)

    result = TreeOrder(range(g.n), parent)
    if not is_elim_order_to_degree(OrderedGraph(g, result), d):
        raise AssertionError("rewritten order failed validation")
    if not result.nonmaximal_vertices() <= target:
        raise AssertionError("non-maximal vertex outside the target set")
    if nonmaximal_height(result) > k * (k + d + 1):
        raise AssertionError("rewritten order exceeds the stated height bound")
    return result


def rewrite_remove_low_degree(og: OrderedGraph, d: int) -> TreeOrder:
    """Dissolve low-degree interior vertices, keeping only degree->d ones.

    Requires a valid order to degree d whose non-maximal interior contains
    every vertex of degree > d.  Each low-degree interior vertex v is
    replaced in place by the block of high-degree vertices first reachable
    from v through the low-degree side (ascending index within a block);
    every vertex outside the high-degree set becomes maximal.  The result's
    non-maximal height is at most k*((k+1)*d)^(2^k) + 1 for k the input's
    non-maximal height.
    """
    g, t = og.graph, og.order
    if not is_elim_order_to_degree(og, d):
        raise GraphError("rewrite requires an elimination order to degree d")
    interior = t.nonmaximal_vertices()
    high = frozenset(v for v in range(g.n) if g.degree(v) > d)
    if not high <= interior:
        raise GraphError("interior must contain every vertex of degree > d")
    k = nonmaximal_height(t)

    rest_comps = _residue_components(g, high)
    comp_id: dict[int, int] = {}
    comp_nbrs: list[frozenset[int]] = []
    for idx, verts in enumerate(rest_comps):
        nbrs: set[int] = set()
        for v in verts:
            comp_id[v] = idx
            nbrs.update(u for u in g.neighbours(v) if u in high)
        comp_nbrs.append(frozenset(nbrs))

    def reachable_high(x: int) -> frozenset[int]:
        """High vertices joined to x by a path through the low-degree side."""
        if x in high:
            out = {u for u in g.neighbours(x) if u in high}
            for u in g.neighbours(x):
                if u not in high:
                    out |= comp_nbrs[comp_id[u]]
            out.discard(x)
            return frozenset(out)
        return comp_nbrs[comp_id[x]]

    blocks: dict[int, list[int]] = {}
    block_of: dict[int, int] = {}
    for v in sorted(interior - high):
        anc = t.ancestor_set(v)
        members = []
        for w in reachable_high(v):
            if t.leq(v, w) and not any(w in reachable_high(u) for u in anc):
                members.append(w)
        if members:
            members.sort()
            blocks[v] = members
            for w in members:
                if w in block_of:
                    raise AssertionError("replacement blocks are not disjoint")
                block_of[w] = v

    def sort_key(e: int) -> tuple[int, int]:
        """Position along one chain: level of the anchor, then block slot."""
        v = block_of.get(e)
        if v is None:
            return (t.level(e), 0)
        return (t.level(v), blocks[v].index(e) + 1)

    def new_ancestors(x: int) -> list[int]:
        """Ancestor set of x in the rewritten order (high vertices only)."""
        out: set[int] = set()
        if x in high:
            v_anchor = block_of.get(x)
            if v_anchor is None:
                base = t.ancestor_set(x)
                for w, v in block_of.items():
                    if v in base:
                        out.add(w)
                out.update(e for e in base if e in high and e not in block_of)
            else:
                pos = blocks[v_anchor].index(x)
                out.update(blocks[v_anchor][:pos])
                base = t.ancestor_set(v_anchor)
                for w, v in block_of.items():
                    if v in base:
                        out.add(w)
                out.update(e for e in base if e in high and e not in block_of)
        else:
            base = t.ancestor_set(x) | {x}
            for w, v in block_of.items():
                if v in base:
                    out.add(w)
            out.update(e for e in t.ancestor_set(x) if e in high and e not in block_of)
        out.discard(x)
        return sorted(out, key=sort_key)

    parent: dict[int, int] = {}
    for x in range(g.n):
        anc = new_ancestors(x)
        keys = [sort_key(e) for e in anc]
        if len(set(keys)) != len(keys):
            raise AssertionError("rewritten ancestor set is not a chain")
        if anc:
            parent[x] = anc[-1]

    result = TreeOrder(range(g.n), parent)
    if not is_elim_order_to_degree(OrderedGraph(g, result), d):
        raise AssertionError("rewritten order failed validation")
    if not result.nonmaximal_vertices() <= high:
        raise AssertionError("a low-degree vertex stayed non-maximal")
    bound = k * (((k + 1) * d) ** (2 ** k)) + 1
    if nonmaximal_height(result) > bound:
        raise AssertionError("rewritten order exceeds the stated height bound")
    return result


@dataclass(frozen=True)
class HeightBudget:
    """Parameter pair (k, d) for the closed-form height bounds."""

    k: int
    d: int

    def __post_init__(self) -> None:
        if self.k < 0 or self.d < 0:
            raise GraphError("height budget parameters must be non-negative")


def height_bound(budget: HeightBudget) -> int:
    """Exact value of the master height bound (arbitrary precision)."""
    k, d = budget.k, budget.d
    return (
        k * (((k + 1) * (k + d)) ** (2 ** k))
        + k * (1 + k + d) * ((k * (1 + k + 2 * d)) ** (2 ** (k * (1 + k + d))))
        + 1
    )


def bounded_case_bound(k: int, d: int) -> int:
    """Exact value of the bounded-degree composition bound."""
    if k < 0 or d < 0:
        raise GraphError("bound parameters must be non-negative")
    m = k * (k + d + 1)
    return m * (((m + 1) * d) ** (2 ** m))
