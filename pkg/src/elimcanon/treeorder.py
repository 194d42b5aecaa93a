"""Tree orders, elimination orders (plain and to-degree-d), and tree-depth.

A :class:`TreeOrder` is a forest-shaped partial order stored as a
child -> parent assignment: u <= v holds iff u is v or an ancestor of v, so
roots are the minimal elements and every down-set is a chain.  ``height``
counts the vertices on a longest chain.

For orders to degree d the natural height measure for distance comparisons
is :func:`nonmaximal_height` (the height of the restriction to non-maximal
vertices) because the maximal layer carries the degree-d slack: a full order
of height h has non-maximal height h - 1 on nonempty domains.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .canon import canonical_key
from .graph import Graph, GraphError, components, induced_subgraph

__all__ = [
    "TreeOrder",
    "OrderedGraph",
    "order_from_arcs",
    "decomposition_of",
    "is_elimination_order",
    "is_elim_order_to_degree",
    "nonmaximal_height",
    "tree_depth",
    "SplitResult",
    "split_order",
    "extend_order",
]


class TreeOrder:
    """Forest-shaped partial order over an arbitrary set of integer vertices."""

    __slots__ = ("domain", "parent", "_children", "_roots", "_level", "_anc")

    def __init__(self, domain: Iterable[int], parent: Mapping[int, int]):
        dom = frozenset(domain)
        par = dict(parent)
        for child, p in par.items():
            if child not in dom or p not in dom:
                raise GraphError(f"parent arc {p} -> {child} leaves the domain")
            if child == p:
                raise GraphError(f"vertex {child} is its own parent")
        children: dict[int, list[int]] = {v: [] for v in dom}
        for child, p in par.items():
            children[p].append(child)
        level: dict[int, int] = {}
        for v in dom:
            if v in level:
                continue
            # walk up to a vertex with a known level, then assign downward
            chain = []
            u = v
            seen_here = set()
            while u is not None and u not in level:
                if u in seen_here:
                    raise GraphError(f"cycle in parent assignment through {u}")
                seen_here.add(u)
                chain.append(u)
                u = par.get(u)
            for w in reversed(chain):
                p = par.get(w)
                level[w] = 1 if p is None else level[p] + 1
        self.domain = dom
        self.parent = par
        self._children = {v: tuple(sorted(cs)) for v, cs in children.items()}
        self._roots = tuple(sorted(v for v in dom if v not in par))
        self._level = level
        self._anc: dict[int, frozenset[int]] = {}

    # -- basic structure ---------------------------------------------------

    @property
    def roots(self) -> tuple[int, ...]:
        return self._roots

    def children(self, v: int) -> tuple[int, ...]:
        return self._children[v]

    def is_maximal(self, v: int) -> bool:
        return not self._children[v]

    def maximal_vertices(self) -> frozenset[int]:
        return frozenset(v for v in self.domain if not self._children[v])

    def nonmaximal_vertices(self) -> frozenset[int]:
        return frozenset(v for v in self.domain if self._children[v])

    # -- order queries -----------------------------------------------------

    def level(self, v: int) -> int:
        """Size of the chain {w : w <= v}; roots are at level 1."""
        if v not in self.domain:
            raise GraphError(f"vertex {v} outside the order domain")
        return self._level[v]

    def height(self) -> int:
        """Number of vertices on a longest chain; 0 on the empty domain."""
        return max(self._level.values(), default=0)

    def ancestors(self, v: int) -> tuple[int, ...]:
        """Strict ancestors of v, ordered root first."""
        out = []
        u = self.parent.get(v)
        while u is not None:
            out.append(u)
            u = self.parent.get(u)
        return tuple(reversed(out))

    def ancestor_set(self, v: int) -> frozenset[int]:
        cached = self._anc.get(v)
        if cached is None:
            cached = frozenset(self.ancestors(v))
            self._anc[v] = cached
        return cached

    def chain(self, v: int) -> tuple[int, ...]:
        """The down-set {w : w <= v} ordered root first."""
        return self.ancestors(v) + (v,)

    def leq(self, u: int, v: int) -> bool:
        return u == v or u in self.ancestor_set(v)

    def comparable(self, u: int, v: int) -> bool:
        return self.leq(u, v) or self.leq(v, u)

    # -- derived orders ----------------------------------------------------

    def restrict(self, vertices: Iterable[int]) -> "TreeOrder":
        """Restriction of the order to a vertex subset.

        The parent of v becomes its nearest ancestor inside the subset, which
        realises exactly the restricted relation (down-sets stay chains).
        """
        keep = frozenset(vertices)
        if not keep <= self.domain:
            raise GraphError("restriction set leaves the domain")
        par = {}
        for v in keep:
            u = self.parent.get(v)
            while u is not None and u not in keep:
                u = self.parent.get(u)
            if u is not None:
                par[v] = u
        return TreeOrder(keep, par)

    def relabel(self, mapping: Mapping[int, int]) -> "TreeOrder":
        return TreeOrder(
            (mapping[v] for v in self.domain),
            {mapping[c]: mapping[p] for c, p in self.parent.items()},
        )

    # -- serialisation -----------------------------------------------------

    def to_document(self) -> str:
        doc = {
            "roots": sorted(self._roots),
            "parent": {str(c): p for c, p in sorted(self.parent.items())},
            "height": self.height(),
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_document(cls, text: str) -> "TreeOrder":
        try:
            doc = json.loads(text)
            roots = [int(r) for r in doc["roots"]]
            parent = {int(c): int(p) for c, p in doc["parent"].items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed tree-order document: {exc}") from None
        order = cls(set(roots) | set(parent) | set(parent.values()), parent)
        if "height" in doc and doc["height"] != order.height():
            raise GraphError("tree-order document height does not match structure")
        return order

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreeOrder):
            return NotImplemented
        return self.domain == other.domain and self.parent == other.parent

    def __repr__(self) -> str:
        return f"TreeOrder(domain={sorted(self.domain)}, parent={dict(sorted(self.parent.items()))})"


@dataclass(frozen=True)
class OrderedGraph:
    """A graph together with a tree order on exactly its vertex set."""

    graph: Graph
    order: TreeOrder

    def __post_init__(self) -> None:
        if self.order.domain != frozenset(range(self.graph.n)):
            raise GraphError("order domain must equal the graph's vertex set")


def order_from_arcs(domain: Iterable[int], arcs: Iterable[tuple[int, int]]) -> TreeOrder:
    """Build a tree order from covering arcs (parent, child)."""
    parent: dict[int, int] = {}
    for p, c in arcs:
        if c in parent:
            raise GraphError(f"vertex {c} has two parents")
        parent[c] = p
    return TreeOrder(domain, parent)


def decomposition_of(t: TreeOrder) -> tuple[tuple[int, int], ...]:
    """Covering arcs (a, b) with a the immediate predecessor of b; sorted."""
    return tuple(sorted((p, c) for c, p in t.parent.items()))


def is_elimination_order(og: OrderedGraph) -> bool:
    """True iff every edge of the graph is comparable in the order."""
    t = og.order
    return all(t.comparable(u, v) for u, v in og.graph.edges)


def is_elim_order_to_degree(og: OrderedGraph, d: int) -> bool:
    """Validate an elimination order to degree d.

    For each vertex v the incomparable neighbour set must be empty, or v is
    maximal with at most d incomparable neighbours, all sharing v's strict
    ancestor set.  The condition is checked from every vertex, so both
    orientations of each incomparable edge are covered.
    """
    if d < 0:
        raise GraphError(f"degree bound must be non-negative, got {d}")
    g, t = og.graph, og.order
    for v in range(g.n):
        loose = [u for u in g.neighbours(v) if not t.comparable(u, v)]
        if not loose:
            continue
        if not t.is_maximal(v) or len(loose) > d:
            return False
        anc_v = t.ancestor_set(v)
        if any(t.ancestor_set(u) != anc_v for u in loose):
            return False
    return True


def nonmaximal_height(t: TreeOrder) -> int:
    """Height of the restriction to non-maximal vertices.

    This is the height measure that matches elimination distance: the
    maximal layer of an order to degree d is the degree-bounded residue and
    does not count towards the eliminated depth.
    """
    return t.restrict(t.nonmaximal_vertices()).height()


def tree_depth(graph: Graph, *, memo: dict | None = None) -> int:
    """Exact tree-depth via the delete-a-vertex recursion.

    Memoised both on exact reindexed edge sets and on canonical keys, so
    isomorphic subproblems are solved once.  Intended for n <= 14.
    """
    canon_memo = memo if memo is not None else {}
    exact_memo: dict[tuple[int, frozenset], int] = {}

    def td(g: Graph) -> int:
        if g.n == 0:
            return 0
        exact_key = (g.n, g.edges)
        if exact_key in exact_memo:
            return exact_memo[exact_key]
        ckey = canonical_key(g)
        if ckey in canon_memo:
            exact_memo[exact_key] = canon_memo[ckey]
            return canon_memo[ckey]
        comps = components(g)
        if len(comps) > 1:
            val = max(td(induced_subgraph(g, c)[0]) for c in comps)
        else:
            val = 1 + min(td(g.delete([v])) for v in range(g.n))
        exact_memo[exact_key] = val
        canon_memo[ckey] = val
        return val

    return td(graph)


@dataclass(frozen=True)
class SplitResult:
    """Non-maximal part of an order to degree d, plus the validity verdict.

    ``check`` is true iff all three split conclusions hold: the restricted
    order is an elimination order of the induced interior of full height
    minus one, the residue has degree at most d, and every residue component
    meets the interior in a chain.
    """

    interior: frozenset[int]
    interior_order: TreeOrder
    check: bool


def split_order(og: OrderedGraph, d: int) -> SplitResult:
    """Split a valid order to degree d into its non-maximal interior and residue."""
    if not is_elim_order_to_degree(og, d):
        raise GraphError("split_order requires an elimination order to degree d")
    g, t = og.graph, og.order
    interior = t.nonmaximal_vertices()
    interior_order = t.restrict(interior)

    sub, mapping = induced_subgraph(g, interior)
    sub_order = interior_order.relabel(mapping)
    conclusion1 = is_elimination_order(OrderedGraph(sub, sub_order)) and (
        interior_order.height() == max(t.height() - 1, 0)
    )

    residue = g.delete(interior)
    conclusion2 = residue.max_degree() <= d

    conclusion3 = True
    outside = sorted(set(range(g.n)) - interior)
    back = {new: old for new, old in enumerate(outside)}
    for comp in components(residue):
        nbrs = set()
        for v in comp:
            nbrs.update(u for u in g.neighbours(back[v]) if u in interior)
        chain_ok = all(t.comparable(a, b) for a in nbrs for b in nbrs)
        if not chain_ok:
            conclusion3 = False
            break

    return SplitResult(interior, interior_order, conclusion1 and conclusion2 and conclusion3)


def extend_order(graph: Graph, interior: Iterable[int], order: TreeOrder, d: int) -> TreeOrder:
    """Extend an elimination order of an induced subgraph to the whole graph.

    Every outside vertex becomes maximal, sitting above the chain of interior
    vertices adjacent (through its component) to it; components with no
    interior neighbours become fresh roots.  Preconditions are checked and
    raise distinct errors.
    """
    inter = frozenset(interior)
    if not inter <= frozenset(range(graph.n)):
        raise GraphError("interior set leaves the graph's vertex set")
    if order.domain != inter:
        raise GraphError("order domain must equal the interior set")
    for u, v in graph.edges:
        if u in inter and v in inter and not order.comparable(u, v):
            raise GraphError(f"interior edge {u}-{v} is incomparable: not an elimination order")
    residue = graph.delete(inter)
    if residue.max_degree() > d:
        raise GraphError(
            f"residue has degree {residue.max_degree()} > {d} after removing the interior"
        )
    outside = sorted(set(range(graph.n)) - inter)
    back = {new: old for new, old in enumerate(outside)}
    parent = dict(order.parent)
    for comp in components(residue):
        nbrs = set()
        for v in comp:
            nbrs.update(u for u in graph.neighbours(back[v]) if u in inter)
        if any(not order.comparable(a, b) for a in nbrs for b in nbrs):
            raise GraphError("a residue component meets the interior in an incomparable set")
        if nbrs:
            anchor = max(nbrs, key=order.level)
            for v in comp:
                parent[back[v]] = anchor
    return TreeOrder(range(graph.n), parent)
