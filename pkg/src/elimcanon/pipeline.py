"""End-to-end canonisation via a canonical torso decomposition.

The invariant tree of a graph is built in three steps: take the d-degree
torso, choose a canonical minimum-height elimination forest of it, and label
each forest node with (a) the levels of its strict ancestors that are true
graph neighbours and (b) the multiset of canonical encodings of the
low-degree components anchored at it.  A fresh root holds the components
with no core neighbours.  The canonical text of that labelled tree is a
complete isomorphism invariant, and the canonical form is reconstructed
from the text alone.

Canonical forest choice.  Candidate forests are the recursively
minimum-height elimination forests of the torso.  Exploring all of them is
exponential in the core size, so the search restricts candidates at every
branching point to an isomorphism-invariant subset: candidate roots are
ranked by the stable refinement signature of the whole graph with the
root, the placed ancestors (by level), the pending set, the remaining core
and the periphery all marked by colours; only minimal-signature roots
survive, and exact marked canonisation then merges candidates that are
genuinely interchangeable.  Because every selection rule and the final
text comparison are isomorphism-invariant, the resulting text is canonical
even though only a sliver of the candidate space is walked; completeness
holds because the text reconstructs the graph up to isomorphism.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .canon import canon_coloured, stable_signature
from .elimination import Torso, torso
from .graph import ColouredGraph, Graph, GraphError, components, induced_subgraph
from .treecanon import LabelledTree, TreeLabel, canon_tree, decode_tree
from .treeorder import OrderedGraph, TreeOrder, is_elimination_order

__all__ = [
    "DecoratedDecomposition",
    "decorate_decomposition",
    "canonical_torso_decomposition",
    "build_invariant_tree",
    "canonical_form",
    "isomorphic",
]

_MARK_ROOT_CAND = frozenset({3})
_MARK_PENDING = frozenset({4})
_MARK_CORE_ELSE = frozenset({5})
_MARK_PERIPHERY = frozenset({6})
_ANC_BASE = 10


@dataclass(frozen=True)
class _PeripheryComponent:
    vertices: tuple[int, ...]          # original vertex ids
    core_nbrs: frozenset[int]          # core indices


class _Context:
    """Shared state for one decomposition search."""

    def __init__(self, graph: Graph, torso_result: Torso,
                 label_adj: tuple[frozenset[int], ...],
                 periphery: list[_PeripheryComponent]):
        self.graph = graph
        self.torso_result = torso_result
        self.core_graph = torso_result.core
        self.back_map = torso_result.back_map
        self.core_of = {orig: i for i, orig in enumerate(self.back_map)}
        self.label_adj = label_adj
        self.periphery = periphery
        self._td_memo: dict[frozenset[int], int] = {}
        self._adj = self.core_graph._adj

    @classmethod
    def for_graph(cls, graph: Graph, d: int) -> "_Context":
        t = torso(graph, d)
        core_of = {orig: i for i, orig in enumerate(t.back_map)}
        label_adj = tuple(
            frozenset(
                core_of[u]
                for u in graph.neighbours(t.back_map[i])
                if u in core_of
            )
            for i in range(t.core.n)
        )
        rest_vertices = [v for v in range(graph.n) if v not in core_of]
        rest, mapping = induced_subgraph(graph, rest_vertices)
        back = {new: old for old, new in mapping.items()}
        periphery = []
        for comp in components(rest):
            verts = tuple(sorted(back[v] for v in comp))
            nbrs = frozenset(
                core_of[u]
                for v in verts
                for u in graph.neighbours(v)
                if u in core_of
            )
            periphery.append(_PeripheryComponent(verts, nbrs))
        return cls(graph, t, label_adj, periphery)

    @classmethod
    def for_core_only(cls, core: Graph) -> "_Context":
        ident = tuple(range(core.n))
        label_adj = tuple(
            frozenset(core.neighbours(i)) for i in range(core.n)
        )
        return cls(core, Torso(core, ident, frozenset()), label_adj, [])

    # -- core subgraph structure --------------------------------------------

    def core_components(self, verts: frozenset[int]) -> list[frozenset[int]]:
        seen: set[int] = set()
        out = []
        for s in sorted(verts):
            if s in seen:
                continue
            comp = {s}
            seen.add(s)
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self._adj[v]:
                    if w in verts and w not in seen:
                        seen.add(w)
                        comp.add(w)
                        queue.append(w)
            out.append(frozenset(comp))
        return out

    def tree_depth_of(self, verts: frozenset[int]) -> int:
        if not verts:
            return 0
        memo = self._td_memo
        cached = memo.get(verts)
        if cached is not None:
            return cached
        comps = self.core_components(verts)
        if len(comps) > 1:
            val = max(self.tree_depth_of(c) for c in comps)
        else:
            val = 1 + min(self.tree_depth_of(verts - {v}) for v in verts)
        memo[verts] = val
        return val

    # -- scoring -------------------------------------------------------------

    def _marking(self, anc: tuple[int, ...], pending: frozenset[int], r: int) -> ColouredGraph:
        colours = [_MARK_PERIPHERY] * self.graph.n
        for orig in self.back_map:
            colours[orig] = _MARK_CORE_ELSE
        for i in pending:
            colours[self.back_map[i]] = _MARK_PENDING
        for pos, a in enumerate(anc):
            colours[self.back_map[a]] = frozenset({_ANC_BASE + pos + 1})
        colours[self.back_map[r]] = _MARK_ROOT_CAND
        return ColouredGraph(self.graph, tuple(colours))

    # -- labels ----------------------------------------------------------------

    def component_encoding(self, comp: _PeripheryComponent, level_of: dict[int, int]) -> str:
        sub, mapping = induced_subgraph(self.graph, comp.vertices)
        colours: list[frozenset[int]] = [frozenset()] * sub.n
        for v in comp.vertices:
            key = set()
            for u in self.graph.neighbours(v):
                ci = self.core_of.get(u)
                if ci is not None:
                    if ci not in level_of:
                        raise AssertionError(
                            "anchored component has a core neighbour off its chain"
                        )
                    key.add(level_of[ci])
            colours[mapping[v]] = frozenset(key)
        return canon_coloured(ColouredGraph(sub, tuple(colours))).text

    def node_label(self, r: int, anc: tuple[int, ...]) -> TreeLabel:
        on_chain = set(anc) | {r}
        levels = frozenset(
            pos + 1 for pos, a in enumerate(anc) if a in self.label_adj[r]
        )
        level_of = {a: pos + 1 for pos, a in enumerate(anc)}
        level_of[r] = len(anc) + 1
        encs = [
            self.component_encoding(comp, level_of)
            for comp in self.periphery
            if r in comp.core_nbrs and comp.core_nbrs <= on_chain
        ]
        return TreeLabel(levels, tuple(encs))

    # -- the guided search -----------------------------------------------------

    def chain_tree(self, K: frozenset[int], anc: tuple[int, ...]) -> tuple[str, dict[int, int | None]]:
        """Canonical subtree for connected core part K below ancestor chain anc."""
        budget = self.tree_depth_of(K)
        viable = []
        split_cache: dict[int, list[frozenset[int]]] = {}
        for r in sorted(K):
            rest = K - {r}
            comps = self.core_components(rest) if rest else []
            if all(self.tree_depth_of(c) <= budget - 1 for c in comps):
                viable.append(r)
                split_cache[r] = comps
        if not viable:
            raise AssertionError("no viable root for a connected core part")
        if len(viable) > 1:
            scored = [
                (stable_signature(self._marking(anc, K, r)), r) for r in viable
            ]
            low = min(s for s, _ in scored)
            pool = [r for s, r in scored if s == low]
            if len(pool) > 1:
                by_text: dict[str, int] = {}
                for r in pool:
                    txt = canon_coloured(self._marking(anc, K, r)).text
                    by_text.setdefault(txt, r)
                pool = sorted(by_text.values())
        else:
            pool = viable
        best: tuple[str, dict[int, int | None]] | None = None
        for r in pool:
            anc2 = anc + (r,)
            child_results = [self.chain_tree(c, anc2) for c in split_cache[r]]
            child_texts = sorted(t for t, _ in child_results)
            text = (
                "(" + self.node_label(r, anc).serialise() + "|"
                + ",".join(child_texts) + ")"
            )
            if best is None or text < best[0]:
                parents: dict[int, int | None] = {r: anc[-1] if anc else None}
                for _, frag in child_results:
                    parents.update(frag)
                best = (text, parents)
        assert best is not None
        return best

    def full_tree_text(self) -> tuple[str, TreeOrder]:
        parts = self.core_components(frozenset(range(self.core_graph.n)))
        parents: dict[int, int | None] = {}
        texts = []
        for part in parts:
            text, frag = self.chain_tree(part, ())
            texts.append(text)
            parents.update(frag)
        root_encs = sorted(
            self.component_encoding(comp, {})
            for comp in self.periphery
            if not comp.core_nbrs
        )
        root_label = TreeLabel(frozenset(), tuple(root_encs))
        full = "(" + root_label.serialise() + "|" + ",".join(sorted(texts)) + ")"
        order = TreeOrder(
            range(self.core_graph.n),
            {c: p for c, p in parents.items() if p is not None},
        )
        return full, order


@dataclass(frozen=True)
class DecoratedDecomposition:
    """A torso elimination order with levels and anchored components.

    ``attach`` maps periphery component index to (anchor core index or None
    for root-attached components, the level-coloured component, its
    canonical encoding).
    """

    torso: Torso
    order: TreeOrder
    levels: dict[int, int]
    attach: dict[int, tuple[int | None, ColouredGraph, str]]


def decorate_decomposition(graph: Graph, d: int, order: TreeOrder) -> DecoratedDecomposition:
    """Attach levels and coloured components to a torso elimination order.

    Validates the structural invariants: the order is an elimination order
    of the torso core, every periphery component meets the core in a chain
    of the order, and component colours only use levels on the anchor's
    chain (one core vertex per level).
    """
    ctx = _Context.for_graph(graph, d)
    t = ctx.torso_result
    if order.domain != frozenset(range(t.core.n)):
        raise GraphError("order domain must be the torso core")
    if not is_elimination_order(OrderedGraph(t.core, order)):
        raise GraphError("order is not an elimination order of the torso core")
    levels = {i: order.level(i) for i in range(t.core.n)}
    attach: dict[int, tuple[int | None, ColouredGraph, str]] = {}
    for idx, comp in enumerate(ctx.periphery):
        nbrs = sorted(comp.core_nbrs)
        for a in nbrs:
            for b in nbrs:
                if not order.comparable(a, b):
                    raise GraphError(
                        "periphery component meets the core in an incomparable set"
                    )
        anchor = max(nbrs, key=order.level) if nbrs else None
        if anchor is not None:
            chain = set(order.chain(anchor))
            if not comp.core_nbrs <= chain:
                raise GraphError("component neighbours leave the anchor's chain")
            chain_levels = [levels[c] for c in chain]
            if len(chain_levels) != len(set(chain_levels)):
                raise GraphError("anchor chain repeats a level")
        level_of = {c: levels[c] for c in comp.core_nbrs}
        sub, mapping = induced_subgraph(graph, comp.vertices)
        colours: list[frozenset[int]] = [frozenset()] * sub.n
        for v in comp.vertices:
            key = frozenset(
                levels[ctx.core_of[u]]
                for u in graph.neighbours(v)
                if u in ctx.core_of
            )
            colours[mapping[v]] = key
        cg = ColouredGraph(sub, tuple(colours))
        attach[idx] = (anchor, cg, canon_coloured(cg).text)
    return DecoratedDecomposition(t, order, levels, attach)


def canonical_torso_decomposition(core: Graph) -> TreeOrder:
    """Canonical minimum-height elimination forest of a core graph.

    Isomorphism-invariant in the sense that isomorphic cores yield forests
    with identical canonical tree texts downstream.
    """
    ctx = _Context.for_core_only(core)
    _, order = ctx.full_tree_text()
    return order


def build_invariant_tree(graph: Graph, d: int) -> LabelledTree:
    """The rooted labelled tree whose canonical text identifies the graph."""
    ctx = _Context.for_graph(graph, d)
    text, order = ctx.full_tree_text()
    deco = decorate_decomposition(graph, d, order)
    core_n = ctx.core_graph.n
    parents: list[int | None] = [None] * (core_n + 1)
    labels: list[TreeLabel] = [TreeLabel(frozenset(), ())] * (core_n + 1)
    root_encs = []
    comp_encs: dict[int, list[str]] = {i: [] for i in range(core_n)}
    for anchor, _cg, enc in deco.attach.values():
        if anchor is None:
            root_encs.append(enc)
        else:
            comp_encs[anchor].append(enc)
    for i in range(core_n):
        p = deco.order.parent.get(i)
        parents[i + 1] = 0 if p is None else p + 1
        anc = deco.order.ancestor_set(i)
        level_levels = frozenset(
            deco.levels[w] for w in ctx.label_adj[i] if w in anc
        )
        labels[i + 1] = TreeLabel(level_levels, tuple(comp_encs[i]))
    labels[0] = TreeLabel(frozenset(), tuple(sorted(root_encs)))
    tree = LabelledTree(parents, labels)
    if canon_tree(tree) != text:
        raise AssertionError("assembled tree text disagrees with the search text")
    return tree


def canonical_form(graph: Graph, d: int) -> Graph:
    """Canonical representative: isomorphic to the input, identical across
    isomorphic inputs (vertex-for-vertex equal edge lists).

    Vertex numbers are assigned by depth-first traversal of the canonical
    tree, each node's component vertices following it in encoding order.
    """
    from .canon import decode_encoding

    text = canon_tree(build_invariant_tree(graph, d))
    tree = decode_tree(text)
    edges: list[tuple[int, int]] = []
    chain: list[int] = []
    counter = 0

    def visit(node: int, is_root: bool) -> None:
        nonlocal counter
        label = tree.label(node)
        if not is_root:
            my_id = counter
            counter += 1
            for lvl in sorted(label.levels):
                if not (1 <= lvl <= len(chain)):
                    raise GraphError("tree text references a level off the chain")
                edges.append((chain[lvl - 1], my_id))
            chain.append(my_id)
        for enc in label.components:
            cg = decode_encoding(enc)
            base = counter
            counter += cg.graph.n
            for u, v in sorted(cg.graph.edges):
                edges.append((base + u, base + v))
            for z in range(cg.graph.n):
                for lvl in sorted(cg.colours[z]):
                    if is_root:
                        raise GraphError("root-attached component carries colours")
                    if not (1 <= lvl <= len(chain)):
                        raise GraphError("component colour references a level off the chain")
                    edges.append((chain[lvl - 1], base + z))
        for child in tree.children(node):
            visit(child, False)
        if not is_root:
            chain.pop()

    visit(tree.root, True)
    return Graph.from_edges(counter, edges)


def isomorphic(a: Graph, b: Graph, d: int) -> bool:
    """Graph isomorphism via equality of canonical tree texts."""
    return canon_tree(build_invariant_tree(a, d)) == canon_tree(build_invariant_tree(b, d))
