"""Deletion distance to bounded degree: kernel, search, and isomorphism test.

The kernel shrinks the search for a size-<=k deletion set leaving degree at
most d: vertices of degree > k+d are forced into every solution, and all
minimum solutions of the reduced graph live inside an O(k(k+d)^2) candidate
set.  If the candidate set overflows that bound the instance is provably
infeasible at the given budget (the bound is derived assuming a solution
exists), which the kernel reports instead of returning an oversized set.

All vertex sets in :class:`KernelResult` use original vertex ids; the
reduced graph carries a back map for translation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations, permutations

from .canon import canon_coloured, iso_coloured
from .graph import (
    ColouredGraph,
    Graph,
    GraphError,
    induced_subgraph,
)

__all__ = [
    "KernelResult",
    "kernelize",
    "find_deletion_set",
    "minimum_deletion_sets",
    "DeletionIso",
    "iso_by_deletion",
    "colour_gadget",
]


@dataclass(frozen=True)
class KernelResult:
    """Outcome of kernelization at budget k, degree d.

    ``forced`` are the vertices of degree > k+d (contained in every solution
    of size <= k); ``reduced`` is the graph minus the forced set, reindexed,
    with ``back_map`` giving original ids; ``budget`` is what remains of k;
    ``candidates`` (original ids, inside the reduced graph) contains every
    minimum-size deletion set of the reduced graph whenever one of size
    <= budget exists.  ``infeasible`` is set when no solution of size <= k
    can exist: too many forced vertices, or candidate overflow.
    """

    reduced: Graph
    back_map: tuple[int, ...]
    budget: int
    forced: frozenset[int]
    candidates: frozenset[int]
    infeasible: bool
    k: int
    d: int

    @property
    def candidate_bound(self) -> int:
        b, s = self.budget, self.k + self.d
        return b + b * s + b * s * s


def kernelize(graph: Graph, k: int, d: int) -> KernelResult:
    """Linear-time kernel for deletion distance to degree d at budget k."""
    if k < 0 or d < 0:
        raise GraphError("budget and degree bound must be non-negative")
    forced = frozenset(v for v in range(graph.n) if graph.degree(v) > k + d)
    if len(forced) > k:
        return KernelResult(graph, tuple(range(graph.n)), k, forced, frozenset(), True, k, d)
    keep = [v for v in range(graph.n) if v not in forced]
    reduced, mapping = induced_subgraph(graph, keep)
    back_map = tuple(keep)
    budget = k - len(forced)
    high = [v for v in range(reduced.n) if reduced.degree(v) > d]
    cand = set(high)
    for v in high:
        cand.update(reduced.neighbours(v))
    candidates = frozenset(back_map[v] for v in cand)
    bound = budget + budget * (k + d) + budget * (k + d) ** 2
    if len(candidates) > bound:
        # a solution of size <= budget would force |candidates| <= bound,
        # so none exists
        return KernelResult(reduced, back_map, budget, forced, frozenset(), True, k, d)
    return KernelResult(reduced, back_map, budget, forced, candidates, False, k, d)


def _is_deletion_set(graph: Graph, drop: set[int], d: int) -> bool:
    degs = [graph.degree(v) for v in range(graph.n)]
    for v in drop:
        for u in graph.neighbours(v):
            degs[u] -= 1
    return all(degs[v] <= d for v in range(graph.n) if v not in drop)


def minimum_deletion_sets(graph: Graph, k: int, d: int) -> list[frozenset[int]] | None:
    """All minimum-size deletion sets, if some solution of size <= k exists.

    Search is restricted to forced plus candidates, which is complete for
    minimum-size solutions; returns None when the budget is too small.
    Sets are listed in ascending lexicographic order.
    """
    kern = kernelize(graph, k, d)
    if kern.infeasible:
        return None
    cand = sorted(kern.candidates)
    for size in range(kern.budget + 1):
        hits = [
            frozenset(kern.forced | set(extra))
            for extra in combinations(cand, size)
            if _is_deletion_set(graph, set(kern.forced) | set(extra), d)
        ]
        if hits:
            return hits
    return None


def find_deletion_set(graph: Graph, k: int, d: int) -> frozenset[int] | None:
    """A minimum-size deletion set of size <= k, or None.

    Deterministic tie-break: the lexicographically smallest vertex set among
    the minimum-size solutions.
    """
    sets = minimum_deletion_sets(graph, k, d)
    if sets is None:
        return None
    return min(sets, key=sorted)


class DeletionIso(enum.Enum):
    """Three-valued outcome of the kernel-driven isomorphism test."""

    ISOMORPHIC = "isomorphic"
    NOT_ISOMORPHIC = "not-isomorphic"
    PARAMETER_TOO_SMALL = "parameter-too-small"

    def __bool__(self) -> bool:
        return self is DeletionIso.ISOMORPHIC


def _index_colouring(graph: Graph, removed: list[int]) -> ColouredGraph:
    """Colour the residue by the 1-based index sets of removed neighbours."""
    removed_pos = {v: i + 1 for i, v in enumerate(removed)}
    keep = [v for v in range(graph.n) if v not in removed_pos]
    sub, mapping = induced_subgraph(graph, keep)
    colours: list[frozenset[int]] = [frozenset()] * sub.n
    for v in keep:
        key = frozenset(removed_pos[u] for u in graph.neighbours(v) if u in removed_pos)
        colours[mapping[v]] = key
    return ColouredGraph(sub, tuple(colours))


def iso_by_deletion(a: Graph, b: Graph, k: int, d: int) -> DeletionIso:
    """Isomorphism through minimum deletion sets and coloured residues.

    Both graphs are kernelized; all minimum-size deletion sets (size <= k)
    are enumerated on each side, and every edge-preserving bijection between
    a pair of them is tested for extension by comparing the index-coloured
    residues with the coloured canoniser.  If either graph has no deletion
    set within budget the parameter is reported as too small rather than
    answering false.
    """
    sets_a = minimum_deletion_sets(a, k, d)
    sets_b = minimum_deletion_sets(b, k, d)
    if sets_a is None or sets_b is None:
        return DeletionIso.PARAMETER_TOO_SMALL
    if a.n != b.n or a.edge_count != b.edge_count:
        return DeletionIso.NOT_ISOMORPHIC
    if a.degree_sequence() != b.degree_sequence():
        return DeletionIso.NOT_ISOMORPHIC
    size_a = len(sets_a[0]) if sets_a else 0
    size_b = len(sets_b[0]) if sets_b else 0
    if size_a != size_b:
        return DeletionIso.NOT_ISOMORPHIC
    for sa in sets_a:
        left = sorted(sa)
        for sb in sets_b:
            for image in permutations(sorted(sb)):
                ok = True
                for i in range(len(left)):
                    for j in range(i + 1, len(left)):
                        if a.has_edge(left[i], left[j]) != b.has_edge(image[i], image[j]):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    continue
                if iso_coloured(
                    _index_colouring(a, left), _index_colouring(b, list(image))
                ):
                    return DeletionIso.ISOMORPHIC
    return DeletionIso.NOT_ISOMORPHIC


def colour_gadget(cg: ColouredGraph) -> Graph:
    """Reduce coloured isomorphism to plain isomorphism via cycle gadgets.

    Every vertex with colour value c grows a private simple cycle of length
    c + 2 through it (c + 1 fresh vertices), raising the maximum degree by
    exactly 2.  Colour values: a singleton key {c} is used as c directly;
    if any composite or empty key is present, all distinct keys of this
    graph are ranked 1..k in canonical key order instead.  With ranking the
    plain-vs-coloured equivalence is only meaningful for graphs drawn from
    the same key set.
    """
    n = cg.graph.n
    keys = [cg.key_tuple(v) for v in range(n)]
    if all(len(k) == 1 for k in keys):
        value = {k: k[0] for k in set(keys)}
    else:
        ranked = sorted(set(keys))
        value = {k: i + 1 for i, k in enumerate(ranked)}
    edges = set(cg.graph.edges)
    nxt = n
    for v in range(n):
        c = value[keys[v]]
        ring = [v] + list(range(nxt, nxt + c + 1))
        nxt += c + 1
        for i in range(len(ring)):
            u, w = ring[i], ring[(i + 1) % len(ring)]
            edges.add((u, w) if u < w else (w, u))
    return Graph(nxt, frozenset(edges))
