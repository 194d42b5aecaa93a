"""Core graph types and elementary operations.

Graphs are loop-free, undirected, and live on dense 0-based vertex indices.
Coloured graphs pair a graph with a total colour assignment; colour keys are
finite sets of positive integers and isomorphism requires *exact* key
equality (colour classes are never permuted).

All values are immutable after construction and every operation is a pure
function, so everything here can be shared freely between threads.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable

__all__ = [
    "GraphError",
    "ParseError",
    "Graph",
    "ColouredGraph",
    "VertexPermutation",
    "parse_edge_list",
    "emit_edge_list",
    "induced_subgraph",
    "components",
    "apply_permutation",
    "permute_coloured",
    "brute_force_isomorphic",
    "uniform_colouring",
]


class GraphError(ValueError):
    """Structural violation: bad endpoints, self-loops, size mismatches."""


class ParseError(GraphError):
    """Malformed textual graph input."""


def _normalise_edge(u: int, v: int, n: int) -> tuple[int, int]:
    if not (isinstance(u, int) and isinstance(v, int)):
        raise GraphError(f"edge endpoints must be integers, got ({u!r}, {v!r})")
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected loop-free graph on vertices 0..n-1.

    ``edges`` holds normalised pairs (u, v) with u < v.  Adjacency is also
    kept as per-vertex sorted neighbour tuples for linear-time degree scans.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    _adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for e in self.edges:
            u, v = _normalise_edge(e[0], e[1], self.n)
            if (u, v) != e:
                raise GraphError(f"edge {e} is not normalised to (min, max)")
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in nbrs))

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph, normalising edge orientation and collapsing repeats."""
        return cls(n, frozenset(_normalise_edge(u, v, n) for u, v in pairs))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        """Maximum vertex degree; 0 for the empty graph."""
        return max((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def delete(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph on the complement of ``vertices`` (reindexed)."""
        drop = set(vertices)
        keep = [v for v in range(self.n) if v not in drop]
        sub, _ = induced_subgraph(self, keep)
        return sub

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(len(a) for a in self._adj))


@dataclass(frozen=True)
class ColouredGraph:
    """Graph plus a total map vertex -> colour key.

    A colour key is a finite (possibly empty) set of positive integers.
    Keys are totally ordered by comparing their sorted tuples, which is the
    order used whenever colour classes must be ranked canonically.
    """

    graph: Graph
    colours: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.colours) != self.graph.n:
            raise GraphError(
                f"colouring covers {len(self.colours)} vertices, graph has {self.graph.n}"
            )
        for key in self.colours:
            if not isinstance(key, frozenset) or any(
                not isinstance(c, int) or c < 1 for c in key
            ):
                raise GraphError(f"colour key {key!r} is not a set of positive integers")

    def key_tuple(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self.colours[v]))

    def colour_multiset(self) -> Counter:
        return Counter(tuple(sorted(k)) for k in self.colours)


def uniform_colouring(graph: Graph, key: frozenset[int] = frozenset()) -> ColouredGraph:
    """Colour every vertex with the same key (default: the empty key)."""
    return ColouredGraph(graph, (key,) * graph.n)


@dataclass(frozen=True)
class VertexPermutation:
    """Bijection on 0..n-1, stored as the image tuple."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.image)
        if sorted(self.image) != list(range(n)):
            raise GraphError(f"not a bijection on 0..{n - 1}: {self.image!r}")

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def inverse(self) -> "VertexPermutation":
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return VertexPermutation(tuple(inv))


def parse_edge_list(text: str) -> Graph:
    """Parse the plain edge-list format: first line ``n m``, then m lines ``u v``.

    Raises a distinct :class:`ParseError` for malformed lines, out-of-range
    endpoints, self-loops, duplicate edges, and wrong edge counts.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"malformed header line {lines[0]!r}, expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"malformed header line {lines[0]!r}, expected integers") from None
    if n < 0 or m < 0:
        raise ParseError(f"negative count in header {lines[0]!r}")
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}")
    seen: set[tuple[int, int]] = set()
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"malformed edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"malformed edge line {ln!r}") from None
        if u == v:
            raise ParseError(f"self-loop {u} {v}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range in {ln!r}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise ParseError(f"duplicate edge {u} {v}")
        seen.add(e)
    return Graph(n, frozenset(seen))


def emit_edge_list(graph: Graph) -> str:
    """Inverse of :func:`parse_edge_list` with sorted edges."""
    lines = [f"{graph.n} {graph.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in sorted(graph.edges))
    return "\n".join(lines) + "\n"


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``vertices``, reindexed to 0..|A|-1.

    Returns the subgraph together with the old->new index mapping so callers
    can translate results back.
    """
    vs = sorted(set(vertices))
    for v in vs:
        if not (0 <= v < graph.n):
            raise GraphError(f"vertex {v} outside 0..{graph.n - 1}")
    mapping = {old: new for new, old in enumerate(vs)}
    keep = set(vs)
    edges = frozenset(
        (mapping[u], mapping[v]) for u, v in graph.edges if u in keep and v in keep
    )
    return Graph(len(vs), edges), mapping


def components(graph: Graph) -> list[frozenset[int]]:
    """Reachability classes of the graph, sorted by minimum vertex index."""
    seen: set[int] = set()
    out: list[frozenset[int]] = []
    for start in range(graph.n):
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        comp = {start}
        while queue:
            v = queue.popleft()
            for w in graph.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        out.append(frozenset(comp))
    return out


def apply_permutation(graph: Graph, perm: VertexPermutation) -> Graph:
    """Relabel the graph along ``perm``; the result is isomorphic by construction."""
    if perm.size != graph.n:
        raise GraphError(f"permutation on {perm.size} points, graph has {graph.n} vertices")
    return Graph.from_edges(graph.n, ((perm(u), perm(v)) for u, v in graph.edges))


def permute_coloured(cg: ColouredGraph, perm: VertexPermutation) -> ColouredGraph:
    """Relabel a coloured graph; vertex perm(v) inherits v's colour key."""
    g = apply_permutation(cg.graph, perm)
    colours: list[frozenset[int]] = [frozenset()] * cg.graph.n
    for v in range(cg.graph.n):
        colours[perm(v)] = cg.colours[v]
    return ColouredGraph(g, tuple(colours))


def _iso_prescreen(a: ColouredGraph, b: ColouredGraph) -> bool:
    if a.graph.n != b.graph.n or a.graph.edge_count != b.graph.edge_count:
        return False
    if a.colour_multiset() != b.colour_multiset():
        return False
    sig_a = Counter((a.key_tuple(v), a.graph.degree(v)) for v in a.graph.vertices())
    sig_b = Counter((b.key_tuple(v), b.graph.degree(v)) for v in b.graph.vertices())
    return sig_a == sig_b


def brute_force_isomorphic(a: ColouredGraph, b: ColouredGraph) -> bool:
    """Exhaustive test for a colour- and edge-preserving bijection.

    Test oracle: independent of the canonisation machinery.  Intended for
    small instances (roughly n <= 9); the search is exhaustive backtracking
    over colour/degree-compatible assignments.
    """
    if not _iso_prescreen(a, b):
        return False
    ga, gb = a.graph, b.graph
    n = ga.n
    if n == 0:
        return True

    class_of: dict[tuple, list[int]] = {}
    for v in range(n):
        class_of.setdefault((a.key_tuple(v), ga.degree(v)), []).append(v)
    # Most-constrained-first: rare (colour, degree) classes, then high degree.
    order = sorted(
        range(n),
        key=lambda v: (len(class_of[(a.key_tuple(v), ga.degree(v))]), -ga.degree(v), v),
    )
    cands = {
        v: [
            w
            for w in range(n)
            if b.key_tuple(w) == a.key_tuple(v) and gb.degree(w) == ga.degree(v)
        ]
        for v in range(n)
    }
    image = [-1] * n
    preim = [-1] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in cands[v]:
            if preim[w] >= 0:
                continue
            ok = True
            for x in ga.neighbours(v):
                ix = image[x]
                if ix >= 0 and not gb.has_edge(w, ix):
                    ok = False
                    break
            if ok:
                for y in gb.neighbours(w):
                    src = preim[y]
                    if src >= 0 and not ga.has_edge(v, src):
                        ok = False
                        break
            if not ok:
                continue
            image[v] = w
            preim[w] = v
            if extend(i + 1):
                return True
            image[v] = -1
            preim[w] = -1
        return False

    return extend(0)
