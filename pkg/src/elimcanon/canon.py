"""Canonical forms of coloured graphs.

The canoniser is classic individualisation-refinement: refine the ordered
colour partition to a stable (equitable) one, then branch on the vertices of
the first smallest non-singleton cell, keeping only branches whose refined
partition invariant is minimal.  Because every branching rule and the final
comparison are isomorphism-invariant, the minimum leaf encoding is a
canonical form; completeness follows because an encoding decodes back to a
concrete coloured graph isomorphic to the input.

Worst-case cost is exponential; inputs here are desk-scale (small graphs or
low-degree components), where refinement discretises almost everything.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import ColouredGraph, Graph, GraphError, uniform_colouring

__all__ = [
    "CanonicalEncoding",
    "canon_coloured",
    "iso_coloured",
    "decode_encoding",
    "canonical_key",
    "stable_signature",
]


@dataclass(frozen=True, order=True)
class CanonicalEncoding:
    """Total serialisation of a coloured graph under its canonical labelling.

    Format (bit-exact, compared and hashed as text):
    ``n=<n>;c=<key,key,...>;e=<u-v,u-v,...>`` where each key is the vertex's
    sorted colour set joined by ``.`` and edges are sorted pairs.
    """

    text: str


def _initial_cells(n: int, keys: list[tuple[int, ...]]) -> list[list[int]]:
    by_key: dict[tuple[int, ...], list[int]] = {}
    for v in range(n):
        by_key.setdefault(keys[v], []).append(v)
    return [by_key[k] for k in sorted(by_key)]


def _refine(adj: tuple[tuple[int, ...], ...], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbour-cell multisets until stable.

    Sub-cells are ordered by signature value, so the ordered partition is an
    isomorphism invariant of (graph, initial ordered partition).
    """
    n = len(adj)
    cell_of = [0] * n
    while True:
        for i, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = i
        new_cells: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            buckets: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple(sorted(cell_of[w] for w in adj[v]))
                buckets.setdefault(sig, []).append(v)
            if len(buckets) == 1:
                new_cells.append(cell)
            else:
                changed = True
                for sig in sorted(buckets):
                    new_cells.append(buckets[sig])
        if not changed:
            return new_cells
        cells = new_cells


def _partition_invariant(
    adj: tuple[tuple[int, ...], ...],
    keys: list[tuple[int, ...]],
    cells: list[list[int]],
) -> tuple:
    """Comparable invariant of a stable ordered partition (sizes, keys, quotient)."""
    n = len(adj)
    cell_of = [0] * n
    for i, cell in enumerate(cells):
        for v in cell:
            cell_of[v] = i
    rows = []
    for cell in cells:
        v = cell[0]
        rows.append((len(cell), keys[v], tuple(sorted(cell_of[w] for w in adj[v]))))
    return tuple(rows)


def _encode(
    n: int,
    adj: tuple[tuple[int, ...], ...],
    keys: list[tuple[int, ...]],
    cells: list[list[int]],
) -> str:
    pos = [0] * n
    for i, cell in enumerate(cells):
        pos[cell[0]] = i
    colour_part = ",".join(".".join(map(str, keys[cells[i][0]])) for i in range(n))
    edge_pairs = set()
    for v in range(n):
        pv = pos[v]
        for w in adj[v]:
            if v < w:
                pw = pos[w]
                edge_pairs.add((pv, pw) if pv < pw else (pw, pv))
    edge_part = ",".join(f"{u}-{v}" for u, v in sorted(edge_pairs))
    return f"n={n};c={colour_part};e={edge_part}"


def _canonise(n: int, adj: tuple[tuple[int, ...], ...], keys: list[tuple[int, ...]]) -> str:
    if n == 0:
        return "n=0;c=;e="
    best_text: str | None = None
    best_pos: list[int] | None = None
    generators: list[tuple[int, ...]] = []

    def leaf(cells: list[list[int]]) -> None:
        nonlocal best_text, best_pos
        pos = [0] * n
        for i, cell in enumerate(cells):
            pos[cell[0]] = i
        text = _encode(n, adj, keys, cells)
        if best_text is None or text < best_text:
            best_text, best_pos = text, pos
        elif text == best_text and best_pos is not None:
            # two labellings with identical texts compose to an automorphism
            inv_best = [0] * n
            inv_here = [0] * n
            for v in range(n):
                inv_best[best_pos[v]] = v
                inv_here[pos[v]] = v
            sigma = tuple(inv_here[best_pos[v]] for v in range(n))
            if any(sigma[v] != v for v in range(n)) and sigma not in generators:
                generators.append(sigma)

    def orbit_reps(candidates: list[int], prefix: list[int]) -> "function":
        """Union-find over candidates w.r.t. generators fixing the prefix."""
        fixing = [
            g for g in generators if all(g[p] == p for p in prefix)
        ]
        parent = {v: v for v in range(n)}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in fixing:
            for v in range(n):
                a, b = find(v), find(g[v])
                if a != b:
                    parent[a] = b
        return find

    def search(cells: list[list[int]], prefix: list[int]) -> None:
        target = None
        for i, cell in enumerate(cells):
            if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
                target = i
        if target is None:
            leaf(cells)
            return
        branches = []
        for v in sorted(cells[target]):
            split = (
                cells[:target]
                + [[v], [w for w in cells[target] if w != v]]
                + cells[target + 1:]
            )
            refined = _refine(adj, split)
            branches.append((v, _partition_invariant(adj, keys, refined), refined))
        m = min(inv for _, inv, _ in branches)
        explored: list[int] = []
        for v, inv, refined in branches:
            if inv != m:
                continue
            if explored:
                # skip candidates automorphic (under the path stabiliser) to
                # an explored one; generators grow as leaves are found
                find = orbit_reps(explored, prefix)
                if any(find(v) == find(u) for u in explored):
                    continue
            explored.append(v)
            prefix.append(v)
            search(refined, prefix)
            prefix.pop()

    search(_refine(adj, _initial_cells(n, keys)), [])
    assert best_text is not None
    return best_text


@lru_cache(maxsize=1 << 16)
def _canon_cached(n: int, edges: frozenset, keys: tuple) -> str:
    graph = Graph(n, edges)
    return _canonise(n, graph._adj, list(keys))


def canon_coloured(cg: ColouredGraph) -> CanonicalEncoding:
    """Canonical encoding: equal texts exactly for isomorphic coloured graphs."""
    keys = tuple(cg.key_tuple(v) for v in range(cg.graph.n))
    return CanonicalEncoding(_canon_cached(cg.graph.n, cg.graph.edges, keys))


def iso_coloured(a: ColouredGraph, b: ColouredGraph) -> bool:
    """Coloured-graph isomorphism with exact colour-class matching."""
    return canon_coloured(a) == canon_coloured(b)


def canonical_key(graph: Graph) -> str:
    """Canonical text of a plain graph (uniform colouring); used as a memo key."""
    return canon_coloured(uniform_colouring(graph)).text


def stable_signature(cg: ColouredGraph) -> tuple:
    """Invariant of the stable refined partition, without any branching.

    Cheap and isomorphism-invariant but incomplete: equal signatures do not
    imply isomorphism.  Used to rank candidates before exact comparison.
    """
    keys = [cg.key_tuple(v) for v in range(cg.graph.n)]
    cells = _refine(cg.graph._adj, _initial_cells(cg.graph.n, keys))
    return _partition_invariant(cg.graph._adj, keys, cells)


def decode_encoding(text: str) -> ColouredGraph:
    """Rebuild the coloured graph a canonical encoding describes."""
    parts = text.split(";")
    if len(parts) != 3 or not parts[0].startswith("n=") or not parts[1].startswith("c=") or not parts[2].startswith("e="):
        raise GraphError(f"malformed encoding {text!r}")
    try:
        n = int(parts[0][2:])
    except ValueError:
        raise GraphError(f"malformed vertex count in {text!r}") from None
    colour_part = parts[1][2:]
    if n == 0:
        if colour_part:
            raise GraphError(f"colour list does not match n=0 in {text!r}")
        colours: list[frozenset[int]] = []
    else:
        fields = colour_part.split(",")
        if len(fields) != n:
            raise GraphError(f"colour list length mismatch in {text!r}")
        colours = [
            frozenset(int(c) for c in f.split(".")) if f else frozenset() for f in fields
        ]
    edge_part = parts[2][2:]
    edges = set()
    if edge_part:
        for token in edge_part.split(","):
            try:
                u_s, v_s = token.split("-")
                u, v = int(u_s), int(v_s)
            except ValueError:
                raise GraphError(f"malformed edge token {token!r}") from None
            edges.add((u, v))
    return ColouredGraph(Graph(n, frozenset(edges)), tuple(colours))
