"""graph6 interchange format, bit-exact.

Only the undirected graph6 variant is handled (no sparse6/digraph6).  The
codec is strict: the shortest legal vertex-count form is required, padding
bits must be zero, and trailing bytes are rejected, so ``emit . parse`` is
the identity on every accepted string.
"""

from __future__ import annotations

from .graph import Graph, ParseError

__all__ = ["parse_graph6", "emit_graph6"]

_HEADER = ">>graph6<<"


def _decode_count(data: bytes) -> tuple[int, int]:
    """Read the vertex count; return (n, bytes consumed)."""
    if not data:
        raise ParseError("empty graph6 string")
    if data[0] == 126:  # '~'
        if len(data) >= 2 and data[1] == 126:
            raw = data[2:8]
            if len(raw) < 6:
                raise ParseError("truncated graph6 vertex count")
            vals = [b - 63 for b in raw]
            if any(v < 0 or v > 63 for v in vals):
                raise ParseError("bad byte in graph6 vertex count")
            n = 0
            for v in vals:
                n = (n << 6) | v
            if n < 258048:
                raise ParseError("graph6 vertex count not in shortest form")
            return n, 8
        raw = data[1:4]
        if len(raw) < 3:
            raise ParseError("truncated graph6 vertex count")
        vals = [b - 63 for b in raw]
        if any(v < 0 or v > 63 for v in vals):
            raise ParseError("bad byte in graph6 vertex count")
        n = (vals[0] << 12) | (vals[1] << 6) | vals[2]
        if not (63 <= n < 258048):
            raise ParseError("graph6 vertex count not in shortest form")
        return n, 4
    n = data[0] - 63
    if not (0 <= n <= 62):
        raise ParseError(f"bad graph6 header byte {data[0]}")
    return n, 1


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` header is allowed)."""
    line = text.strip("\r\n")
    if line.startswith(_HEADER):
        line = line[len(_HEADER):]
    try:
        data = line.encode("ascii")
    except UnicodeEncodeError:
        raise ParseError("graph6 input is not ASCII") from None
    n, used = _decode_count(data)
    body = data[used:]
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(body) < nbytes:
        raise ParseError("truncated graph6 bit field")
    if len(body) > nbytes:
        raise ParseError("trailing data after graph6 bit field")
    bits = []
    for b in body:
        v = b - 63
        if not (0 <= v <= 63):
            raise ParseError(f"bad byte {b} in graph6 bit field")
        bits.append(v)
    edges = set()
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx // 6] & (1 << (5 - idx % 6)):
                edges.add((u, v))
            idx += 1
    # padding bits beyond the upper triangle must be zero
    while idx < 6 * nbytes:
        if bits[idx // 6] & (1 << (5 - idx % 6)):
            raise ParseError("non-zero padding in graph6 bit field")
        idx += 1
    return Graph(n, frozenset(edges))


def emit_graph6(graph: Graph) -> str:
    """Encode a graph as a graph6 string (no header, no newline)."""
    n = graph.n
    out = bytearray()
    if n <= 62:
        out.append(n + 63)
    elif n < 258048:
        out.append(126)
        out.append(((n >> 12) & 63) + 63)
        out.append(((n >> 6) & 63) + 63)
        out.append((n & 63) + 63)
    elif n < 1 << 36:
        out.append(126)
        out.append(126)
        for shift in range(30, -1, -6):
            out.append(((n >> shift) & 63) + 63)
    else:
        raise ValueError(f"graph too large for graph6: n={n}")
    acc = 0
    nacc = 0
    for v in range(1, n):
        for u in range(v):
            acc = (acc << 1) | (1 if graph.has_edge(u, v) else 0)
            nacc += 1
            if nacc == 6:
                out.append(acc + 63)
                acc = 0
                nacc = 0
    if nacc:
        out.append((acc << (6 - nacc)) + 63)
    return out.decode("ascii")
