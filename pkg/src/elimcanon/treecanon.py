"""Canonical text forms of rooted labelled trees.

Each node carries a two-part label: a finite set of positive integers (a
level set) and a multiset of canonical component encodings.  Two trees get
the same text exactly when a root- and label-preserving isomorphism exists.

Grammar (bit-exact):
    node     := "(" label "|" children ")"
    label    := levels "#" enc ("#" enc)*   -- levels may be empty
    levels   := int ("." int)*
    children := "" | node ("," node)*       -- children sorted by text

Labels never contain parentheses or "|", and encodings never contain "#",
so the form parses unambiguously even though encodings contain commas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = ["TreeLabel", "LabelledTree", "canon_tree", "decode_tree"]

_FORBIDDEN = set("()|")


@dataclass(frozen=True)
class TreeLabel:
    """Node label: level set plus a sorted multiset of encodings."""

    levels: frozenset[int]
    components: tuple[str, ...]

    def __post_init__(self) -> None:
        if any(not isinstance(i, int) or i < 1 for i in self.levels):
            raise ValueError(f"level set must hold positive integers: {self.levels!r}")
        for enc in self.components:
            if not enc or set(enc) & _FORBIDDEN or "#" in enc:
                raise ValueError(f"component encoding {enc!r} not embeddable in a label")
        object.__setattr__(self, "components", tuple(sorted(self.components)))

    def serialise(self) -> str:
        levels = ".".join(map(str, sorted(self.levels)))
        return levels + "#" + "#".join(self.components)

    @classmethod
    def deserialise(cls, text: str) -> "TreeLabel":
        parts = text.split("#")
        if len(parts) < 2:
            raise ValueError(f"malformed label {text!r}")
        levels_part, tail = parts[0], parts[1:]
        if tail == [""]:
            encs: list[str] = []
        elif any(p == "" for p in tail):
            raise ValueError(f"malformed label {text!r}")
        else:
            encs = tail
        try:
            levels = (
                frozenset(int(t) for t in levels_part.split("."))
                if levels_part
                else frozenset()
            )
        except ValueError:
            raise ValueError(f"malformed level set in label {text!r}") from None
        return cls(levels, tuple(encs))


class LabelledTree:
    """Rooted tree with immutable node labels.

    ``parents[i]`` is the parent of node i, or None for the single root.
    """

    __slots__ = ("parents", "labels", "root", "_children")

    def __init__(self, parents: Sequence[int | None], labels: Sequence[TreeLabel]):
        if len(parents) != len(labels):
            raise ValueError("parents and labels must have equal length")
        n = len(parents)
        roots = [i for i, p in enumerate(parents) if p is None]
        if len(roots) != 1:
            raise ValueError(f"expected exactly one root, found {len(roots)}")
        children: list[list[int]] = [[] for _ in range(n)]
        for i, p in enumerate(parents):
            if p is None:
                continue
            if not (0 <= p < n):
                raise ValueError(f"parent {p} of node {i} out of range")
            children[p].append(i)
        # acyclicity: every node must reach the root
        root = roots[0]
        seen = set()
        stack = [root]
        while stack:
            v = stack.pop()
            seen.add(v)
            stack.extend(children[v])
        if len(seen) != n:
            raise ValueError("parent arcs contain a cycle")
        self.parents = tuple(parents)
        self.labels = tuple(labels)
        self.root = root
        self._children = tuple(tuple(c) for c in children)

    def __len__(self) -> int:
        return len(self.parents)

    def children(self, i: int) -> tuple[int, ...]:
        return self._children[i]

    def label(self, i: int) -> TreeLabel:
        return self.labels[i]


def canon_tree(tree: LabelledTree) -> str:
    """Canonical text: equal for two trees iff they are label-isomorphic."""

    def encode(i: int) -> str:
        kids = sorted(encode(c) for c in tree.children(i))
        return "(" + tree.label(i).serialise() + "|" + ",".join(kids) + ")"

    return encode(tree.root)


def decode_tree(text: str) -> LabelledTree:
    """Parse canonical tree text back into a tree; inverse of canon_tree."""
    parents: list[int | None] = []
    labels: list[TreeLabel] = []

    def parse(pos: int, parent: int | None) -> int:
        if pos >= len(text) or text[pos] != "(":
            raise ValueError(f"expected '(' at position {pos}")
        bar = text.find("|", pos + 1)
        if bar < 0:
            raise ValueError("node label is not terminated by '|'")
        raw_label = text[pos + 1:bar]
        if set(raw_label) & _FORBIDDEN:
            raise ValueError(f"label {raw_label!r} contains structural characters")
        idx = len(parents)
        parents.append(parent)
        labels.append(TreeLabel.deserialise(raw_label))
        i = bar + 1
        if i < len(text) and text[i] == ")":
            return i + 1
        while True:
            i = parse(i, idx)
            if i >= len(text):
                raise ValueError("unterminated node")
            if text[i] == ",":
                i += 1
                continue
            if text[i] == ")":
                return i + 1
            raise ValueError(f"unexpected character {text[i]!r} at position {i}")

    end = parse(0, None)
    if end != len(text):
        raise ValueError("trailing data after the root node")
    return LabelledTree(parents, labels)
