"""Command-line surface: canon, iso, ed, td, kernel, torso, selftest.

Exit codes: 0 success (for ``iso``: isomorphic), 1 for ``iso`` non-isomorphic
or a failed selftest, 2 usage or input errors.  Identical inputs and seed
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field

from . import corpus
from .canon import canon_coloured, iso_coloured
from .deletion import colour_gadget, kernelize
from .elimination import elimination_distance, min_elim_order_to_degree, torso
from .graph import (
    ColouredGraph,
    Graph,
    GraphError,
    apply_permutation,
    brute_force_isomorphic,
    components,
    emit_edge_list,
    parse_edge_list,
    permute_coloured,
    uniform_colouring,
)
from .graph6 import emit_graph6, parse_graph6
from .pipeline import build_invariant_tree, canonical_form, isomorphic
from .treecanon import canon_tree, decode_tree
from .treeorder import (
    OrderedGraph,
    extend_order,
    is_elim_order_to_degree,
    nonmaximal_height,
    split_order,
    tree_depth,
)

__all__ = ["RunConfig", "run", "main"]


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: one command plus its options."""

    command: str
    degree: int = 0
    budget: int = 0
    inputs: tuple[str, ...] = ()
    fmt: str = "auto"
    seed: int = 0
    output: str = "text"


def _read_graph(path: str, fmt: str) -> Graph:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="ascii") as fh:
                text = fh.read()
        except OSError as exc:
            raise GraphError(f"cannot read {path}: {exc}") from None
    if fmt == "auto":
        first = text.lstrip().split("\n", 1)[0]
        parts = first.split()
        fmt = (
            "edgelist"
            if len(parts) == 2 and all(p.isdigit() for p in parts)
            else "graph6"
        )
    if fmt == "edgelist":
        return parse_edge_list(text)
    return parse_graph6(text.strip())


def _document(pairs: list[tuple[str, str]]) -> str:
    return "\n".join(f"{k}: {v}" for k, v in pairs) + "\n"


def _run_canon(config: RunConfig) -> tuple[int, str]:
    g = _read_graph(config.inputs[0], config.fmt)
    form = canonical_form(g, config.degree)
    tree_text = canon_tree(build_invariant_tree(g, config.degree))
    if config.output == "document":
        return 0, _document([("graph6", emit_graph6(form)), ("tree", tree_text)])
    return 0, emit_graph6(form) + "\n" + tree_text + "\n"


def _run_iso(config: RunConfig) -> tuple[int, str]:
    a = _read_graph(config.inputs[0], config.fmt)
    b = _read_graph(config.inputs[1], config.fmt)
    same = isomorphic(a, b, config.degree)
    return (0 if same else 1), ("isomorphic\n" if same else "non-isomorphic\n")


def _run_ed(config: RunConfig) -> tuple[int, str]:
    g = _read_graph(config.inputs[0], config.fmt)
    value = elimination_distance(g, config.degree)
    if config.output == "document":
        return 0, _document([("elimination-distance", str(value))])
    return 0, f"{value}\n"


def _run_td(config: RunConfig) -> tuple[int, str]:
    g = _read_graph(config.inputs[0], config.fmt)
    value = tree_depth(g)
    if config.output == "document":
        return 0, _document([("tree-depth", str(value))])
    return 0, f"{value}\n"


def _run_kernel(config: RunConfig) -> tuple[int, str]:
    g = _read_graph(config.inputs[0], config.fmt)
    kern = kernelize(g, config.budget, config.degree)
    pairs = [
        ("k", str(kern.k)),
        ("degree", str(kern.d)),
        ("infeasible", "true" if kern.infeasible else "false"),
        ("budget", str(kern.budget)),
        ("forced", " ".join(map(str, sorted(kern.forced)))),
        ("candidates", " ".join(map(str, sorted(kern.candidates)))),
        ("reduced-n", str(kern.reduced.n)),
        ("reduced-edges", " ".join(f"{u}-{v}" for u, v in sorted(kern.reduced.edges))),
        ("back-map", " ".join(map(str, kern.back_map))),
    ]
    return 0, _document(pairs)


def _run_torso(config: RunConfig) -> tuple[int, str]:
    g = _read_graph(config.inputs[0], config.fmt)
    t = torso(g, config.degree)
    pairs = [
        ("core-n", str(t.core.n)),
        ("core-edges", " ".join(f"{u}-{v}" for u, v in sorted(t.core.edges))),
        ("added-edges", " ".join(f"{u}-{v}" for u, v in sorted(t.added_edges))),
        ("back-map", " ".join(map(str, t.back_map))),
    ]
    return 0, _document(pairs)


def _selftest_cases(seed: int) -> list[tuple[str, bool]]:
    from .graph6 import emit_graph6 as emit, parse_graph6 as parse

    rng = random.Random(seed)
    results: list[tuple[str, bool]] = []

    def check(name: str, fn) -> None:
        try:
            results.append((name, bool(fn())))
        except Exception:
            results.append((name, False))

    def graph6_roundtrip() -> bool:
        return all(
            parse(emit(g)) == g for n in range(6) for g in corpus.all_graphs(n)
        )

    def components_partition() -> bool:
        for _ in range(150):
            g = corpus.random_graph(rng, rng.randint(0, 9), rng.random())
            parts = components(g)
            union = set().union(*parts) if parts else set()
            if union != set(range(g.n)):
                return False
            if sum(len(p) for p in parts) != g.n:
                return False
        return True

    def canon_vs_bruteforce() -> bool:
        for n in range(5):
            for g in corpus.all_graphs(n):
                perm = corpus.random_permutation(rng, n)
                cg = ColouredGraph(g, corpus.random_colouring_values(rng, n, 2))
                if canon_coloured(cg) != canon_coloured(permute_coloured(cg, perm)):
                    return False
                if not brute_force_isomorphic(cg, permute_coloured(cg, perm)):
                    return False
        return True

    def split_extend_roundtrip() -> bool:
        for _ in range(120):
            n = rng.randint(1, 7)
            g = corpus.random_graph(rng, n, rng.random() * 0.6)
            d = rng.randint(0, 2)
            order = min_elim_order_to_degree(g, d)
            og = OrderedGraph(g, order)
            res = split_order(og, d)
            if not res.check:
                return False
            rebuilt = extend_order(g, res.interior, res.interior_order, d)
            if not is_elim_order_to_degree(OrderedGraph(g, rebuilt), d):
                return False
            if rebuilt.height() > order.height():
                return False
        return True

    def kernel_sound() -> bool:
        from itertools import combinations as combs

        from .deletion import minimum_deletion_sets

        for _ in range(200):
            n = rng.randint(1, 8)
            g = corpus.random_graph(rng, n, rng.random())
            k, d = rng.randint(0, 2), rng.randint(0, 2)
            found = minimum_deletion_sets(g, k, d)
            brute = None
            for size in range(k + 1):
                hits = [
                    frozenset(s)
                    for s in combs(range(n), size)
                    if g.delete(s).max_degree() <= d
                ]
                if hits:
                    brute = hits
                    break
            if (found is None) != (brute is None):
                return False
            if found is not None and set(found) != set(brute):
                return False
        return True

    def gadget_degree() -> bool:
        for _ in range(100):
            n = rng.randint(1, 6)
            g = corpus.random_graph(rng, n, rng.random())
            cg = ColouredGraph(g, corpus.random_colouring_values(rng, n, 3))
            if colour_gadget(cg).max_degree() != g.max_degree() + 2:
                return False
        return True

    def pipeline_invariance() -> bool:
        for _ in range(120):
            n = rng.randint(0, 8)
            g = corpus.random_graph(rng, n, rng.random())
            d = rng.randint(1, 2)
            perm = corpus.random_permutation(rng, n)
            if emit(canonical_form(g, d)) != emit(canonical_form(apply_permutation(g, perm), d)):
                return False
        return True

    def pipeline_vs_oracle() -> bool:
        for _ in range(80):
            n = rng.randint(0, 6)
            a = corpus.random_graph(rng, n, rng.random())
            b = corpus.random_graph(rng, n, rng.random())
            d = rng.randint(1, 2)
            want = brute_force_isomorphic(uniform_colouring(a), uniform_colouring(b))
            if isomorphic(a, b, d) != want:
                return False
        return True

    def tree_text_roundtrip() -> bool:
        for _ in range(100):
            n = rng.randint(0, 8)
            g = corpus.random_graph(rng, n, rng.random())
            text = canon_tree(build_invariant_tree(g, 2))
            if canon_tree(decode_tree(text)) != text:
                return False
        return True

    check("01-graph6-roundtrip", graph6_roundtrip)
    check("02-components-partition", components_partition)
    check("03-canon-permutation-invariance", canon_vs_bruteforce)
    check("04-split-extend-roundtrip", split_extend_roundtrip)
    check("05-kernel-soundness", kernel_sound)
    check("06-gadget-degree", gadget_degree)
    check("07-pipeline-invariance", pipeline_invariance)
    check("08-pipeline-vs-oracle", pipeline_vs_oracle)
    check("09-tree-text-roundtrip", tree_text_roundtrip)
    return results


def _run_selftest(config: RunConfig) -> tuple[int, str]:
    results = _selftest_cases(config.seed)
    width = max(len(name) for name, _ in results)
    lines = [
        f"{name.ljust(width)}  {'pass' if ok else 'FAIL'}" for name, ok in results
    ]
    passed = sum(ok for _, ok in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    code = 0 if passed == len(results) else 1
    return code, "\n".join(lines) + "\n"


_HANDLERS = {
    "canon": _run_canon,
    "iso": _run_iso,
    "ed": _run_ed,
    "td": _run_td,
    "kernel": _run_kernel,
    "torso": _run_torso,
    "selftest": _run_selftest,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Dispatch a parsed configuration; returns (exit status, emitted text)."""
    handler = _HANDLERS.get(config.command)
    if handler is None:
        raise GraphError(f"unknown command {config.command!r}")
    return handler(config)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elimcanon",
        description="Graph canonisation parameterized by elimination distance to bounded degree",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, n_inputs: int) -> None:
        p.add_argument("--format", choices=["auto", "graph6", "edgelist"], default="auto")
        p.add_argument("--output", choices=["text", "document"], default=None)
        for i in range(n_inputs):
            p.add_argument(f"input{i or ''}" if n_inputs > 1 else "input", nargs=None)

    p_canon = sub.add_parser("canon", help="print the canonical form and tree text")
    p_canon.add_argument("--degree", "-d", type=int, required=True)
    add_common(p_canon, 1)

    p_iso = sub.add_parser("iso", help="exit 0 iff the two graphs are isomorphic")
    p_iso.add_argument("--degree", "-d", type=int, required=True)
    add_common(p_iso, 2)

    p_ed = sub.add_parser("ed", help="print the elimination distance to the degree bound")
    p_ed.add_argument("--degree", "-d", type=int, required=True)
    add_common(p_ed, 1)

    p_td = sub.add_parser("td", help="print the tree-depth")
    add_common(p_td, 1)

    p_kernel = sub.add_parser("kernel", help="print the deletion-distance kernel")
    p_kernel.add_argument("--degree", "-d", type=int, required=True)
    p_kernel.add_argument("--k", "-k", type=int, required=True, dest="budget")
    add_common(p_kernel, 1)

    p_torso = sub.add_parser("torso", help="print the degree torso")
    p_torso.add_argument("--degree", "-d", type=int, required=True)
    add_common(p_torso, 1)

    p_self = sub.add_parser("selftest", help="run the invariant suite on seeded corpora")
    p_self.add_argument("--seed", type=int, default=0)

    return parser


def main(argv: list[str] | None = None) -> None:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    inputs = []
    for attr in ("input", "input1"):
        if hasattr(ns, attr):
            inputs.append(getattr(ns, attr))
    config = RunConfig(
        command=ns.command,
        degree=getattr(ns, "degree", 0),
        budget=getattr(ns, "budget", 0),
        inputs=tuple(inputs),
        fmt=getattr(ns, "format", "auto"),
        seed=getattr(ns, "seed", 0),
        output=getattr(ns, "output", None) or "text",
    )
    if config.degree < 0 or config.budget < 0:
        print("error: degree and budget must be non-negative", file=sys.stderr)
        raise SystemExit(2)
    try:
        code, text = run(config)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2) from None
    if text:
        sys.stdout.write(text)
    raise SystemExit(code)


if __name__ == "__main__":
    main()
