"""Graph canonisation and isomorphism parameterized by elimination distance
to bounded degree.

The pipeline splits a graph into its high-degree torso and low-degree
periphery, canonises a minimum-height elimination forest of the torso, and
labels it with canonical encodings of the periphery components; the
resulting tree text is a complete isomorphism invariant from which the
canonical form is reconstructed.
"""

from .canon import (
    CanonicalEncoding,
    canon_coloured,
    canonical_key,
    decode_encoding,
    iso_coloured,
)
from .deletion import (
    DeletionIso,
    KernelResult,
    colour_gadget,
    find_deletion_set,
    iso_by_deletion,
    kernelize,
    minimum_deletion_sets,
)
from .elimination import (
    HeightBudget,
    Torso,
    bounded_case_bound,
    elimination_distance,
    height_bound,
    min_elim_order_to_degree,
    rewrite_add_high_degree,
    rewrite_remove_low_degree,
    torso,
)
from .graph import (
    ColouredGraph,
    Graph,
    GraphError,
    ParseError,
    VertexPermutation,
    apply_permutation,
    brute_force_isomorphic,
    components,
    emit_edge_list,
    induced_subgraph,
    parse_edge_list,
    permute_coloured,
    uniform_colouring,
)
from .graph6 import emit_graph6, parse_graph6
from .pipeline import (
    DecoratedDecomposition,
    build_invariant_tree,
    canonical_form,
    canonical_torso_decomposition,
    decorate_decomposition,
    isomorphic,
)
from .treecanon import LabelledTree, TreeLabel, canon_tree, decode_tree
from .treeorder import (
    OrderedGraph,
    SplitResult,
    TreeOrder,
    decomposition_of,
    extend_order,
    is_elim_order_to_degree,
    is_elimination_order,
    nonmaximal_height,
    order_from_arcs,
    split_order,
    tree_depth,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalEncoding",
    "ColouredGraph",
    "DecoratedDecomposition",
    "DeletionIso",
    "Graph",
    "GraphError",
    "HeightBudget",
    "KernelResult",
    "LabelledTree",
    "OrderedGraph",
    "ParseError",
    "SplitResult",
    "Torso",
    "TreeLabel",
    "TreeOrder",
    "VertexPermutation",
    "apply_permutation",
    "bounded_case_bound",
    "brute_force_isomorphic",
    "build_invariant_tree",
    "canon_coloured",
    "canon_tree",
    "canonical_form",
    "canonical_key",
    "canonical_torso_decomposition",
    "colour_gadget",
    "components",
    "decode_encoding",
    "decode_tree",
    "decomposition_of",
    "decorate_decomposition",
    "elimination_distance",
    "emit_edge_list",
    "emit_graph6",
    "extend_order",
    "find_deletion_set",
    "height_bound",
    "induced_subgraph",
    "is_elim_order_to_degree",
    "is_elimination_order",
    "iso_by_deletion",
    "iso_coloured",
    "isomorphic",
    "kernelize",
    "min_elim_order_to_degree",
    "minimum_deletion_sets",
    "nonmaximal_height",
    "order_from_arcs",
    "parse_edge_list",
    "parse_graph6",
    "permute_coloured",
    "rewrite_add_high_degree",
    "rewrite_remove_low_degree",
    "split_order",
    "torso",
    "tree_depth",
    "uniform_colouring",
]
