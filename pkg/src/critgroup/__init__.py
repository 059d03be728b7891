"""Critical groups of multigraphs, with closed forms for K_m x C_n."""

from .critical_group import (
    AbelianGroup,
    DisconnectedGraphError,
    canonicalize,
    critical_group,
    group_order,
    groups_isomorphic,
    spanning_tree_count,
)
from .knc_closed_form import (
    ClosedFormConsistencyError,
    ClosedFormResult,
    SequencePoint,
    critical_group_closed,
    sequence_point,
    tree_number_closed,
)
from .multigraph import (
    Multigraph,
    cartesian_product,
    complete_graph,
    cycle_graph,
    km_cn,
    laplacian,
    path_graph,
)
from .zmatrix import IntMatrix, SmithDecomposition, determinant, smith_normal_form

__all__ = [
    "AbelianGroup", "ClosedFormConsistencyError", "ClosedFormResult", "DisconnectedGraphError",
    "IntMatrix", "Multigraph", "SequencePoint", "SmithDecomposition", "canonicalize",
    "cartesian_product", "complete_graph", "critical_group", "critical_group_closed",
    "cycle_graph", "determinant", "group_order", "groups_isomorphic", "km_cn", "laplacian",
    "path_graph", "sequence_point", "smith_normal_form", "spanning_tree_count",
    "tree_number_closed",
]
