"""Constructive upper bounds producing verified permutation families."""

from .base import (
    ConstructionResult,
    LedgerEntry,
    family_for_disjoint_blocks,
    forest_family,
    ledger_dumps,
    star_forest_family,
)
from .families import (
    StarForestDecomposition,
    combine_partition,
    construct_coloring,
    construct_degeneracy,
    construct_random,
    construct_recursive_delta,
    degree_partition,
    distance_two_classes,
    log_star,
    random_family_bound,
    star_forest_decompose,
)
from .hypercube import hypercube_family
from .schnyder import (
    SchnyderRealizer,
    Triangulation,
    bipyramid,
    compute_realizer,
    octahedron,
    schnyder_family,
    stacked_triangulation,
    tetrahedron,
    triangulation_dumps,
    triangulation_from_coordinates,
    triangulation_loads,
)
from .subdivision import (
    default_base_permutation,
    greedy_realizer,
    interval_collection,
    subdivision_family,
)
from .treewidth import (
    OrderedTreeDecomposition,
    construct_treewidth,
    min_fill_decomposition,
    td_from_pace,
    td_to_pace,
)

__all__ = [
    "ConstructionResult",
    "LedgerEntry",
    "OrderedTreeDecomposition",
    "SchnyderRealizer",
    "StarForestDecomposition",
    "Triangulation",
    "bipyramid",
    "combine_partition",
    "compute_realizer",
    "construct_coloring",
    "construct_degeneracy",
    "construct_random",
    "construct_recursive_delta",
    "construct_treewidth",
    "default_base_permutation",
    "degree_partition",
    "distance_two_classes",
    "family_for_disjoint_blocks",
    "forest_family",
    "greedy_realizer",
    "hypercube_family",
    "interval_collection",
    "ledger_dumps",
    "log_star",
    "min_fill_decomposition",
    "octahedron",
    "random_family_bound",
    "schnyder_family",
    "stacked_triangulation",
    "star_forest_decompose",
    "star_forest_family",
    "subdivision_family",
    "td_from_pace",
    "td_to_pace",
    "tetrahedron",
    "triangulation_dumps",
    "triangulation_from_coordinates",
    "triangulation_loads",
]
