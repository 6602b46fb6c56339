"""sepdim: separation dimension of graphs and hypergraphs.

Constructs, verifies, and exactly computes pairwise suitable permutation
families, with the boxicity-of-the-line-graph equivalence in both directions
and certificate-backed lower bounds.
"""

from .errors import (
    BudgetExceededError,
    ConstructionError,
    InvalidInputError,
    SepdimError,
    VerificationError,
)
from .hypergraph import (
    DisjointPair,
    GeneratorSpec,
    Hypergraph,
    clique,
    complete_bipartite,
    complete_uniform,
    degeneracy_order,
    disjoint_pairs,
    double_grid,
    empty_graph,
    generate,
    gnp,
    grid,
    hypercube,
    induced_subgraph,
    line_graph,
    path,
    star,
    subdivide,
    subdivided_clique,
)
from .perms import (
    Permutation,
    PermutationFamily,
    SuitabilityKind,
    Verdict,
    concat_blocks,
    precedes,
    random_suitable_family,
    reverse,
    separates,
    smallest_random_family,
    three_suitable_target,
    three_suitable_family,
    verify_family,
)
from .exact import (
    Poset,
    Realizer,
    canonical_interval_order,
    check_realizer,
    critical_pairs,
    exact_boxicity,
    exact_pi,
    exact_poset_dim,
)
from .intervals import (
    IntervalRepresentation,
    intersection_graph,
    intervals_to_perms,
    is_interval_graph,
    perms_to_interval_graphs,
)
from .bounds import (
    BipartitionCertificate,
    BoundEntry,
    BoundReport,
    bound_report,
    check_bipartition_certificate,
    clique_lower_bound,
    hypergraph_clique_bounds,
    max_clique,
    random_graph_bound,
    random_graph_certificate,
    refute_subdivided_clique_pi,
    subdivided_clique_bounds,
    subdivided_clique_pi_lower_bound,
)
from . import constructions

__version__ = "0.1.0"

__all__ = [
    "BipartitionCertificate",
    "BoundEntry",
    "BoundReport",
    "BudgetExceededError",
    "ConstructionError",
    "DisjointPair",
    "GeneratorSpec",
    "Hypergraph",
    "IntervalRepresentation",
    "InvalidInputError",
    "Permutation",
    "PermutationFamily",
    "Poset",
    "Realizer",
    "SepdimError",
    "SuitabilityKind",
    "Verdict",
    "VerificationError",
    "bound_report",
    "canonical_interval_order",
    "check_bipartition_certificate",
    "check_realizer",
    "clique",
    "clique_lower_bound",
    "complete_bipartite",
    "complete_uniform",
    "concat_blocks",
    "constructions",
    "critical_pairs",
    "degeneracy_order",
    "disjoint_pairs",
    "double_grid",
    "empty_graph",
    "exact_boxicity",
    "exact_pi",
    "exact_poset_dim",
    "generate",
    "gnp",
    "grid",
    "hypercube",
    "induced_subgraph",
    "intersection_graph",
    "intervals_to_perms",
    "is_interval_graph",
    "line_graph",
    "max_clique",
    "path",
    "perms_to_interval_graphs",
    "precedes",
    "random_graph_bound",
    "random_graph_certificate",
    "random_suitable_family",
    "refute_subdivided_clique_pi",
    "reverse",
    "separates",
    "smallest_random_family",
    "three_suitable_target",
    "star",
    "subdivide",
    "subdivided_clique",
    "subdivided_clique_bounds",
    "subdivided_clique_pi_lower_bound",
    "three_suitable_family",
    "verify_family",
]
