"""
ij_tamari: the subdivision algebra of (I,Jbar) pairs.

Builds G(I,Jbar) and its flow, root and pair polytopes, triangulates them
with reduction trees, and checks the results against independent counts of
(I,Jbar)-trees and nu-lattice paths.
"""

__version__ = "0.1.0"

from .algebra import (BETA, BetaPolynomial, CustomOrder, LeftmostOrder, LengthOrder, LongestPairOrder, Monomial,
                      ReductionNode, ReductionOrder, ReductionTree, build_reduction_tree, coefficient_list,
                      evaluate_at_one, reduce_graph, reduced_form, shift_beta)
from .config import Settings, load_settings
from .errors import (ConfigError, EmptyPair, GraphError, IJTamariError, InvalidPair, InvariantViolation,
                     ProvenanceError, ReductionError, ResourceLimitError, SpaceMismatchError)
from .geometry import (LatticeVertex, Simplex, VertexSetPolytope, count_integer_flows, ehrhart_polynomial,
                       flow_polytope_vertices, normalized_volume, P_polytope_vertices, S_polytope_vertices,
                       U_polytope_vertices, phi1, phi2, pi1, pi2, verify_reduction_lemma, verify_theorem_3_1)
from .graphs import AugmentedGraph, ProvEdge, ProvGraph, Route, directed_path, partially_augment, routes
from .ij_construction import (Arc, OrderedElement, ValidPair, build_A, build_G, build_Ghat, normalize_pair, prec,
                              prec_quotient, validate_pair)
from .reports import Check, Report
from .tamari import (IJForest, IJTree, LatticePath, enumerate_IJ_trees, is_noncrossing, nu_catalan, nu_from_pair,
                     nu_narayana, nu_schroeder, prec_tree, prec_tree_inverse, verify_corollary_4_9)

__all__ = [
    "__version__",
    "Arc", "AugmentedGraph", "BETA", "BetaPolynomial", "Check", "ConfigError", "CustomOrder", "EmptyPair",
    "GraphError", "IJForest", "IJTamariError", "IJTree", "InvalidPair", "InvariantViolation", "LatticePath",
    "LatticeVertex", "LeftmostOrder", "LengthOrder", "LongestPairOrder", "Monomial", "OrderedElement",
    "P_polytope_vertices", "ProvEdge", "ProvGraph", "ProvenanceError", "ReductionError", "ReductionNode",
    "ReductionOrder", "ReductionTree", "Report", "ResourceLimitError", "Route", "S_polytope_vertices", "Settings",
    "Simplex", "SpaceMismatchError", "U_polytope_vertices", "ValidPair", "VertexSetPolytope", "build_A", "build_G",
    "build_Ghat", "build_reduction_tree", "coefficient_list", "count_integer_flows", "directed_path",
    "ehrhart_polynomial", "enumerate_IJ_trees", "evaluate_at_one", "flow_polytope_vertices", "is_noncrossing",
    "load_settings", "normalize_pair", "normalized_volume", "nu_catalan", "nu_from_pair", "nu_narayana",
    "nu_schroeder", "partially_augment", "phi1", "phi2", "pi1", "pi2", "prec", "prec_quotient", "prec_tree",
    "prec_tree_inverse", "reduce_graph", "reduced_form", "routes", "shift_beta", "validate_pair",
    "verify_corollary_4_9", "verify_reduction_lemma", "verify_theorem_3_1",
]
