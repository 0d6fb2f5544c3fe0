"""Edge-injective neighbour-sum-distinguishing (NSD) edge weightings.

Constructive algorithms for the known bounds on nice graphs, an exact
backtracking solver for small instances, and validators for both.
"""

from .algorithms import (ALGORITHMS, ReductionTrace, TraceStep, WeightingCertificate, choose_route,
                         v_star_dominates, weight_2degenerate, weight_auto, weight_forest,
                         weight_general_2m, weight_general_m_plus_2delta, weight_mad3,
                         weight_max_degree_two)
from .errors import (BudgetError, GraphParseError, InvariantViolation, NotNiceError, NSDWError,
                     PreconditionError, SearchBudgetExceeded)
from .extension import ExtensionBudget, extend_pendant, extend_single_edge, extend_two_adjacent, mu_budget
from .graph import (ComponentKind, Graph, classify_components, compute_mad, degeneracy,
                    degeneracy_order, girth, is_nice, parse_edge_list, parse_graph6, pendant_paths,
                    rooted_view, spanning_tree_through, to_edge_list, to_graph6)
from .solver import ChiResult, compute_chi, exists_weighting, is_antimagic, verify_conjecture
from .weighting import (EdgeWeighting, ValidationReport, WeightSet, forced_distinct,
                        format_weighting, parse_weighting, sigma, validate, validate_assignment)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS", "BudgetError", "ChiResult", "ComponentKind", "EdgeWeighting", "ExtensionBudget",
    "Graph", "GraphParseError", "InvariantViolation", "NSDWError", "NotNiceError",
    "PreconditionError", "ReductionTrace", "SearchBudgetExceeded", "TraceStep", "ValidationReport",
    "WeightSet", "WeightingCertificate", "choose_route", "classify_components", "compute_chi",
    "compute_mad", "degeneracy", "degeneracy_order", "exists_weighting", "extend_pendant",
    "extend_single_edge", "extend_two_adjacent", "forced_distinct", "format_weighting", "girth",
    "is_antimagic", "is_nice", "mu_budget", "parse_edge_list", "parse_graph6", "parse_weighting",
    "pendant_paths", "rooted_view", "sigma", "spanning_tree_through", "to_edge_list", "to_graph6",
    "v_star_dominates", "validate", "validate_assignment", "verify_conjecture",
    "weight_2degenerate", "weight_auto", "weight_forest", "weight_general_2m",
    "weight_general_m_plus_2delta", "weight_mad3", "weight_max_degree_two",
]
