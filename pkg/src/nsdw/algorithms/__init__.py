"""Constructive weighting algorithms, one per bound."""

from .auto import choose_route, weight_auto
from .certificate import ReductionTrace, TraceStep, WeightingCertificate
from .delta2 import weight_max_degree_two
from .forest import weight_forest
from .m_plus_2delta import v_star_dominates, weight_general_m_plus_2delta
from .mad3 import weight_mad3
from .two_degenerate import weight_2degenerate
from .two_m import weight_general_2m

ALGORITHMS = {
    "forest": weight_forest,
    "delta2": weight_max_degree_two,
    "two-m": weight_general_2m,
    "m-plus-2delta": weight_general_m_plus_2delta,
    "two-degenerate": weight_2degenerate,
    "mad3": weight_mad3,
    "auto": weight_auto,
}

__all__ = [
    "ALGORITHMS", "ReductionTrace", "TraceStep", "WeightingCertificate", "choose_route",
    "v_star_dominates", "weight_2degenerate", "weight_auto", "weight_forest",
    "weight_general_2m", "weight_general_m_plus_2delta", "weight_mad3", "weight_max_degree_two",
]
