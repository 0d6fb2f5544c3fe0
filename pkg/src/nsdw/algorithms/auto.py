"""Pick the applicable construction with the smallest budget."""

from __future__ import annotations

from ..errors import BudgetError, NotNiceError
from ..graph import Graph, compute_mad, degeneracy, is_nice
from ..weighting import WeightSet
from .delta2 import delta2_frame
from .certificate import WeightingCertificate
from .engine import Context, finish, run
from .forest import forest_frame
from .m_plus_2delta import m2d_components_frame
from .mad3 import mad3_frame
from .two_degenerate import two_deg_frame
from .two_m import two_m_frame


def candidate_routes(g: Graph) -> list[tuple[str, int]]:
    """Applicable algorithms and budgets, in the preference order used for ties."""
    m, delta = g.m, g.max_degree
    routes = []
    if g.is_forest():
        routes.append(("forest", m))
    if delta <= 2:
        routes.append(("delta2", m))
    two_deg = degeneracy(g) <= 2
    if two_deg:
        routes.append(("two-degenerate", m + 4))
    general = min(m + 2 * delta, 2 * m)
    if not two_deg and general >= m + 6 and g.n and compute_mad(g) <= 3:
        routes.append(("mad3", m + 6))
    routes.append(("m-plus-2delta", m + 2 * delta))
    routes.append(("two-m", 2 * m))
    return routes


FRAMES = {
    "forest": forest_frame,
    "delta2": delta2_frame,
    "two-degenerate": two_deg_frame,
    "mad3": mad3_frame,
    "m-plus-2delta": m2d_components_frame,
    "two-m": two_m_frame,
}


def choose_route(g: Graph) -> tuple[str, int]:
    routes = candidate_routes(g)
    best = min(b for _, b in routes)
    return next(r for r in routes if r[1] == best)


def weight_auto(g: Graph, w_set) -> WeightingCertificate:
    w_set = w_set if isinstance(w_set, WeightSet) else WeightSet(w_set)
    if not is_nice(g):
        raise NotNiceError("graph has a K2 component")
    name, budget = choose_route(g)
    if len(w_set) < budget:
        raise BudgetError(f"cheapest applicable bound is {name} with {budget} weights; got {len(w_set)}")
    ctx = Context()
    w = run(ctx, FRAMES[name], g, list(w_set.values))
    return finish("auto", g, w_set, ctx, w, route=name)
