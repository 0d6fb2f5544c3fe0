"""Graphs of maximum degree at most 2: every injective weighting is NSD."""

from __future__ import annotations

from ..errors import BudgetError, NotNiceError, PreconditionError
from ..graph import Graph, is_nice
from ..weighting import WeightSet
from .certificate import WeightingCertificate
from .engine import Context, delta2_base, finish, run


def delta2_frame(ctx: Context, g: Graph, pool: list[int]):
    return delta2_base(ctx, g, pool[:g.m])


def weight_max_degree_two(g: Graph, w_set) -> WeightingCertificate:
    w_set = w_set if isinstance(w_set, WeightSet) else WeightSet(w_set)
    if g.max_degree > 2:
        raise PreconditionError(f"maximum degree {g.max_degree} > 2")
    if not is_nice(g):
        raise NotNiceError("graph has a K2 component")
    if len(w_set) < g.m:
        raise BudgetError(f"need at least m = {g.m} weights, got {len(w_set)}")
    ctx = Context()
    w = run(ctx, delta2_frame, g, list(w_set.values))
    return finish("delta2", g, w_set, ctx, w)
