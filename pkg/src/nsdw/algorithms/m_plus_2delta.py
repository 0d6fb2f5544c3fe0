"""The m + 2Δ bound: a BFS tree from a maximum-degree vertex, private edges
weighted layer by layer from the deepest layer up."""

from __future__ import annotations

from ..errors import BudgetError, NotNiceError, PreconditionError
from ..extension import is_safe
from ..graph import Graph, edge, is_nice, spanning_tree_through
from ..weighting import WeightSet
from .certificate import WeightingCertificate
from .engine import Context, check_nsd, finish, run, split_components, unused


def m2d_frame(ctx: Context, g: Graph, pool: list[int]):
    """Weight a graph with one nontrivial component (isolated vertices allowed)."""
    m = g.m
    if m == 0:
        return {}
    delta = g.max_degree
    W = pool[:m + 2 * delta]
    if len(W) < m + 2 * delta:
        raise ctx.fail(f"m+2Delta: pool of {len(W)} below {m + 2 * delta}")
    vs = next(v for v in range(g.n) if g.degree(v) == delta)
    tree = spanning_tree_through(g, vs, component_only=True)
    n_c = len(tree.parent)
    if any(g.degree(v) for v in range(g.n) if v not in tree.parent):
        raise ctx.fail("m+2Delta frame needs a single nontrivial component")

    w: dict = {}
    non_tree = [e for e in g.edges if e not in tree.edges]
    for e, x in zip(non_tree, W):
        w[e] = x
    mid = W[m - (n_c - 1):m]
    top = W[m:m + 2 * delta]
    for depth in range(len(tree.layers) - 1, 0, -1):
        band = mid if depth >= 2 else top
        for u in tree.layers[depth]:
            e = tree.private_edge[u]
            pick = next((x for x in unused(band, w) if is_safe(g, w, e, x)), None)
            if pick is None:
                raise ctx.fail("m+2Delta: no safe weight for a private edge",
                               vertex=u, layer=depth, edge=e)
            w[e] = pick

    others = [x for u in g.adj[vs] for x in (w[edge(u, y)] for y in g.adj[u] if y != vs)]
    at_vs = [w[edge(vs, u)] for u in g.adj[vs]]
    if others and min(at_vs) < max(others):
        raise ctx.fail("m+2Delta: v* does not dominate its neighbourhood", v_star=vs)
    check_nsd(ctx, g, w, "m_plus_2delta")
    ctx.record("m_plus_2delta", assigned=w, v_star=vs,
               layers=[list(layer) for layer in tree.layers],
               private_edges={u: list(e) for u, e in sorted(tree.private_edge.items())},
               non_tree_edges=non_tree)
    return w


def m2d_components_frame(ctx: Context, g: Graph, pool: list[int]):
    """Per-component driver used when a caller hands over a disconnected graph."""
    if len(g.nontrivial_components()) <= 1:
        return m2d_frame(ctx, g, pool)
    delta = g.max_degree
    return (yield from split_components(ctx, g, pool, m2d_frame, lambda c: 2 * delta))


def v_star_dominates(g: Graph, wt) -> bool:
    """True when the lowest-numbered maximum-degree vertex v* dominates by weight.

    Every weight at v* must be at least every other weight at each neighbour
    of v*, so v* out-sums its neighbours whatever their degree.
    """
    if g.m == 0:
        return True
    delta = g.max_degree
    vs = next(v for v in range(g.n) if g.degree(v) == delta)
    lo = min(wt.weight(vs, u) for u in g.adj[vs])
    for u in g.adj[vs]:
        for y in g.adj[u]:
            if y != vs and wt.weight(u, y) > lo:
                return False
    return True


def weight_general_m_plus_2delta(g: Graph, w_set) -> WeightingCertificate:
    w_set = w_set if isinstance(w_set, WeightSet) else WeightSet(w_set)
    if not is_nice(g):
        raise NotNiceError("graph has a K2 component")
    if not g.is_connected():
        raise PreconditionError("graph is disconnected; weight each component with its own budget")
    need = g.m + 2 * g.max_degree
    if len(w_set) < need:
        raise BudgetError(f"need m + 2*Delta = {need} weights, got {len(w_set)}")
    ctx = Context()
    w = run(ctx, m2d_frame, g, list(w_set.values))
    return finish("m-plus-2delta", g, w_set, ctx, w)
