"""The 2m bound: peel a maximum-degree vertex and recurse on the good part."""

from __future__ import annotations

from ..errors import BudgetError, NotNiceError
from ..extension import is_safe
from ..graph import ComponentKind, Graph, classify_components, edge, is_nice
from ..weighting import WeightSet
from .certificate import WeightingCertificate
from .engine import Context, Request, check_nsd, delta2_base, finish, run, split_components, unused
from .forest import bfs_edges


def two_m_frame(ctx: Context, g: Graph, pool: list[int]):
    m = g.m
    W = pool[:2 * m]
    if m == 0:
        return {}
    if len(g.nontrivial_components()) > 1:
        return (yield from split_components(ctx, g, W, two_m_frame, lambda c: c.m))
    if g.max_degree <= 2:
        return delta2_base(ctx, g, W, rule="two_m.delta2")

    delta = g.max_degree
    vs = next(v for v in range(g.n) if g.degree(v) == delta)
    rest = g.remove_edges(g.incident(vs))
    others = [v for v in g.nontrivial_components()[0] if v != vs]
    classes = classify_components(rest, others)
    good = [c for c in classes if c.kind is ComponentKind.GOOD]
    by_kind: dict[str, list] = {}
    for c in classes:
        by_kind.setdefault(c.kind.value, []).append(list(c.vertices))
    config = dict(v_star=vs, classes=by_kind)

    if not good:
        w = dict(zip(bfs_edges(g, vs), reversed(W)))
        check_nsd(ctx, g, w, "two_m.no_good_component")
        ctx.record("two_m.no_good_component", assigned=w, **config)
        return w

    good_vertices = sorted(v for c in good for v in c.vertices)
    h = g.restrict(good_vertices)
    w = yield Request(two_m_frame, h, W[:2 * h.m])
    in_good = set(good_vertices)
    us = [u for u in g.adj[vs] if u in in_good]
    k = len(us)
    band = W[2 * m - (delta + k):]
    for u in us:
        e = edge(vs, u)
        pick = next((x for x in unused(band, w) if is_safe(g, w, e, x)), None)
        if pick is None:
            raise ctx.fail("2m: no safe top weight for an edge into a good component",
                           edge=e, **config)
        w[e] = pick

    remaining = [e for e in g.edges if e not in w]
    m_prime = len(remaining)
    if k + 2 * m_prime - delta < m_prime:
        raise ctx.fail("2m: counting k + 2m' - Delta >= m' failed", k=k, m_prime=m_prime)
    tail = g.edge_subgraph(remaining)
    order = bfs_edges(tail, vs)
    if len(order) != m_prime:
        raise ctx.fail("2m: leftover edges are not reachable from v*", **config)
    descending = W[2 * h.m:2 * m - (delta + k)][::-1]
    for e, x in zip(order, descending):
        w[e] = x
    check_nsd(ctx, g, w, "two_m.good_components")
    added = [edge(vs, u) for u in us] + order
    ctx.record("two_m.good_components", added, {e: w[e] for e in added},
               H=good_vertices, k=k, m_prime=m_prime, **config)
    return w


def weight_general_2m(g: Graph, w_set) -> WeightingCertificate:
    w_set = w_set if isinstance(w_set, WeightSet) else WeightSet(w_set)
    if not is_nice(g):
        raise NotNiceError("graph has a K2 component")
    if len(w_set) < 2 * g.m:
        raise BudgetError(f"need 2m = {2 * g.m} weights, got {len(w_set)}")
    ctx = Context()
    w = run(ctx, two_m_frame, g, list(w_set.values))
    return finish("two-m", g, w_set, ctx, w)
