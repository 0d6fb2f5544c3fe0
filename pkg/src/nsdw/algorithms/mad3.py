"""The m + 6 bound for nice graphs with mad at most 3.

H is the graph without its 1-vertices.  When Δ(H) <= 3 the m + 2Δ
construction weights H and the pendant edges are put back; otherwise one of
six reducible configurations is removed.  The discharging rules guarantee a
configuration exists, and their charges are dumped if none is found.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from ..errors import BudgetError, NotNiceError, PreconditionError
from ..extension import assign_pendant, assign_single_edge, assign_two_adjacent, is_safe, mu_budget
from ..graph import Graph, compute_mad, edge, is_nice
from ..weighting import WeightSet
from .certificate import WeightingCertificate
from .engine import Context, Request, check_nsd, delta2_base, finish, run, split_components, unused
from .forest import forest_frame
from .m_plus_2delta import m2d_frame

SLACK = 6


def discharge(h: Graph, vertices) -> tuple[dict, dict]:
    """Initial charges d_H - 3 and the charges after rules R1, R2, R3."""
    d = {v: h.degree(v) for v in vertices}
    omega = {v: Fraction(d[v] - 3) for v in vertices}
    weak = {v for v in vertices if d[v] == 3 and any(d[x] == 2 for x in h.adj[v])}
    final = dict(omega)
    for v in vertices:
        if d[v] >= 4:
            for x in h.adj[v]:
                if x in weak:
                    final[v] -= Fraction(1, 4)
                    final[x] += Fraction(1, 4)
    for v in vertices:
        if v in weak or d[v] >= 4:
            for x in h.adj[v]:
                if d[x] == 2:
                    final[v] -= Fraction(1, 2)
                    final[x] += Fraction(1, 2)
    return omega, final


def mad3_frame(ctx: Context, g: Graph, pool: list[int]):
    m = g.m
    W = pool[:m + SLACK]
    if m == 0:
        return {}
    if len(g.nontrivial_components()) > 1:
        return (yield from split_components(ctx, g, W, mad3_frame, lambda c: SLACK))
    if g.max_degree <= 2:
        return delta2_base(ctx, g, W, rule="mad3.delta2")
    if g.is_forest():
        return (yield Request(forest_frame, g, W[:m]))

    comp = g.nontrivial_components()[0]
    core = [v for v in comp if g.degree(v) >= 2]
    h = g.restrict(core)
    dh = {v: h.degree(v) for v in core}
    leaves_at = {v: [x for x in g.adj[v] if g.degree(x) == 1] for v in core}
    info = dict(H=core)

    if max(dh.values()) <= 3:
        if not is_nice(h):
            raise ctx.fail("mad3: H is not nice", **info)
        base = delta2_base if h.max_degree <= 2 else m2d_frame
        w = yield Request(base, h, W[:h.m + SLACK])
        added = []
        for v in core:
            pend = [edge(v, u) for u in leaves_at[v]]
            if not pend:
                continue
            for e in pend[:-1]:
                w[e] = unused(W, w)[0]
                added.append(e)
            last = pend[-1]
            free = unused(W, w)
            if len(free) < 7:
                raise ctx.fail(f"mad3: only {len(free)} weights left for the last pendant edge at {v}",
                               **info)
            pick = next((x for x in free if is_safe(g, w, last, x)), None)
            if pick is None:
                raise ctx.fail("mad3: no safe weight for the last pendant edge", v=v, **info)
            w[last] = pick
            added.append(last)
        check_nsd(ctx, g, w, "mad3.core_max_degree_3")
        ctx.record("mad3.core_max_degree_3", added, {e: w[e] for e in added}, **info)
        return w

    # C1: a pendant edge at a vertex with d_H <= 6
    for v in core:
        if leaves_at[v] and dh[v] <= 6:
            e = edge(v, leaves_at[v][0])
            reduced = g.remove_edges([e])
            if not is_nice(reduced):
                continue
            w = yield Request(mad3_frame, reduced, W[:m - 1 + SLACK])
            assign_pendant(g, w, e, W)
            check_nsd(ctx, g, w, "mad3.pendant")
            ctx.record("mad3.pendant", [e], {e: w[e]}, v=v, d_H=dh[v], **info)
            return w

    # C2: two adjacent 2-vertices of H
    for e in h.edges:
        a, b = e
        if dh[a] == 2 and dh[b] == 2:
            reduced = g.remove_edges([e])
            if not is_nice(reduced):
                continue
            w = yield Request(mad3_frame, reduced, W[:m - 1 + SLACK])
            assign_single_edge(g, w, e, W)
            check_nsd(ctx, g, w, "mad3.adjacent_2_vertices")
            ctx.record("mad3.adjacent_2_vertices", [e], {e: w[e]}, **info)
            return w

    # C3..C6: a vertex v with two light neighbours; remove both edges at v
    configs = [
        ("mad3.2_vertex_two_3_neighbours", lambda v: dh[v] == 2, lambda x: dh[x] == 3),
        ("mad3.3_vertex_two_3minus_neighbours", lambda v: dh[v] == 3, lambda x: dh[x] <= 3),
        ("mad3.6_vertex_two_2_neighbours", lambda v: dh[v] == 6, lambda x: dh[x] == 2),
        ("mad3.45_vertex_two_3minus_neighbours", lambda v: dh[v] in (4, 5), lambda x: dh[x] <= 3),
    ]
    for rule, centre_ok, nbr_ok in configs:
        for v in core:
            if not centre_ok(v):
                continue
            light = [x for x in h.adj[v] if nbr_ok(x)]
            for pair in combinations(light, 2):
                u1, u2 = sorted(pair, key=lambda x: (-g.degree(x), x))
                removed = [edge(v, u1), edge(v, u2)]
                reduced = g.remove_edges(removed)
                if not is_nice(reduced):
                    continue
                mu = mu_budget(g.degree(u1), g.degree(v), g.degree(u2))
                if mu > 8:
                    raise ctx.fail(f"{rule}: mu = {mu} exceeds the 8 spare weights", v=v, **info)
                w = yield Request(mad3_frame, reduced, W[:m - 2 + SLACK])
                assign_two_adjacent(g, w, v, u1, u2, W)
                check_nsd(ctx, g, w, rule)
                ctx.record(rule, removed, {e: w[e] for e in removed}, v=v, u1=u1, u2=u2,
                           mu=mu, **info)
                return w

    omega, final = discharge(h, core)
    raise ctx.fail("mad3: Delta(H) >= 4 but no reducible configuration found",
                   omega={v: str(x) for v, x in omega.items()},
                   omega_star={v: str(x) for v, x in final.items()},
                   total=str(sum(omega.values())), **info)


def weight_mad3(g: Graph, w_set) -> WeightingCertificate:
    w_set = w_set if isinstance(w_set, WeightSet) else WeightSet(w_set)
    if not is_nice(g):
        raise NotNiceError("graph has a K2 component")
    if g.n:
        mad = compute_mad(g)
        if mad > 3:
            raise PreconditionError(f"mad {mad} > 3")
    if len(w_set) < g.m + SLACK:
        raise BudgetError(f"need m + 6 = {g.m + SLACK} weights, got {len(w_set)}")
    ctx = Context()
    w = run(ctx, mad3_frame, g, list(w_set.values))
    return finish("mad3", g, w_set, ctx, w)
