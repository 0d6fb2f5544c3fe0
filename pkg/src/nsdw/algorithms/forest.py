"""Nice forests with exactly m weights, by reducing pendant structure."""

from __future__ import annotations

from collections import deque

from ..errors import BudgetError, NotNiceError, PreconditionError
from ..extension import is_safe, partial_sigma
from ..graph import Graph, edge, is_nice, pendant_paths, rooted_view
from ..weighting import WeightSet
from .certificate import WeightingCertificate
from .engine import Context, Request, check_nsd, delta2_base, finish, run, split_components


def bfs_edges(g: Graph, root: int) -> list:
    """Edges in the order a BFS from ``root`` (sorted adjacency) meets them."""
    seen = {root}
    done = set()
    order = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            e = edge(x, y)
            if e not in done:
                done.add(e)
                order.append(e)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return order


def forest_frame(ctx: Context, g: Graph, pool: list[int]):
    pool = pool[:g.m]
    if g.m == 0:
        return {}
    if g.max_degree <= 2:
        return delta2_base(ctx, g, pool, rule="forest.delta2")
    if len(g.nontrivial_components()) > 1:
        return (yield from split_components(ctx, g, pool, forest_frame, lambda c: 0))
    return (yield from _tree_step(ctx, g, pool))


def _tree_step(ctx: Context, g: Graph, pool: list[int]):
    m = g.m

    # a pendant path of length >= 3: keep only its attachment edge
    for path in pendant_paths(g):
        if path.length >= 3:
            removed = path.edges()[1:]
            child = yield Request(forest_frame, g.remove_edges(removed), pool[:m - len(removed)])
            w = child
            spare = pool[m - len(removed):]
            first = removed[0]
            pick = next((x for x in spare[-2:] if is_safe(g, w, first, x)), None)
            if pick is None:
                raise ctx.fail("long pendant path: neither top weight separates the attachment",
                               path=path.vertices)
            w[first] = pick
            rest = [x for x in spare if x != pick]
            for e, x in zip(removed[1:], rest):
                w[e] = x
            check_nsd(ctx, g, w, "forest.long_pendant_path")
            ctx.record("forest.long_pendant_path", removed,
                       {e: w[e] for e in removed}, path=list(path.vertices))
            return w

    big = [v for v in range(g.n) if g.degree(v) >= 3]
    root = big[0]
    if len(big) == 1:
        w = dict(zip(bfs_edges(g, root), reversed(pool)))
        check_nsd(ctx, g, w, "forest.subdivided_star")
        ctx.record("forest.subdivided_star", assigned=w, root=root)
        return w

    view = rooted_view(g, root)
    info = dict(root=root, last_multifathers=list(view.last_multifathers),
                deepest_last_multifathers=list(view.deepest_last_multifathers))

    # a last multifather carrying a pendant path of length 2
    for v in view.last_multifathers:
        kids = view.children[v]
        two = [x for x in kids if view.children[x]]
        if not two:
            continue
        leaves = [x for x in kids if not view.children[x]]
        xs = two + leaves  # x_1..x_b then x_{b+1}..x_{b+c}
        ys = {x: view.children[x][0] for x in two}
        d = g.degree(v)
        removed = [edge(v, x) for x in xs] + [edge(x, ys[x]) for x in two]
        r = len(removed)
        child = yield Request(forest_frame, g.remove_edges(removed), pool[:m - r])
        w = child
        spare = pool[m - r:]
        top = spare[r - (d - 2):]
        for x, val in zip(xs[1:], reversed(top)):
            w[edge(v, x)] = val
        pair = spare[r - d:r - d + 2]
        x1, y1 = xs[0], ys[xs[0]]
        pick = next((val for val in pair if is_safe(g, w, (v, x1), val)), None)
        if pick is None:
            raise ctx.fail("last multifather: neither paired weight separates v from its father", v=v)
        w[edge(v, x1)] = pick
        w[edge(x1, y1)] = pair[0] if pick == pair[1] else pair[1]
        for x, val in zip(two[1:], spare[:r - d]):
            w[edge(x, ys[x])] = val
        check_nsd(ctx, g, w, "forest.last_multifather")
        ctx.record("forest.last_multifather", removed, {e: w[e] for e in removed},
                   v=v, father=view.parent[v], b=len(two), c=len(leaves), **info)
        return w

    if not view.deepest_last_multifathers:
        raise ctx.fail("tree with two 3+-vertices but no last multifather", **info)
    vs = view.deepest_last_multifathers[0]
    p = view.parent[vs]
    if p is None:
        raise ctx.fail("deepest last multifather is the root", **info)
    x1, x2 = view.children[vs][:2]
    if view.children[x1] or view.children[x2]:
        raise ctx.fail("deepest last multifather has a non-leaf child", v_star=vs, **info)
    others = [c for c in view.children[p] if c != vs]
    top3 = pool[m - 3:]
    info.update(v_star=vs, father=p)

    if others:
        inner = [c for c in others if g.degree(c) >= 2]
        if inner:
            v = inner[0]
            y = view.children[v][0]
            if view.children[y]:
                raise ctx.fail("sibling of v* has a non-leaf child", v=v, **info)
            removed = [edge(v, y), edge(vs, x1), edge(vs, x2)]
            w = yield Request(forest_frame, g.remove_edges(removed), pool[:m - 3])
            sp, sv = partial_sigma(g, w, p), partial_sigma(g, w, v)
            t = next((x for x in top3 if sv + x == sp), top3[0])
            w[edge(vs, x1)] = t
            rest = [x for x in top3 if x != t]
            sv_star = partial_sigma(g, w, vs)
            pick = next((x for x in rest if sv_star + x != sp), None)
            if pick is None:
                raise ctx.fail("sibling case: no weight separates v* from its father", **info)
            w[edge(vs, x2)] = pick
            w[edge(v, y)] = rest[0] if pick == rest[1] else rest[1]
            rule = "forest.sibling_inner"
        else:
            v = others[0]
            removed = [edge(p, v), edge(vs, x1), edge(vs, x2)]
            w = yield Request(forest_frame, g.remove_edges(removed), pool[:m - 3])
            q = view.parent[p]
            sp = partial_sigma(g, w, p)
            t = top3[0]
            if q is not None:
                sq = partial_sigma(g, w, q)
                t = next((x for x in top3 if sp + x == sq), top3[0])
            w[edge(vs, x1)] = t
            lo, hi = [x for x in top3 if x != t]
            w[edge(vs, x2)], w[edge(p, v)] = lo, hi
            if partial_sigma(g, w, vs) == partial_sigma(g, w, p):
                w[edge(vs, x2)], w[edge(p, v)] = hi, lo
            rule = "forest.sibling_leaf"
        check_nsd(ctx, g, w, rule)
        ctx.record(rule, removed, {e: w[e] for e in removed}, sibling=v, **info)
        return w

    if g.degree(p) != 2:
        raise ctx.fail("father of v* has no other child but degree != 2", **info)
    kids = view.children[vs]
    removed = [edge(vs, x) for x in kids]
    k = len(removed)
    w = yield Request(forest_frame, g.remove_edges(removed), pool[:m - k])
    for e, val in zip(removed, pool[m - k:]):
        w[e] = val
    check_nsd(ctx, g, w, "forest.only_child")
    ctx.record("forest.only_child", removed, {e: w[e] for e in removed}, **info)
    return w


def weight_forest(f: Graph, w_set) -> WeightingCertificate:
    """Weight a nice forest using exactly the m weights given."""
    w_set = w_set if isinstance(w_set, WeightSet) else WeightSet(w_set)
    if not f.is_forest():
        raise PreconditionError("input is not a forest")
    if not is_nice(f):
        raise NotNiceError("forest has a K2 component")
    if len(w_set) != f.m:
        raise BudgetError(f"weight_forest needs exactly m = {f.m} weights, got {len(w_set)}")
    ctx = Context()
    w = run(ctx, forest_frame, f, list(w_set.values))
    return finish("forest", f, w_set, ctx, w)
