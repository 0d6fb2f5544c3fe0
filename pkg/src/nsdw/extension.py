"""Extending a partial NSD weighting across one edge, two adjacent edges or a
pendant edge, given enough unused weights.

The public functions work on :class:`EdgeWeighting` values and check their
own preconditions and postconditions.  The ``assign_*`` helpers do the same
work in place on a plain ``dict`` and are what the theorem algorithms call in
their inner loops.  In both layers the tie-break is the smallest feasible
weight, and a vertex sum is only compared against neighbours whose incident
edges are all weighted (their sums are final).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetError, InvariantViolation, PreconditionError
from .graph import Edge, Graph, edge
from .weighting import EdgeWeighting, WeightSet


@dataclass(frozen=True)
class ExtensionBudget:
    available: WeightSet
    required: int

    @property
    def sufficient(self) -> bool:
        return len(self.available) >= self.required


def mu_budget(d_u1: int, d_v: int, d_u2: int) -> int:
    """Weights sufficient to weight two adjacent edges ``vu1``, ``vu2``."""
    if d_u1 < d_u2:
        raise PreconditionError("mu_budget needs d(u1) >= d(u2); swap the endpoints")
    if d_u2 < 1 or d_v < 2:
        raise PreconditionError("mu_budget needs d(u2) >= 1 and d(v) >= 2")
    return (d_u1 + 1) + max(0, d_v + d_u2 - d_u1 - 1)


# dict-level primitives ---------------------------------------------------

def partial_sigma(g: Graph, w: dict, v: int) -> int:
    total = 0
    for x in g.adj[v]:
        total += w.get(edge(v, x), 0)
    return total


def is_complete(g: Graph, w: dict, v: int) -> bool:
    return all(edge(v, x) in w for x in g.adj[v])


def final_sums_around(g: Graph, w: dict, v: int, skip: Iterable[int] = ()) -> set[int]:
    """Sums of the neighbours of ``v`` that are already complete."""
    skipped = set(skip)
    return {partial_sigma(g, w, x) for x in g.adj[v]
            if x not in skipped and is_complete(g, w, x)}


def is_safe(g: Graph, w: dict, e: Edge, val: int) -> bool:
    """Would weighting ``e`` with ``val`` keep every complete edge distinguished?"""
    e = edge(*e)
    w[e] = val
    try:
        for a in e:
            if not is_complete(g, w, a):
                continue
            sa = partial_sigma(g, w, a)
            for c in g.adj[a]:
                if is_complete(g, w, c) and partial_sigma(g, w, c) == sa:
                    return False
        return True
    finally:
        del w[e]


def smallest_safe(g: Graph, w: dict, e: Edge, candidates: Iterable[int]) -> int | None:
    for val in sorted(candidates):
        if is_safe(g, w, e, val):
            return val
    return None


def _unused(w: dict, candidates: Iterable[int]) -> list[int]:
    used = set(w.values())
    return sorted(c for c in candidates if c not in used)


def assign_single_edge(g: Graph, w: dict, e: Edge, candidates: Iterable[int]) -> int:
    """Weight ``uv`` so both new sums avoid the final sums around them."""
    u, v = edge(*e)
    su, sv = partial_sigma(g, w, u), partial_sigma(g, w, v)
    if su == sv:
        raise PreconditionError(f"sigma({u}) = sigma({v}) = {su}; no weight on {u}{v} can separate them")
    bad_u = final_sums_around(g, w, u, skip=(v,))
    bad_v = final_sums_around(g, w, v, skip=(u,))
    for val in _unused(w, candidates):
        if su + val not in bad_u and sv + val not in bad_v:
            w[(u, v)] = val
            return val
    raise InvariantViolation(f"no feasible weight for edge {(u, v)} despite the budget",
                             details={"edge": (u, v), "candidates": sorted(candidates)})


def assign_two_adjacent(g: Graph, w: dict, v: int, u1: int, u2: int,
                        candidates: Iterable[int]) -> tuple[int, int]:
    """Weight ``vu1`` (with a look-ahead for ``u2``) and then ``vu2``."""
    pool = _unused(w, candidates)
    s1, sv, s2 = partial_sigma(g, w, u1), partial_sigma(g, w, v), partial_sigma(g, w, u2)
    bad_u1 = final_sums_around(g, w, u1, skip=(v,))
    first = None
    for val in pool:
        if s1 + val not in bad_u1 and sv + val != s2:
            first = val
            break
    if first is None:
        raise InvariantViolation(f"no feasible weight for edge {edge(v, u1)} despite the budget",
                                 details={"v": v, "u1": u1, "u2": u2, "candidates": pool})
    w[edge(v, u1)] = first
    second = assign_single_edge(g, w, (v, u2), [c for c in pool if c != first])
    return first, second


def pendant_leaf(g: Graph, e: Edge) -> tuple[int, int]:
    """Return ``(v, u)`` for a pendant edge, ``u`` being the degree-1 end."""
    a, b = e
    if g.degree(a) == 1 and g.degree(b) == 1:
        raise PreconditionError(f"edge {edge(a, b)} is a K2 component; the graph is not nice")
    if g.degree(b) == 1:
        return a, b
    if g.degree(a) == 1:
        return b, a
    raise PreconditionError(f"edge {edge(a, b)} is not pendant")


def assign_pendant(g: Graph, w: dict, e: Edge, candidates: Iterable[int]) -> int:
    """Weight a pendant edge so the sum at its inner end avoids its neighbours."""
    v, u = pendant_leaf(g, e)
    sv = partial_sigma(g, w, v)
    bad = final_sums_around(g, w, v, skip=(u,))
    for val in _unused(w, candidates):
        if sv + val not in bad:
            w[edge(u, v)] = val
            return val
    raise InvariantViolation(f"no feasible weight for pendant edge {edge(u, v)} despite the budget",
                             details={"edge": edge(u, v), "candidates": sorted(candidates)})


def pendant_budget(g: Graph, e: Edge, leaf_aware: bool = False) -> int:
    """``d(v)``, or with ``leaf_aware`` one plus the number of non-leaf neighbours."""
    v, u = pendant_leaf(g, e)
    if not leaf_aware:
        return g.degree(v)
    return 1 + sum(1 for x in g.adj[v] if x != u and g.degree(x) >= 2)


# public operations ------------------------------------------------------------

def _check_pool(wt: EdgeWeighting, pool: WeightSet, required: int):
    clash = wt.used.intersection(pool.values)
    if clash:
        raise PreconditionError(f"pool overlaps weights already in use: {sorted(clash)}")
    if len(pool) < required:
        raise BudgetError(f"pool has {len(pool)} weights, {required} required")


def _check_prior(g: Graph, wt: EdgeWeighting, removed: Sequence[Edge]):
    gone = {edge(*e) for e in removed}
    for e in removed:
        if not g.has_edge(*e):
            raise PreconditionError(f"{edge(*e)} is not an edge of the graph")
        if wt.weight(*e) is not None:
            raise PreconditionError(f"{edge(*e)} is already weighted")
    missing = [e for e in g.edges if e not in gone and wt.weight(*e) is None]
    if missing:
        raise PreconditionError(f"prior weighting must be total on the rest; missing {missing}")


def _postcondition(g: Graph, w: dict) -> EdgeWeighting:
    sub = g.edge_subgraph(w.keys())
    res = EdgeWeighting(g, w)
    bad = [e for e in sub.edges if res.sigma(e[0]) == res.sigma(e[1])]
    if bad:
        raise InvariantViolation(f"extension produced sum conflicts on {bad}")
    return res


def extend_single_edge(g: Graph, wt: EdgeWeighting, uv: Edge, pool: WeightSet) -> EdgeWeighting:
    u, v = edge(*uv)
    _check_prior(g, wt, [(u, v)])
    if wt.sigma(u) == wt.sigma(v):
        raise PreconditionError(f"sigma({u}) = sigma({v}); the single-edge extension needs them distinct")
    _check_pool(wt, pool, g.degree(u) + g.degree(v) - 1)
    w = dict(wt.assignment)
    assign_single_edge(g, w, (u, v), pool.values)
    return _postcondition(g, w)


def extend_two_adjacent(g: Graph, wt: EdgeWeighting, v: int, u1: int, u2: int,
                        pool: WeightSet) -> EdgeWeighting:
    if not (g.has_edge(v, u1) and g.has_edge(v, u2)) or u1 == u2:
        raise PreconditionError("vu1 and vu2 must be two distinct edges")
    _check_prior(g, wt, [(v, u1), (v, u2)])
    required = mu_budget(g.degree(u1), g.degree(v), g.degree(u2))
    _check_pool(wt, pool, required)
    w = dict(wt.assignment)
    assign_two_adjacent(g, w, v, u1, u2, pool.values)
    return _postcondition(g, w)


def extend_pendant(g: Graph, wt: EdgeWeighting, vu: Edge, pool: WeightSet,
                   leaf_aware: bool = False) -> EdgeWeighting:
    _check_prior(g, wt, [vu])
    _check_pool(wt, pool, pendant_budget(g, vu, leaf_aware))
    w = dict(wt.assignment)
    assign_pendant(g, w, vu, pool.values)
    return _postcondition(g, w)
