"""Exact backtracking search for edge-injective NSD weightings.

Edges are assigned most-constrained first (largest endpoint degree sum) and
weights are tried in increasing order.  A vertex sum is compared with a
neighbour's as soon as both are final; pairs that degrees alone force apart
(a leaf against a 2+-vertex, two adjacent 2-vertices) are never compared.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import NotNiceError, SearchBudgetExceeded
from .graph import Graph, is_nice
from .weighting import EdgeWeighting, WeightSet

DEFAULT_MAX_NODES = 10**8
DEFAULT_TIMEOUT = 60.0


@dataclass
class SearchResult:
    status: str  # "found", "none" or "inconclusive"
    weighting: EdgeWeighting | None
    nodes: int
    elapsed: float


@dataclass
class ChiResult:
    chi: int | None
    witness: EdgeWeighting | None
    nodes_explored: int
    elapsed: float
    inconclusive: bool = False
    lower_bound: int = 0

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "chi": self.chi,
            "inconclusive": self.inconclusive,
            "nodes_explored": self.nodes_explored,
        }
        if self.inconclusive:
            out["lower_bound"] = self.lower_bound
        if timings:
            out["elapsed"] = self.elapsed
        return out


class _Budget(Exception):
    pass


def _degree_forced(da: int, db: int) -> bool:
    return (da == 1 and db >= 2) or (db == 1 and da >= 2) or (da == 2 and db == 2)


def search(g: Graph, w_set, *, antimagic: bool = False, pruning: bool = True,
           max_nodes: int = DEFAULT_MAX_NODES, timeout: float | None = DEFAULT_TIMEOUT) -> SearchResult:
    """Decide whether g has an edge-injective NSD weighting from ``w_set``.

    With ``antimagic`` the sums must be distinct over all vertices.  With
    ``pruning`` off every constraint is checked only on complete assignments;
    this is the slow reference mode used to confirm pruning is sound.
    """
    w_set = w_set if isinstance(w_set, WeightSet) else WeightSet(w_set)
    start = time.monotonic()
    deadline = None if timeout is None else start + timeout
    m, n = g.m, g.n
    vals = list(w_set.values)
    if m > len(vals):
        return SearchResult("none", None, 0, 0.0)
    deg = g.degrees()
    order = sorted(range(m), key=lambda i: (-(deg[g.edges[i][0]] + deg[g.edges[i][1]]), i))
    edges = [g.edges[i] for i in order]
    last = [-1] * n
    for pos, (u, v) in enumerate(edges):
        last[u] = pos
        last[v] = pos

    # comparisons to make right after placing edge number pos
    checks: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    finishing: list[list[int]] = [[] for _ in range(m)]
    for a in range(n):
        if last[a] < 0:
            continue
        finishing[last[a]].append(a)
        for c in g.adj[a]:
            if last[c] < last[a] or (last[c] == last[a] and c < a):
                if pruning and _degree_forced(deg[a], deg[c]):
                    continue
                checks[last[a]].append((a, c))
    all_pairs = list(g.edges)

    sig = [0] * n
    used = [False] * len(vals)
    assign = [0] * m
    # isolated vertices keep sum 0, so at most one of them is allowed
    isolated = [v for v in range(n) if last[v] < 0]
    if antimagic and len(isolated) > 1:
        return SearchResult("none", None, 0, time.monotonic() - start)
    seen_sums: dict[int, int] = {0: isolated[0]} if isolated else {}
    nodes = 0

    def full_ok() -> bool:
        if any(sig[a] == sig[b] for a, b in all_pairs):
            return False
        return not antimagic or len(set(sig)) == n

    def dfs(pos: int) -> bool:
        nonlocal nodes
        if pos == m:
            return pruning or full_ok()
        u, v = edges[pos]
        chk = checks[pos]
        fin = finishing[pos]
        for j, val in enumerate(vals):
            if used[j]:
                continue
            nodes += 1
            if nodes & 0xFFF == 0:
                if nodes > max_nodes or (deadline is not None and time.monotonic() > deadline):
                    raise _Budget
            sig[u] += val
            sig[v] += val
            ok = True
            if pruning:
                for a, c in chk:
                    if sig[a] == sig[c]:
                        ok = False
                        break
                if ok and antimagic:
                    for a in fin:
                        if sig[a] in seen_sums:
                            ok = False
                            break
                    if ok and len(fin) == 2 and sig[fin[0]] == sig[fin[1]]:
                        ok = False
            if ok:
                if antimagic and pruning:
                    for a in fin:
                        seen_sums[sig[a]] = a
                used[j] = True
                assign[pos] = val
                if dfs(pos + 1):
                    return True
                used[j] = False
                if antimagic and pruning:
                    for a in fin:
                        del seen_sums[sig[a]]
            sig[u] -= val
            sig[v] -= val
        return False

    try:
        found = dfs(0)
    except _Budget:
        return SearchResult("inconclusive", None, nodes, time.monotonic() - start)
    elapsed = time.monotonic() - start
    if not found:
        return SearchResult("none", None, nodes, elapsed)
    wt = EdgeWeighting(g, {e: assign[pos] for pos, e in enumerate(edges)})
    return SearchResult("found", wt, nodes, elapsed)


def _require_nice(g: Graph):
    if not is_nice(g):
        raise NotNiceError("graph has a K2 component")


def exists_weighting(g: Graph, w_set, **budget) -> EdgeWeighting | None:
    """A valid weighting from ``w_set`` or ``None``; raises if the budget runs out."""
    _require_nice(g)
    res = search(g, w_set, **budget)
    if res.status == "inconclusive":
        raise SearchBudgetExceeded("search budget exhausted", nodes=res.nodes, elapsed=res.elapsed)
    return res.weighting


def compute_chi(g: Graph, *, max_nodes: int = DEFAULT_MAX_NODES,
                timeout: float | None = DEFAULT_TIMEOUT, pruning: bool = True) -> ChiResult:
    """Smallest k with a valid {1..k}-weighting, trying k = m, m+1, ...

    The node and time budgets cover the whole call; running out gives an
    inconclusive result carrying the largest k already ruled out plus one.
    """
    _require_nice(g)
    start = time.monotonic()
    nodes = 0
    k = g.m
    while True:
        left = None if timeout is None else timeout - (time.monotonic() - start)
        if left is not None and left <= 0:
            return ChiResult(None, None, nodes, time.monotonic() - start, True, k)
        res = search(g, WeightSet.interval(k), max_nodes=max_nodes - nodes,
                     timeout=left, pruning=pruning)
        nodes += res.nodes
        if res.status == "found":
            return ChiResult(k, res.weighting, nodes, time.monotonic() - start, False, k)
        if res.status == "inconclusive":
            return ChiResult(None, None, nodes, time.monotonic() - start, True, k)
        k += 1


def is_antimagic(g: Graph, **budget) -> tuple[bool, EdgeWeighting | None]:
    """Search for a bijection E -> {1..m} with all vertex sums distinct."""
    _require_nice(g)
    res = search(g, WeightSet.interval(g.m), antimagic=True, **budget)
    if res.status == "inconclusive":
        raise SearchBudgetExceeded("search budget exhausted", nodes=res.nodes, elapsed=res.elapsed)
    return res.status == "found", res.weighting


def verify_conjecture(g: Graph, **budget) -> bool:
    """Does g have a valid weighting using weights within {1..m}?"""
    return exists_weighting(g, WeightSet.interval(g.m), **budget) is not None
