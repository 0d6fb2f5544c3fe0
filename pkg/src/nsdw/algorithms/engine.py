"""Explicit-stack driver for the inductive constructions.

Each reduction is written as a *frame*: a generator function
``frame(ctx, g, pool)`` that receives the graph to weight and the sorted
list of weights it may use.  To recurse, a frame yields a :class:`Request`
for a smaller graph and receives the child's assignment (a dict it then
owns and extends in place).  The frame finally returns the assignment for
``g``.  The driver keeps the suspended frames on a list instead of the
Python call stack, so long pendant chains cannot overflow it.

A frame that needs no recursion may simply return a dict instead of being a
generator.
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass
from typing import Any, Callable, Iterable

from ..errors import InvariantViolation
from ..graph import Edge, Graph, edge, is_nice
from ..weighting import EdgeWeighting, WeightSet, validate
from .certificate import ReductionTrace, TraceStep, WeightingCertificate

Frame = Callable[..., Any]


@dataclass
class Request:
    frame: Frame
    graph: Graph
    pool: list[int]


class Context:
    """State shared by the frames of one run: the trace and the stack depth."""

    def __init__(self):
        self.trace = ReductionTrace()
        self.depth = 0

    def record(self, rule: str, removed: Iterable[Edge] = (), assigned: dict | None = None,
               **config) -> None:
        self.trace.steps.append(TraceStep(
            rule=rule,
            removed=tuple(edge(*e) for e in removed),
            assigned=dict(assigned or {}),
            config=config,
            depth=self.depth,
        ))

    def mark(self) -> int:
        return len(self.trace.steps)

    def rollback(self, mark: int) -> None:
        del self.trace.steps[mark:]

    def fail(self, message: str, **details) -> InvariantViolation:
        return InvariantViolation(message, trace=self.trace, details=details)


def run(ctx: Context, frame: Frame, g: Graph, pool: list[int]) -> dict:
    stack = []
    value = None
    pending: Request | None = Request(frame, g, pool)
    while True:
        if pending is not None:
            req, pending = pending, None
            if not is_nice(req.graph):
                raise ctx.fail("a reduction produced a graph with a K2 component",
                               edges=list(req.graph.edges))
            ctx.depth = len(stack)
            result = req.frame(ctx, req.graph, req.pool)
            if inspect.isgenerator(result):
                stack.append(result)
                value = None
            else:
                value = result
                if not stack:
                    return value
        gen = stack[-1]
        ctx.depth = len(stack) - 1
        try:
            pending = gen.send(value)
        except StopIteration as stop:
            stack.pop()
            value = stop.value
            if not stack:
                return value


# helpers shared by the frames -----------------------------------------------------

def unused(pool: Iterable[int], w: dict) -> list[int]:
    used = set(w.values())
    return [x for x in pool if x not in used]


def check_nsd(ctx: Context, g: Graph, w: dict, rule: str) -> None:
    """Postcondition of every step: total on g and neighbour-sum-distinguishing."""
    if len(w) != g.m or any(e not in w for e in g.edges):
        raise ctx.fail(f"{rule}: weighting is not total on the step graph")
    if len(set(w.values())) != len(w):
        raise ctx.fail(f"{rule}: a weight was used twice")
    sig = [0] * g.n
    for (u, v), x in w.items():
        sig[u] += x
        sig[v] += x
    bad = [e for e in g.edges if sig[e[0]] == sig[e[1]]]
    if bad:
        raise ctx.fail(f"{rule}: sum conflicts on {bad}", conflicts=bad)


def delta2_base(ctx: Context, g: Graph, pool: list[int], rule: str = "delta2") -> dict:
    """Any injective assignment works when every degree is at most 2."""
    if g.m > len(pool):
        raise ctx.fail(f"{rule}: pool of {len(pool)} weights for {g.m} edges")
    w = dict(zip(g.edges, pool))
    check_nsd(ctx, g, w, rule)
    ctx.record(rule, assigned=w)
    return w


def split_components(ctx: Context, g: Graph, pool: list[int], frame: Frame,
                     slack: Callable[[Graph], int]):
    """Weight the components one after the other from a shared pool.

    Each component gets the smallest ``m_C + slack(C)`` weights not yet used;
    every weighting of C uses exactly m_C of them, so when the pool meets the
    whole graph's additive budget each later component still finds enough.
    Larger components go first.
    """
    subs = sorted(((g.restrict(c), c) for c in g.nontrivial_components()),
                  key=lambda sc: (-sc[0].m, sc[1][0]))
    comps = [c for _, c in subs]
    w: dict = {}
    for sub, comp in subs:
        free = unused(pool, w)
        need = sub.m + slack(sub)
        if len(free) < need:
            raise ctx.fail("component budget exhausted", component=comp,
                           need=need, free=len(free))
        child = yield Request(frame, sub, free[:need])
        w.update(child)
    ctx.record("components", components=comps)
    return w


def finish(algorithm: str, g: Graph, w_set: WeightSet, ctx: Context, w: dict,
           route: str | None = None) -> WeightingCertificate:
    wt = EdgeWeighting(g, w)
    report = validate(wt, against=w_set)
    if not report.ok:
        raise InvariantViolation(f"{algorithm}: final weighting failed validation: {report}",
                                 trace=ctx.trace)
    return WeightingCertificate(
        algorithm=algorithm,
        graph_hash=g.digest(),
        w_set=w_set,
        weighting=wt,
        report=report,
        trace=ctx.trace,
        route=route,
    )
