"""Audit trail of a constructive run and the certificate wrapping its result."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..graph import Edge, Graph, edge
from ..weighting import EdgeWeighting, ValidationReport, WeightSet


@dataclass
class TraceStep:
    """One reduction (or base case) as it was finished.

    ``removed`` are the edges the reduction took out before recursing and
    ``assigned`` the weights it gave when putting them back (for a base case,
    every edge of the base graph).  ``config`` holds the case-specific
    objects: chosen vertices, vertex classes, layers, charges and so on.
    """

    rule: str
    removed: tuple[Edge, ...]
    assigned: dict[Edge, int]
    config: dict[str, Any] = field(default_factory=dict)
    depth: int = 0

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "depth": self.depth,
            "removed": [list(e) for e in self.removed],
            "assigned": [[u, v, w] for (u, v), w in sorted(self.assigned.items())],
            "config": _jsonable(self.config),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(x) for x in items]
    if hasattr(obj, "numerator") and not isinstance(obj, (int, bool)):
        return str(obj)
    return obj


@dataclass
class ReductionTrace:
    """Steps in the order they finished: children before their parents."""

    steps: list[TraceStep] = field(default_factory=list)

    def rules(self) -> list[str]:
        return [s.rule for s in self.steps]

    def __len__(self):
        return len(self.steps)

    def to_list(self) -> list[dict]:
        return [s.to_dict() for s in self.steps]

    def replay(self, g: Graph) -> list[Graph]:
        """Intermediate graphs, smallest first, rebuilt from the assigned edges.

        Raises ``ValueError`` if the steps do not partition the edge set of g.
        """
        seen: set[Edge] = set()
        graphs = []
        for step in self.steps:
            for e in step.assigned:
                e = edge(*e)
                if e in seen:
                    raise ValueError(f"edge {e} assigned by two steps")
                if not g.has_edge(*e):
                    raise ValueError(f"edge {e} not in the input graph")
                seen.add(e)
            graphs.append(g.edge_subgraph(seen))
        if len(seen) != g.m:
            raise ValueError("trace does not cover every edge")
        return graphs


@dataclass
class WeightingCertificate:
    algorithm: str
    graph_hash: str
    w_set: WeightSet
    weighting: EdgeWeighting
    report: ValidationReport
    trace: ReductionTrace
    route: str | None = None

    @property
    def valid(self) -> bool:
        return self.report.ok

    def to_dict(self, include_trace: bool = False) -> dict:
        g = self.weighting.graph
        out = {
            "algorithm": self.algorithm,
            "graph_hash": self.graph_hash,
            "budget": len(self.w_set),
            "weights": [[u, v, w] for (u, v), w in sorted(self.weighting.assignment.items())],
            "sigma": self.weighting.sigmas(),
            "report": self.report.to_dict(),
            "n": g.n,
            "m": g.m,
        }
        if self.route is not None:
            out["route"] = self.route
        if include_trace:
            out["trace"] = self.trace.to_list()
        return out
