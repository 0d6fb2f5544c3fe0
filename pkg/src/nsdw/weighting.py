"""Weight sets, edge weightings, vertex sums and the validators built on them."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import GraphParseError, PreconditionError
from .graph import Edge, Graph, edge

UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class WeightSet:
    """Distinct strictly positive integers kept in increasing order."""

    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        vals = sorted(int(x) for x in values)
        for a, b in zip(vals, vals[1:]):
            if a == b:
                raise ValueError(f"weight {a} repeated")
        if vals and vals[0] < 1:
            raise ValueError("weights must be strictly positive")
        if vals and vals[-1] > UINT64_MAX:
            raise ValueError("weights must fit in 64 bits")
        object.__setattr__(self, "values", tuple(vals))

    @classmethod
    def interval(cls, k: int, start: int = 1) -> "WeightSet":
        """The weights ``start, start+1, ..., start+k-1``."""
        return cls(range(start, start + k))

    def smallest(self, k: int) -> "WeightSet":
        return WeightSet(self.values[:k])

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __contains__(self, x):
        i = bisect_left(self.values, x)
        return i < len(self.values) and self.values[i] == x

    def __getitem__(self, i):
        return self.values[i]


class EdgeWeighting:
    """Injective map from (some of) the edges of a graph to positive integers.

    Instances are immutable; :meth:`extended` builds a new weighting with
    extra edges.  Vertex sums count assigned edges only.
    """

    __slots__ = ("graph", "_w", "_sigma")

    def __init__(self, graph: Graph, assignment: Mapping[Sequence[int], int] = ()):
        w: dict[Edge, int] = {}
        items = assignment.items() if isinstance(assignment, Mapping) else assignment
        seen: dict[int, Edge] = {}
        for e_raw, val in items:
            e = edge(*e_raw)
            if not graph.has_edge(*e):
                raise ValueError(f"{e} is not an edge of the graph")
            if e in w:
                raise ValueError(f"edge {e} weighted twice")
            val = int(val)
            if val < 1:
                raise ValueError(f"weight {val} on {e} is not strictly positive")
            if val > UINT64_MAX:
                raise ValueError(f"weight {val} on {e} does not fit in 64 bits")
            if val in seen:
                raise ValueError(f"weight {val} used on both {seen[val]} and {e}")
            seen[val] = e
            w[e] = val
        sig = [0] * graph.n
        for (u, v), val in w.items():
            sig[u] += val
            sig[v] += val
        if any(s > UINT64_MAX for s in sig):
            raise OverflowError("a vertex sum exceeds the 64-bit range")
        self.graph = graph
        self._w = w
        self._sigma = sig

    @property
    def assignment(self) -> Mapping[Edge, int]:
        return MappingProxyType(self._w)

    def weight(self, u: int, v: int) -> int | None:
        return self._w.get(edge(u, v))

    def sigma(self, v: int) -> int:
        return self._sigma[v]

    def sigmas(self) -> list[int]:
        return list(self._sigma)

    @property
    def used(self) -> frozenset:
        return frozenset(self._w.values())

    def is_total(self) -> bool:
        return len(self._w) == self.graph.m

    def missing_edges(self) -> list[Edge]:
        return [e for e in self.graph.edges if e not in self._w]

    def extended(self, extra: Mapping[Sequence[int], int]) -> "EdgeWeighting":
        merged = dict(self._w)
        for e, val in extra.items():
            e = edge(*e)
            if e in merged:
                raise ValueError(f"edge {e} already weighted")
            merged[e] = val
        return EdgeWeighting(self.graph, merged)

    def on(self, graph: Graph) -> "EdgeWeighting":
        """Same weights viewed on ``graph`` (which must contain the weighted edges)."""
        return EdgeWeighting(graph, self._w)

    def __eq__(self, other):
        return isinstance(other, EdgeWeighting) and self.graph == other.graph and self._w == other._w

    def __hash__(self):
        return hash((self.graph, frozenset(self._w.items())))

    def __repr__(self):
        return f"EdgeWeighting({len(self._w)}/{self.graph.m} edges)"


def sigma(wt: EdgeWeighting, v: int) -> int:
    return wt.sigma(v)


@dataclass
class ValidationReport:
    """Outcome of checking a total weighting.

    Each flag comes with the list of witnesses against it, empty exactly when
    the flag is true.
    """

    edge_injective: bool
    nsd: bool
    antimagic: bool
    weight_range_ok: bool
    conflicts: list[Edge] = field(default_factory=list)
    repeated_weights: list[int] = field(default_factory=list)
    sigma_collisions: list[tuple[int, int]] = field(default_factory=list)
    out_of_range: list[tuple[Edge, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.edge_injective and self.nsd and self.weight_range_ok

    def to_dict(self) -> dict:
        return {
            "edge_injective": self.edge_injective,
            "nsd": self.nsd,
            "antimagic": self.antimagic,
            "weight_range_ok": self.weight_range_ok,
            "conflicts": [list(e) for e in self.conflicts],
            "repeated_weights": list(self.repeated_weights),
            "sigma_collisions": [list(p) for p in self.sigma_collisions],
            "out_of_range": [[list(e), w] for e, w in self.out_of_range],
        }


def validate_assignment(g: Graph, weights: Mapping[Edge, int],
                        against: WeightSet | None = None) -> ValidationReport:
    """Validate a raw edge -> integer map, tolerating repeated or non-positive weights.

    This is the path used for weightings read from files, which may violate
    the invariants an :class:`EdgeWeighting` enforces.
    """
    norm = {edge(*e): int(w) for e, w in weights.items()}
    missing = [e for e in g.edges if e not in norm]
    if missing:
        raise PreconditionError(f"weighting is partial; missing edges {missing}")
    extra = [e for e in norm if not g.has_edge(*e)]
    if extra:
        raise PreconditionError(f"weighting mentions non-edges {extra}")

    counts: dict[int, int] = {}
    for w in norm.values():
        counts[w] = counts.get(w, 0) + 1
    repeated = sorted(w for w, c in counts.items() if c > 1)

    sig = [0] * g.n
    for (u, v), w in norm.items():
        sig[u] += w
        sig[v] += w
    conflicts = [e for e in g.edges if sig[e[0]] == sig[e[1]]]

    allowed = None if against is None else set(against.values)
    out_of_range = [(e, w) for e, w in sorted(norm.items())
                    if w < 1 or (allowed is not None and w not in allowed)]

    by_sum: dict[int, int] = {}
    collisions = []
    for v in range(g.n):
        if sig[v] in by_sum:
            collisions.append((by_sum[sig[v]], v))
        else:
            by_sum[sig[v]] = v
    bijective = sorted(norm.values()) == list(range(1, g.m + 1))
    return ValidationReport(
        edge_injective=not repeated,
        nsd=not conflicts,
        antimagic=not collisions and bijective,
        weight_range_ok=not out_of_range,
        conflicts=conflicts,
        repeated_weights=repeated,
        sigma_collisions=collisions,
        out_of_range=out_of_range,
    )


def validate(wt: EdgeWeighting, against: WeightSet | None = None) -> ValidationReport:
    """Check a total weighting: injectivity, NSD, antimagic and weight range.

    ``antimagic`` additionally requires the weights to be exactly ``1..m``.
    """
    if not wt.is_total():
        raise PreconditionError(f"weighting is partial; missing edges {wt.missing_edges()}")
    return validate_assignment(wt.graph, wt.assignment, against)


def forced_distinct(g: Graph, wt: EdgeWeighting, u: int, v: int) -> bool:
    """Whether degrees and weights alone guarantee ``sigma(u) != sigma(v)``.

    Empty minima count as +infinity and empty maxima as 0.
    """
    if not g.has_edge(u, v):
        raise PreconditionError(f"({u}, {v}) is not an edge")
    du, dv = g.degree(u), g.degree(v)
    if du == dv == 1:
        # a K2 component: both sums are the single weight
        return False
    if (du == 1 and dv >= 2) or (dv == 1 and du >= 2) or (du == 2 and dv == 2):
        return True
    return _dominates(g, wt, u, v) or _dominates(g, wt, v, u)


def _dominates(g: Graph, wt: EdgeWeighting, u: int, v: int) -> bool:
    if g.degree(u) < g.degree(v):
        return False
    at_u = [wt.weight(u, x) for x in g.adj[u] if x != v]
    at_v = [wt.weight(v, x) for x in g.adj[v] if x != u]
    if None in at_u or None in at_v:
        raise PreconditionError("forced_distinct needs the weights around the edge")
    lo = min(at_u, default=float("inf"))
    hi = max(at_v, default=0)
    return lo >= hi


def parse_weighting(text: str) -> dict[Edge, int]:
    """Parse ``u v weight`` lines into a raw edge -> weight map.

    Weights are kept as written (even non-positive ones) so that validation
    can report range failures instead of failing at parse time.
    """
    out: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            u, v, w = (int(t) for t in line.split())
        except ValueError:
            raise GraphParseError(f"line {lineno}: expected 'u v weight'") from None
        if u == v:
            raise GraphParseError(f"line {lineno}: loop at vertex {u}")
        e = edge(u, v)
        if e in out:
            raise GraphParseError(f"line {lineno}: edge {u} {v} weighted twice")
        out[e] = w
    return out


def format_weighting(wt: EdgeWeighting) -> str:
    return "".join(f"{u} {v} {w}\n" for (u, v), w in sorted(wt.assignment.items()))
