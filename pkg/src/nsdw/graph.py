"""Simple undirected graphs on dense vertex ids and the structural queries
the weighting algorithms rely on."""

from __future__ import annotations

import enum
import hashlib
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GraphParseError, PreconditionError

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Normalise an unordered pair to ``(min, max)``."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple loopless graph on vertices ``0..n-1``.

    Edges are stored normalised and sorted; adjacency lists are sorted.
    Operations that "remove" edges return new graphs on the same vertex set,
    so vertex ids stay stable through every reduction.
    """

    __slots__ = ("n", "edges", "adj", "_index")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen: dict[Edge, int] = {}
        for raw in edges:
            u, v = int(raw[0]), int(raw[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = edge(u, v)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen[e] = 0
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        self._index = {e: i for i, e in enumerate(self.edges)}
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)

    # basic queries -----------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self._index

    def edge_index(self, e: Edge) -> int:
        return self._index[edge(*e)]

    def incident(self, v: int) -> list[Edge]:
        return [edge(v, u) for u in self.adj[v]]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    # derived graphs ----------------------------------------------------

    def remove_edges(self, removed: Iterable[Sequence[int]]) -> "Graph":
        gone = {edge(*e) for e in removed}
        missing = gone - set(self._index)
        if missing:
            raise ValueError(f"edges not in graph: {sorted(missing)}")
        return Graph(self.n, [e for e in self.edges if e not in gone])

    def edge_subgraph(self, keep: Iterable[Sequence[int]]) -> "Graph":
        """Same vertex set, only the given edges (which must exist)."""
        kept = {edge(*e) for e in keep}
        missing = kept - set(self._index)
        if missing:
            raise ValueError(f"edges not in graph: {sorted(missing)}")
        return Graph(self.n, kept)

    def restrict(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph on ``vertices``, keeping the original ids."""
        vs = set(vertices)
        return Graph(self.n, [e for e in self.edges if e[0] in vs and e[1] in vs])

    # connectivity ------------------------------------------------------

    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components, ordered by least vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            out.append(sorted(comp))
        return out

    def nontrivial_components(self) -> list[list[int]]:
        return [c for c in self.components() if len(c) > 1]

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    # identity ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def digest(self) -> str:
        """Stable short hash of the labelled graph."""
        text = f"{self.n};" + ",".join(f"{u}-{v}" for u, v in self.edges)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


# parsing ---------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def parse_graph6(text: str) -> Graph:
    """Decode a graph6 line (short form, at most 62 vertices)."""
    data = text.strip()
    offset = 0
    if data.startswith(_G6_HEADER):
        data = data[len(_G6_HEADER):]
        offset = len(_G6_HEADER)
    if not data:
        raise GraphParseError(f"empty graph6 string at byte {offset}")
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"byte {offset + i}: character {ch!r} outside graph6 range 63..126")
    n = ord(data[0]) - 63
    if n == 63:
        raise GraphParseError(f"byte {offset}: long-form graph6 (n > 62) is not supported")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[1:]
    if len(body) < nbytes:
        raise GraphParseError(
            f"byte {offset + 1 + len(body)}: truncated bit vector, expected {nbytes} bytes, got {len(body)}"
        )
    if len(body) > nbytes:
        raise GraphParseError(f"byte {offset + 1 + nbytes}: trailing data after bit vector")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ValueError("graph6 short form supports at most 62 vertices")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (``#`` starts a comment)."""
    lines = list(_content_lines(text))
    if not lines:
        raise GraphParseError("line 1: missing 'n m' header")
    lineno, header = lines[0]
    try:
        n, m = (int(t) for t in header.split())
    except ValueError:
        raise GraphParseError(f"line {lineno}: header must be two integers 'n m'") from None
    if n < 0 or m < 0:
        raise GraphParseError(f"line {lineno}: negative count in header")
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else lineno
        raise GraphParseError(f"line {last}: header announces {m} edges, found {len(body)}")
    seen = set()
    edges = []
    for lineno, line in body:
        parts = line.split()
        try:
            u, v = (int(t) for t in parts)
        except ValueError:
            raise GraphParseError(f"line {lineno}: expected 'u v'") from None
        if u == v:
            raise GraphParseError(f"line {lineno}: loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"line {lineno}: vertex index out of range 0..{n - 1}")
        e = edge(u, v)
        if e in seen:
            raise GraphParseError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(e)
        edges.append(e)
    return Graph(n, edges)


def to_edge_list(g: Graph) -> str:
    return "\n".join([f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


# niceness and components -----------------------------------------------

class ComponentKind(str, enum.Enum):
    EMPTY = "empty"
    BAD = "bad"
    GOOD = "good"


@dataclass(frozen=True)
class ComponentClass:
    kind: ComponentKind
    vertices: tuple[int, ...]


def classify_components(g: Graph, vertices: Iterable[int] | None = None) -> list[ComponentClass]:
    """Tag each component as empty (no edge), bad (K2) or good.

    With ``vertices`` given, only components inside that vertex set are
    reported (used to classify the components of ``G - v``).
    """
    allowed = None if vertices is None else set(vertices)
    out = []
    for comp in g.components():
        if allowed is not None and comp[0] not in allowed:
            continue
        if len(comp) == 1:
            kind = ComponentKind.EMPTY
        elif len(comp) == 2:
            kind = ComponentKind.BAD
        else:
            kind = ComponentKind.GOOD
        out.append(ComponentClass(kind, tuple(comp)))
    return out


def is_nice(g: Graph) -> bool:
    """True iff no connected component is isomorphic to K2."""
    for u, v in g.edges:
        if len(g.adj[u]) == 1 and len(g.adj[v]) == 1:
            return False
    return True


# degeneracy and density ------------------------------------------------

def degeneracy_order(g: Graph) -> tuple[int, list[int]]:
    """Repeatedly delete a minimum-degree vertex (lowest id on ties).

    Returns the largest degree seen at deletion time and the deletion order.
    """
    deg = g.degrees()
    alive = [True] * g.n
    order = []
    k = 0
    for _ in range(g.n):
        v = min((x for x in range(g.n) if alive[x]), key=lambda x: (deg[x], x))
        k = max(k, deg[v])
        alive[v] = False
        order.append(v)
        for u in g.adj[v]:
            if alive[u]:
                deg[u] -= 1
    return k, order


def degeneracy(g: Graph) -> int:
    return degeneracy_order(g)[0]


def _denser_than(g: Graph, p: int, q: int) -> bool:
    """Is there a vertex set S with |E(S)| / |S| > p/q?  (min-cut test)"""
    import networkx as nx

    n, m = g.n, g.m
    net = nx.DiGraph()
    for v in range(n):
        net.add_edge("s", v, capacity=m * q)
        net.add_edge(v, "t", capacity=m * q + 2 * p - g.degree(v) * q)
    for u, v in g.edges:
        net.add_edge(u, v, capacity=q)
        net.add_edge(v, u, capacity=q)
    return nx.minimum_cut_value(net, "s", "t") < m * n * q


def compute_mad(g: Graph) -> Fraction:
    """Exact maximum average degree max_H 2|E(H)|/|V(H)|.

    Binary search over the finitely many candidate densities a/b (b <= n),
    each tested with an integral min-cut, so no floating point is involved.
    """
    if g.n == 0:
        raise PreconditionError("mad is undefined for the empty graph")
    if g.m == 0:
        return Fraction(0)
    cands = sorted({Fraction(a, b) for b in range(1, g.n + 1)
                    for a in range(0, min(g.m, b * (b - 1) // 2) + 1)})
    lo, hi = 0, len(cands) - 1
    # smallest candidate c with no subgraph strictly denser than c
    while lo < hi:
        mid = (lo + hi) // 2
        c = cands[mid]
        if _denser_than(g, c.numerator, c.denominator):
            lo = mid + 1
        else:
            hi = mid
    return 2 * cands[lo]


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, ``None`` for forests."""
    best = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    return best


# pendant paths and rooted trees ----------------------------------------

@dataclass(frozen=True)
class PendantPath:
    """Maximal path from an attachment vertex of degree >= 3 down to a leaf.

    ``vertices`` runs attachment first, leaf last.
    """

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def attachment(self) -> int:
        return self.vertices[0]

    @property
    def leaf(self) -> int:
        return self.vertices[-1]

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [edge(vs[i], vs[i + 1]) for i in range(len(vs) - 1)]


def pendant_paths(g: Graph) -> list[PendantPath]:
    """All maximal pendant paths, sorted by (attachment, leaf).

    Components that are paths have no vertex of degree >= 3 and therefore
    contribute nothing.
    """
    out = []
    for leaf in range(g.n):
        if g.degree(leaf) != 1:
            continue
        walk = [leaf]
        prev, cur = leaf, g.adj[leaf][0]
        while g.degree(cur) == 2:
            walk.append(cur)
            a, b = g.adj[cur]
            prev, cur = cur, (b if a == prev else a)
        if g.degree(cur) >= 3:
            walk.append(cur)
            out.append(PendantPath(tuple(reversed(walk))))
    out.sort(key=lambda p: (p.attachment, p.leaf))
    return out


@dataclass(frozen=True)
class SpanningTree:
    root: int
    edges: frozenset
    layers: tuple[tuple[int, ...], ...]
    parent: dict = field(hash=False)
    private_edge: dict = field(hash=False)

    def depth(self, v: int) -> int:
        for i, layer in enumerate(self.layers):
            if v in layer:
                return i
        raise KeyError(v)


def _bfs_tree(g: Graph, v: int) -> SpanningTree:
    parent = {v: None}
    layers = [[v]]
    while True:
        nxt = []
        for x in layers[-1]:
            for y in g.adj[x]:
                if y not in parent:
                    parent[y] = x
                    nxt.append(y)
        if not nxt:
            break
        layers.append(sorted(nxt))
    private = {u: edge(u, p) for u, p in parent.items() if p is not None}
    return SpanningTree(
        root=v,
        edges=frozenset(private.values()),
        layers=tuple(tuple(layer) for layer in layers),
        parent=parent,
        private_edge=private,
    )


def spanning_tree_through(g: Graph, v: int, *, component_only: bool = False) -> SpanningTree:
    """BFS spanning tree from ``v``; it contains every edge at ``v``.

    Also exposes the layers by tree distance and each vertex's private edge
    (its tree edge towards the previous layer).  With ``component_only`` the
    tree spans the component of ``v`` and other components are ignored.
    """
    if not 0 <= v < g.n:
        raise PreconditionError(f"vertex {v} not in graph")
    tree = _bfs_tree(g, v)
    if not component_only and len(tree.parent) != g.n:
        raise PreconditionError("graph is disconnected; split it into components first")
    return tree


@dataclass(frozen=True)
class RootedForestView:
    """A tree component rooted at ``root`` with the multifather classification."""

    root: int
    parent: dict = field(hash=False)
    children: dict = field(hash=False)
    depth: dict = field(hash=False)
    multifathers: tuple[int, ...] = ()
    last_multifathers: tuple[int, ...] = ()
    deepest_last_multifathers: tuple[int, ...] = ()

    def descendants(self, v: int) -> list[int]:
        out, stack = [], list(self.children[v])
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return out


def rooted_view(g: Graph, root: int) -> RootedForestView:
    tree = _bfs_tree(g, root)
    if len(tree.edges) != sum(len(g.adj[x]) for x in tree.parent) // 2:
        raise PreconditionError("component of the root is not a tree")
    parent = tree.parent
    children = {x: [] for x in parent}
    depth = {}
    for d, layer in enumerate(tree.layers):
        for x in layer:
            depth[x] = d
            if parent[x] is not None:
                children[parent[x]].append(x)
    children = {x: tuple(sorted(c)) for x, c in children.items()}

    # max degree among descendants, bottom-up
    below = {x: 0 for x in parent}
    for layer in reversed(tree.layers):
        for x in layer:
            for c in children[x]:
                below[x] = max(below[x], below[c], g.degree(c))
    multi = tuple(sorted(x for x in parent if len(children[x]) >= 2))
    last = tuple(x for x in multi if below[x] <= 2)
    deepest = ()
    if last:
        dmax = max(depth[x] for x in last)
        deepest = tuple(x for x in last if depth[x] == dmax)
    return RootedForestView(root, parent, children, depth, multi, last, deepest)
