from __future__ import annotations

import random
import sys
from functools import lru_cache
from pathlib import Path

import networkx as nx
import pytest

from nsdw import Graph, is_nice, parse_graph6

FIXTURES = Path(__file__).parent / "fixtures"
sys.path.insert(0, str(Path(__file__).parent))


def from_nx(h) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph(h.number_of_nodes(), list(h.edges()))


@lru_cache(maxsize=None)
def connected_corpus(max_n: int = 7) -> tuple[Graph, ...]:
    graphs = []
    for n in range(1, max_n + 1):
        for line in (FIXTURES / f"connected_n{n}.g6").read_text().split():
            graphs.append(parse_graph6(line))
    return tuple(graphs)


@lru_cache(maxsize=None)
def nice_connected(max_n: int = 7) -> tuple[Graph, ...]:
    return tuple(g for g in connected_corpus(max_n) if is_nice(g))


@lru_cache(maxsize=None)
def atlas_nice(max_m: int) -> tuple[Graph, ...]:
    """Every nice graph on at most 7 vertices (connected or not) with at most max_m edges."""
    out = []
    for h in nx.graph_atlas_g()[1:]:
        g = from_nx(h)
        if g.m <= max_m and is_nice(g):
            out.append(g)
    return tuple(out)


@pytest.fixture
def rng():
    return random.Random(20240601)


# -- acceptance reporting -------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
