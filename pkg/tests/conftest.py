import random
from itertools import combinations
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import strategies as st

from gsf.graph import Graph

DATA = Path(__file__).parent / "data"


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def planted_vc(rng: random.Random, n: int, K: int, p: float = 0.5) -> Graph:
    cover = set(rng.sample(range(n), min(K, n)))
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2)
                     if (u in cover or v in cover) and rng.random() < p])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def atlas(max_n: int = 7, connected: bool = False) -> list[Graph]:
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if 0 < n <= max_n and (not connected or nx.is_connected(h)):
            out.append(Graph(n, h.edges()))
    return out


def graphs8() -> list[Graph]:
    return [Graph(8, nx.from_graph6_bytes(line.encode()).edges())
            for line in (DATA / "graphs8.g6").read_text().split()]


@st.composite
def graphs(draw, max_n: int = 12, min_n: int = 0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@pytest.fixture
def rng():
    return random.Random(12345)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
