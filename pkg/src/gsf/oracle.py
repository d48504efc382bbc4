"""Brute-force ground truth for the deletion problems and the sketch lemma.

Every check here is written independently of :mod:`gsf.solvers`: bitmask
scans for the cluster, forest, bipartite and triangle properties, block
structure for even cycles, and networkx monomorphism search for explicit
subgraph families.  Minor checks reuse :func:`gsf.graph.contains_minor`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import GraphMatcher

from .common_neighbor import CnConfig, run_common_neighbor
from .graph import Graph, contains_minor, delete_vertices
from .solvers import FamilyKind, FamilySpec
from .streams import Model, Stream, graph_to_stream

MAX_N = 16
MAX_K = 4


class OracleBudgetError(ValueError):
    pass


class PropertyKind(str, enum.Enum):
    CLUSTER = "cluster"
    SUBGRAPH_FREE = "subgraph-free"
    MINOR_FREE = "minor-free"


@dataclass(frozen=True)
class Property:
    kind: PropertyKind
    family: FamilySpec | None = None

    @classmethod
    def cluster(cls) -> "Property":
        return cls(PropertyKind.CLUSTER)

    @classmethod
    def subgraph_free(cls, fam: FamilySpec) -> "Property":
        return cls(PropertyKind.SUBGRAPH_FREE, fam)

    @classmethod
    def minor_free(cls, fam: FamilySpec) -> "Property":
        return cls(PropertyKind.MINOR_FREE, fam)


@dataclass(frozen=True)
class OracleVerdict:
    witness: frozenset[int] | None
    checked_sets: int

    @property
    def yes(self) -> bool:
        return self.witness is not None

    @property
    def answer(self) -> str:
        return "YES" if self.yes else "NO"

    def to_dict(self) -> dict:
        return {
            "answer": self.answer,
            "witness": None if self.witness is None else sorted(v + 1 for v in self.witness),
            "checked_sets": self.checked_sets,
        }


# -- property checks on (adjacency masks, alive mask) ---------------------------

def _masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adj[v]) for v in range(g.n)]


def _alive_list(alive: int) -> list[int]:
    out = []
    while alive:
        low = alive & -alive
        out.append(low.bit_length() - 1)
        alive ^= low
    return out


def _cluster(adj: list[int], alive: int) -> bool:
    # every vertex's closed neighbourhood must equal that of each neighbour
    for v in _alive_list(alive):
        closed = (adj[v] & alive) | (1 << v)
        for w in _alive_list(adj[v] & alive):
            if (adj[w] & alive) | (1 << w) != closed:
                return False
    return True


def _forest(adj: list[int], alive: int) -> bool:
    vs = _alive_list(alive)
    parent = {v: v for v in vs}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in vs:
        for w in _alive_list(adj[v] & alive):
            if w < v:
                continue
            a, b = find(v), find(w)
            if a == b:
                return False
            parent[a] = b
    return True


def _bipartite(adj: list[int], alive: int) -> bool:
    side: dict[int, int] = {}
    for s in _alive_list(alive):
        if s in side:
            continue
        side[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for w in _alive_list(adj[v] & alive):
                    if w not in side:
                        side[w] = 1 - side[v]
                        nxt.append(w)
                    elif side[w] == side[v]:
                        return False
            frontier = nxt
    return True


def _triangle_free(adj: list[int], alive: int) -> bool:
    for v in _alive_list(alive):
        nb = adj[v] & alive
        for w in _alive_list(nb):
            if w > v and adj[w] & nb:
                return False
    return True


def _nx_graph(adj: list[int], alive: int) -> nx.Graph:
    h = nx.Graph()
    vs = _alive_list(alive)
    h.add_nodes_from(vs)
    h.add_edges_from((v, w) for v in vs for w in _alive_list(adj[v] & alive) if v < w)
    return h


def _even_cycle_free(adj: list[int], alive: int) -> bool:
    # a block has an even cycle unless it is a bridge or an odd cycle
    if _forest(adj, alive):
        return True
    h = _nx_graph(adj, alive)
    for block in nx.biconnected_component_edges(h):
        block = list(block)
        nodes = {v for e in block for v in e}
        if len(block) == 1:
            continue
        if len(block) > len(nodes) or len(nodes) % 2 == 0:
            return False
    return True


def _subgraph_free(graphs: Sequence[Graph]) -> Callable[[list[int], int], bool]:
    patterns = []
    for f in graphs:
        p = nx.Graph()
        p.add_nodes_from(range(f.n))
        p.add_edges_from(f.edges)
        patterns.append(p)

    def check(adj: list[int], alive: int) -> bool:
        h = _nx_graph(adj, alive)
        return not any(GraphMatcher(h, p).subgraph_is_monomorphic() for p in patterns)

    return check


def _minor_free(g: Graph, graphs: Sequence[Graph]) -> Callable[[list[int], int], bool]:
    def check(adj: list[int], alive: int) -> bool:
        sub = delete_vertices(g, [v for v in range(g.n) if not alive >> v & 1])
        return not any(contains_minor(sub, f) for f in graphs)

    return check


def property_check(g: Graph, prop: Property) -> Callable[[list[int], int], bool]:
    if prop.kind is PropertyKind.CLUSTER:
        return _cluster
    fam = prop.family
    if fam is None:
        raise ValueError("subgraph/minor properties need a family")
    if prop.kind is PropertyKind.MINOR_FREE:
        if fam.kind is FamilyKind.EXPLICIT:
            return _minor_free(g, fam.graphs)
        if fam.kind is FamilyKind.ALL_CYCLES:
            return _forest
        raise ValueError("minor-free takes an explicit family or all cycles")
    return {
        FamilyKind.ALL_CYCLES: _forest,
        FamilyKind.ODD_CYCLES: _bipartite,
        FamilyKind.EVEN_CYCLES: _even_cycle_free,
        FamilyKind.TRIANGLE: _triangle_free,
    }.get(fam.kind) or _subgraph_free(fam.graphs)


def holds(g: Graph, prop: Property) -> bool:
    return property_check(g, prop)(_masks(g), (1 << g.n) - 1)


def oracle_decide(g: Graph, k: int, prop: Property) -> OracleVerdict:
    """Try every vertex set of size ``<= k``, smallest first, lexicographic within a size.

    The first hit is therefore a minimum-size witness.
    """
    if g.n > MAX_N or k > MAX_K:
        raise OracleBudgetError(f"oracle budget is n <= {MAX_N}, k <= {MAX_K}; got n={g.n}, k={k}")
    if k < 0:
        raise ValueError("k must be non-negative")
    check = property_check(g, prop)
    adj = _masks(g)
    full = (1 << g.n) - 1
    checked = 0
    for size in range(min(k, g.n) + 1):
        for xs in combinations(range(g.n), size):
            checked += 1
            alive = full
            for v in xs:
                alive &= ~(1 << v)
            if check(adj, alive):
                return OracleVerdict(frozenset(xs), checked)
    return OracleVerdict(None, checked)


# -- sketch equivalence ----------------------------------------------------------

@dataclass(frozen=True)
class CnCounterexample:
    x: frozenset[int]
    pattern: Graph
    in_graph: bool
    in_sketch: bool

    def to_dict(self) -> dict:
        return {
            "X": sorted(v + 1 for v in self.x),
            "pattern": {"n": self.pattern.n, "edges": [[u + 1, v + 1] for u, v in self.pattern.sorted_edges()]},
            "in_graph": self.in_graph,
            "in_sketch": self.in_sketch,
        }


def copy_masks(g: Graph, f: Graph) -> np.ndarray:
    """Vertex sets (as bitmasks) of every copy of ``f`` in ``g``, via networkx."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    p = nx.Graph()
    p.add_nodes_from(range(f.n))
    p.add_edges_from(f.edges)
    seen = set()
    for mapping in GraphMatcher(h, p).subgraph_monomorphisms_iter():
        seen.add(sum(1 << v for v in mapping))
    return np.array(sorted(seen), dtype=np.int64)


def deletion_masks(n: int, max_size: int) -> tuple[list[frozenset[int]], np.ndarray]:
    sets = [frozenset(xs) for size in range(max_size + 1) for xs in combinations(range(n), size)]
    return sets, np.array([sum(1 << v for v in xs) for xs in sets], dtype=np.int64)


def survives(copies: np.ndarray, xmasks: np.ndarray) -> np.ndarray:
    """For each deletion mask, whether some copy avoids it entirely."""
    if copies.size == 0:
        return np.zeros(len(xmasks), dtype=bool)
    return ((copies[None, :] & xmasks[:, None]) == 0).any(axis=1)


def oracle_cn_equivalence(
    g: Graph,
    cfg: CnConfig,
    catalog: Sequence[Graph],
    stream: Stream | None = None,
) -> CnCounterexample | None:
    """Search for ``(X, F)`` where ``F`` survives in exactly one of ``g - X`` and ``H - X``.

    ``H`` is built from ``stream`` (default: the AL stream of ``g`` in vertex
    order).  Patterns with max degree above ``cfg.d`` are skipped; ``X`` ranges
    over all sets of at most ``cfg.K`` vertices.
    """
    if stream is None:
        stream = graph_to_stream(g, Model.AL)
    h = run_common_neighbor(stream, cfg).h
    sets, xmasks = deletion_masks(g.n, min(cfg.K, g.n))
    for f in catalog:
        if f.max_degree() > cfg.d:
            continue
        in_g = survives(copy_masks(g, f), xmasks)
        in_h = survives(copy_masks(h, f), xmasks)
        diff = np.flatnonzero(in_g != in_h)
        if diff.size:
            i = int(diff[0])
            return CnCounterexample(sets[i], f, bool(in_g[i]), bool(in_h[i]))
    return None
