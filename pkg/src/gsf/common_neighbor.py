"""One-pass common-neighbour subgraph over an adjacency-list stream.

The sketch keeps a greedy maximal matching ``M``, every edge with both ends in
``V(M)``, and, for each set ``S`` of at most ``d`` matched vertices, edges to a
bounded number (``ell``) of unmatched common neighbours of ``S``.  Because
``V(M)`` is a vertex cover, these stored edges are enough to preserve every
copy of a pattern with maximum degree ``d`` up to isomorphism, even after
deleting any ``K`` vertices, once ``ell >= (d + 2) * K``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable

from .graph import Graph, Matching, is_maximal_matching
from .streams import Model, Stream, StreamError, VertexExpose, validate


@dataclass(frozen=True)
class CnConfig:
    K: int
    d: int
    ell: int

    def __post_init__(self):
        if not 1 <= self.d <= self.K:
            raise ValueError(f"need 1 <= d <= K, got d={self.d}, K={self.K}")
        if self.ell < 1:
            raise ValueError("ell must be >= 1")

    @classmethod
    def for_pattern_degree(cls, K: int, d: int) -> "CnConfig":
        """Configuration that preserves patterns of max degree ``d``: ``ell = (d+2)K``."""
        return cls(K=K, d=d, ell=(d + 2) * K)


@dataclass(frozen=True)
class CommonNeighborSubgraph:
    h: Graph
    matching: Matching
    # admissions made on behalf of each S (never above ell)
    neighbor_counts: dict[frozenset[int], int]
    peak_buffer: int = 0

    @property
    def vertices(self) -> frozenset[int]:
        return self.h.non_isolated()

    @property
    def matched(self) -> frozenset[int]:
        return self.matching.matched_vertices


def _subsets(items: Iterable[int], max_size: int):
    items = sorted(items)
    for size in range(1, min(max_size, len(items)) + 1):
        yield from combinations(items, size)


def run_common_neighbor(stream: Stream, cfg: CnConfig, check: bool = True) -> CommonNeighborSubgraph:
    if stream.model != Model.AL:
        raise StreamError(f"common-neighbour sketch needs an AL stream, got {stream.model}")
    if check:
        validate(stream)
    n = stream.n
    matched: set[int] = set()
    pairs: set[tuple[int, int]] = set()
    h_adj: list[set[int]] = [set() for _ in range(n)]
    common: dict[tuple[int, ...], int] = {}  # |N_H(S) - V(M)| per S
    admitted: dict[frozenset[int], int] = {}
    peak_buffer = 0

    def add_edge(u: int, z: int) -> None:
        h_adj[u].add(z)
        h_adj[z].add(u)

    for ev in stream.events:
        assert isinstance(ev, VertexExpose)
        u = ev.v
        buffer: list[int] = []
        touched_matching = u in matched
        for x in ev.neighbors:
            if u not in matched and x not in matched:
                matched.update((u, x))
                pairs.add((u, x) if u < x else (x, u))
                touched_matching = True
            if x in matched:
                buffer.append(x)
        peak_buffer = max(peak_buffer, len(buffer))
        if touched_matching:
            for x in buffer:
                add_edge(u, x)
            continue
        # u stays unmatched for good, so every neighbour is already matched
        if len(buffer) != len(ev.neighbors):
            raise AssertionError(f"unmatched vertex {u} has an unmatched neighbour")
        for S in _subsets(buffer, cfg.d):
            if common.get(S, 0) >= cfg.ell:
                continue
            before = set(h_adj[u])
            new = [z for z in S if z not in before]
            for z in new:
                add_edge(u, z)
            admitted[frozenset(S)] = admitted.get(frozenset(S), 0) + 1
            if new:
                # u becomes a common neighbour of every subset it now fully covers
                for T in _subsets(h_adj[u], cfg.d):
                    if not before.issuperset(T):
                        common[T] = common.get(T, 0) + 1

    h = Graph(n, ((u, v) for u in range(n) for v in h_adj[u] if u < v))
    return CommonNeighborSubgraph(h, Matching(frozenset(pairs)), admitted, peak_buffer)


class CnViolation(Exception):
    def __init__(self, clause: str, witness, message: str):
        self.clause = clause
        self.witness = witness
        super().__init__(f"clause ({clause}): {message}")


def validate_cn_subgraph(g: Graph, sk: CommonNeighborSubgraph, cfg: CnConfig) -> CnViolation | None:
    """Check a sketch against the common-neighbour subgraph definition for ``g``.

    Clause (iv) is checked as a lower bound: every ``S`` must see at least
    ``min(|N_G(S) - V(M)|, ell)`` common neighbours in ``H``, while the
    admissions charged to ``S`` stay at most ``ell``.
    """
    h = sk.h
    for u, v in h.sorted_edges():
        if not g.has_edge(u, v):
            return CnViolation("i", (u, v), f"edge ({u}, {v}) of H is not in G")
    for v in sk.vertices:
        if not h.adj[v]:
            return CnViolation("i", v, f"vertex {v} is isolated in H")
    if not is_maximal_matching(g, sk.matching):
        return CnViolation("ii", sorted(sk.matching.pairs), "matching is not maximal in G")
    for u, v in sk.matching.pairs:
        if not h.has_edge(u, v):
            return CnViolation("ii", (u, v), f"matching edge ({u}, {v}) missing from H")
    vm = sk.matched
    for u, v in g.sorted_edges():
        if u in vm and v in vm and not h.has_edge(u, v):
            return CnViolation("iii", (u, v), f"edge ({u}, {v}) inside V(M) missing from H")
    for S, c in sorted(sk.neighbor_counts.items(), key=lambda kv: sorted(kv[0])):
        if c > cfg.ell:
            return CnViolation("iv", tuple(sorted(S)), f"{c} neighbours stored for S, above ell={cfg.ell}")
    for S in _subsets(vm, cfg.d):
        want = min(len(g.common_neighbors(S) - vm), cfg.ell)
        have = len(h.common_neighbors(S) - vm)
        if have < want:
            return CnViolation("iv", S, f"S has {have} common neighbours in H, needs {want}")
    return None


def cn_space_bound(cfg: CnConfig) -> int:
    """Edge budget: all pairs inside V(M) plus ``d`` edges per admission."""
    vm = 2 * cfg.K
    subsets = sum(comb(vm, i) for i in range(1, cfg.d + 1))
    return vm * (vm - 1) // 2 + subsets * cfg.ell * cfg.d


def cn_space_report(sk: CommonNeighborSubgraph, cfg: CnConfig) -> int:
    """Words held at the end of the pass: H's edges, M, the per-set counters and
    the largest per-exposure buffer."""
    edges = sk.h.m
    bound = cn_space_bound(cfg)
    if edges > bound:
        raise AssertionError(f"sketch holds {edges} edges, above the bound {bound}")
    return 2 * edges + 2 * len(sk.matching) + 2 * len(sk.neighbor_counts) + sk.peak_buffer


def cn_space_record(sk: CommonNeighborSubgraph, cfg: CnConfig) -> dict:
    return {
        "edges": sk.h.m,
        "matching": len(sk.matching),
        "tracked_sets": len(sk.neighbor_counts),
        "peak_buffer": sk.peak_buffer,
        "words": cn_space_report(sk, cfg),
        "edge_bound": cn_space_bound(cfg),
    }
