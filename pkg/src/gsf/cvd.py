"""Cluster vertex deletion over a dynamic edge stream.

Every edge update goes to one l0-sampler per hash, picked by the labels of its
endpoints.  After the pass the samples form a small subgraph ``H``; when
``VC(G) <= K`` a solution for ``H`` is, with high probability, also one for
``G``, and the offline branching solver decides ``H``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .sketch import SamplerGrid, grid_space_words
from .solvers import Solution, solve_cvd
from .streams import Stream, edge_updates, validate


@dataclass(frozen=True)
class CvdParams:
    n: int
    K: int
    k: int
    alpha: int = 16
    beta: int = 10
    seed: int = 0

    def __post_init__(self):
        if not 0 <= self.k <= self.K:
            raise ValueError(f"need 0 <= k <= K, got k={self.k}, K={self.K}")
        if self.K > max(self.n, 1):
            raise ValueError(f"K={self.K} exceeds n={self.n}")
        if self.alpha < 1 or self.beta < 1:
            raise ValueError("alpha and beta must be >= 1")


@dataclass(frozen=True)
class CvdReport:
    solution: Solution
    space_words: int
    sketch_edges: int
    extraction_failures: int = 0
    allocated_words: int = 0

    @property
    def yes(self) -> bool:
        return self.solution.yes

    def to_dict(self) -> dict:
        out = self.solution.to_dict()
        out.update(
            space_words=self.space_words,
            allocated_words=self.allocated_words,
            sketch_edges=self.sketch_edges,
            extraction_failures=self.extraction_failures,
        )
        return out


def build_grid(params: CvdParams, exact: bool = False) -> SamplerGrid:
    # K >= 1 for the grid even when the promise is VC(G) = 0
    return SamplerGrid(params.n, max(params.K, 1), params.alpha, params.beta, params.seed, exact)


def sketch_stream(stream: Stream, params: CvdParams, exact: bool = False) -> tuple[SamplerGrid, Graph, int]:
    if stream.n != params.n:
        raise ValueError(f"stream has n={stream.n}, params say n={params.n}")
    validate(stream)
    grid = build_grid(params, exact)
    for u, v, delta in edge_updates(stream):
        grid.feed(u, v, delta)
    h, failures = grid.extract()
    return grid, h, failures


def run_cvd(stream: Stream, params: CvdParams, exact: bool = False) -> CvdReport:
    """One pass over any edge-update stream (DEA, EA, or a vertex-exposure stream)."""
    grid, h, failures = sketch_stream(stream, params, exact)
    solution = solve_cvd(h, params.k)
    return CvdReport(solution, grid.space_words(), h.m, failures, grid.allocated_words())


def cvd_space_report(params: CvdParams) -> int:
    return grid_space_words(params.n, max(params.K, 1), params.alpha, params.beta)
