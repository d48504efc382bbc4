"""Two-stage streaming recipe: sketch the stream, then solve offline on the sketch."""
from __future__ import annotations

from dataclasses import dataclass

from .common_neighbor import CnConfig, CommonNeighborSubgraph, run_common_neighbor
from .cvd import CvdParams, run_cvd
from .graph import complete_graph
from .solvers import (
    NAMED_FAMILIES,
    FamilyKind,
    FamilySpec,
    Solution,
    solve_minor_deletion,
    solve_subgraph_deletion,
)
from .streams import Stream

PROBLEMS = ("cvd", "fvs", "ect", "oct", "td", "subgraph", "minor")


@dataclass(frozen=True)
class PipelineResult:
    solution: Solution
    sketch: CommonNeighborSubgraph
    config: CnConfig


def pattern_config(K: int, d: int) -> CnConfig:
    """``ell = (d+2)K``; ``K`` is raised to ``d`` when the pattern degree exceeds it."""
    return CnConfig.for_pattern_degree(max(K, d, 1), d)


def solve_stream(stream: Stream, fam: FamilySpec, K: int, k: int, minor: bool = False) -> PipelineResult:
    if k > K:
        raise ValueError(f"need k <= K, got k={k}, K={K}")
    # a minimal subgraph carrying an F-minor has max degree <= Δ(F), so the
    # minor case sketches with the same degree parameter
    cfg = pattern_config(K, fam.max_degree)
    sk = run_common_neighbor(stream, cfg)
    solve = solve_minor_deletion if minor else solve_subgraph_deletion
    return PipelineResult(solve(sk.h, fam, k), sk, cfg)


def family_for(problem: str, graphs=None) -> FamilySpec:
    if problem in NAMED_FAMILIES:
        return NAMED_FAMILIES[problem]
    if problem in ("subgraph", "minor"):
        if not graphs:
            raise ValueError(f"problem {problem!r} needs a family file")
        return FamilySpec.explicit(graphs)
    raise ValueError(f"unknown problem {problem!r}")


def run_problem(stream: Stream, problem: str, K: int, k: int, seed: int = 0,
                graphs=None, alpha: int = 16, beta: int = 10):
    """Dispatch one of :data:`PROBLEMS`; returns a CvdReport or a PipelineResult."""
    if problem == "cvd":
        return run_cvd(stream, CvdParams(stream.n, K, k, alpha, beta, seed))
    fam = family_for(problem, graphs)
    return solve_stream(stream, fam, K, k, minor=problem == "minor")


K3_MINOR = FamilySpec(FamilyKind.EXPLICIT, (complete_graph(3),))
