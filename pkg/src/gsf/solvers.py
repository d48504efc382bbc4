"""Offline bounded-search-tree solvers for the vertex deletion problems.

Each solver finds a forbidden structure, branches on deleting one of its
vertices, and re-verifies any deletion set it reports.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .graph import (
    Graph,
    complete_graph,
    delete_vertices,
    find_induced_p3,
    find_minor_model,
    find_subgraph,
)


class FamilyKind(str, enum.Enum):
    EXPLICIT = "explicit"
    ALL_CYCLES = "all-cycles"
    EVEN_CYCLES = "even-cycles"
    ODD_CYCLES = "odd-cycles"
    TRIANGLE = "triangle"


class UnsupportedFamilyError(ValueError):
    pass


class CertificateError(RuntimeError):
    """A solver produced a deletion set that fails re-verification."""


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    graphs: tuple[Graph, ...] = field(default=())

    def __post_init__(self):
        if self.kind is FamilyKind.EXPLICIT:
            if not self.graphs:
                raise UnsupportedFamilyError("explicit family needs at least one graph")
            for f in self.graphs:
                if f.n == 0 or not f.is_connected():
                    raise UnsupportedFamilyError("family members must be connected graphs")
                if f.m == 0:
                    raise UnsupportedFamilyError("family members need at least one edge")

    @classmethod
    def explicit(cls, graphs: Sequence[Graph]) -> "FamilySpec":
        return cls(FamilyKind.EXPLICIT, tuple(graphs))

    @property
    def max_degree(self) -> int:
        if self.kind is FamilyKind.EXPLICIT:
            return max(f.max_degree() for f in self.graphs)
        return 2


FVS = FamilySpec(FamilyKind.ALL_CYCLES)
ECT = FamilySpec(FamilyKind.EVEN_CYCLES)
OCT = FamilySpec(FamilyKind.ODD_CYCLES)
TD = FamilySpec(FamilyKind.TRIANGLE)

NAMED_FAMILIES = {"fvs": FVS, "ect": ECT, "oct": OCT, "td": TD}


@dataclass(frozen=True)
class Solution:
    deletion_set: frozenset[int] | None

    @property
    def yes(self) -> bool:
        return self.deletion_set is not None

    def to_dict(self) -> dict:
        return {
            "answer": "YES" if self.yes else "NO",
            "solution": None if self.deletion_set is None else sorted(v + 1 for v in self.deletion_set),
        }


# -- cycle witnesses ----------------------------------------------------------

def _is_forest(g: Graph) -> bool:
    return g.m == g.n - len(g.components())


def _is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if color[w] == -1:
                    color[w] = color[v] ^ 1
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def find_cycle(g: Graph, parity: int | None = None) -> tuple[int, ...] | None:
    """Shortest simple cycle, optionally of a given length parity (0 even, 1 odd).

    Among cycles of the minimum length the one whose vertex sequence (starting
    at its smallest vertex) is lexicographically least is returned.
    """
    if parity is None and _is_forest(g):
        return None
    if parity == 1 and _is_bipartite(g):
        return None
    if parity == 0 and _is_forest(g):
        return None
    lengths = range(3, g.n + 1)
    if parity is not None:
        lengths = [L for L in lengths if L % 2 == parity]
    for L in lengths:
        for s in range(g.n):
            found = _cycle_through(g, s, L)
            if found is not None:
                return found
    return None


def _cycle_through(g: Graph, s: int, length: int) -> tuple[int, ...] | None:
    """Cycle of exactly ``length`` whose smallest vertex is ``s``."""
    path = [s]
    on_path = {s}

    def dfs(v: int) -> bool:
        if len(path) == length:
            return s in g.adj[v] and path[1] < path[-1]
        for w in sorted(g.adj[v]):
            if w <= s or w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            if dfs(w):
                return True
            path.pop()
            on_path.discard(w)
        return False

    return tuple(path) if dfs(s) else None


# -- generic branching --------------------------------------------------------

def _branch(g: Graph, k: int, witness: Callable[[Graph], Sequence[int] | None]) -> frozenset[int] | None:
    obstruction = witness(g)
    if obstruction is None:
        return frozenset()
    if k == 0:
        return None
    for v in sorted(set(obstruction)):
        rest = _branch(delete_vertices(g, [v]), k - 1, witness)
        if rest is not None:
            return rest | {v}
    return None


def _solve(g: Graph, k: int, witness, check) -> Solution:
    if k < 0:
        raise ValueError("k must be non-negative")
    x = _branch(g, k, witness)
    if x is None:
        return Solution(None)
    if len(x) > k or not check(delete_vertices(g, x)):
        raise CertificateError(f"deletion set {sorted(x)} failed verification")
    return Solution(x)


def solve_cvd(g: Graph, k: int) -> Solution:
    return _solve(g, k, find_induced_p3, lambda h: find_induced_p3(h) is None)


def family_witness(fam: FamilySpec) -> Callable[[Graph], Sequence[int] | None]:
    if fam.kind is FamilyKind.ALL_CYCLES:
        return lambda g: find_cycle(g)
    if fam.kind is FamilyKind.EVEN_CYCLES:
        return lambda g: find_cycle(g, 0)
    if fam.kind is FamilyKind.ODD_CYCLES:
        return lambda g: find_cycle(g, 1)
    if fam.kind is FamilyKind.TRIANGLE:
        tri = complete_graph(3)
        return lambda g: _embedding_vertices(find_subgraph(g, tri))

    def explicit(g: Graph):
        for f in fam.graphs:
            hit = _embedding_vertices(find_subgraph(g, f))
            if hit is not None:
                return hit
        return None

    return explicit


def _embedding_vertices(mapping: dict[int, int] | None) -> list[int] | None:
    return None if mapping is None else sorted(mapping.values())


def solve_subgraph_deletion(g: Graph, fam: FamilySpec, k: int) -> Solution:
    witness = family_witness(fam)
    return _solve(g, k, witness, lambda h: witness(h) is None)


def solve_minor_deletion(g: Graph, fam: FamilySpec, k: int) -> Solution:
    if fam.kind is FamilyKind.ALL_CYCLES:
        return solve_subgraph_deletion(g, fam, k)
    if fam.kind is not FamilyKind.EXPLICIT:
        raise UnsupportedFamilyError("minor deletion takes an explicit finite family")

    # every solution must hit each minor model, so its vertex set is a valid
    # branching set; shrinking it first costs more searches than it saves
    def witness(h: Graph):
        for f in fam.graphs:
            model = find_minor_model(h, f)
            if model is not None:
                return sorted(set().union(*model))
        return None

    return _solve(g, k, witness, lambda h: witness(h) is None)
