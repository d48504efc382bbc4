"""Reduction graphs from the permutation-bit and disjointness problems.

Each generator emits the stream in the exact exposure order of the two-party
reduction: the first player's vertices, then the second player's.  Vertex
labels (``u1``, ``v'3``, ``u_2_1`` ...) are attached to the stream so files
stay readable.  Instances use 1-based indices throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .streams import Model, Stream, VertexExpose, validate


@dataclass(frozen=True)
class PermInstance:
    n: int
    pi: tuple[int, ...]
    j: int

    def __post_init__(self):
        object.__setattr__(self, "pi", tuple(self.pi))
        if self.n < 2 or self.n & (self.n - 1):
            raise ValueError("n must be a power of two, at least 2")
        if sorted(self.pi) != list(range(1, self.n + 1)):
            raise ValueError("pi must be a permutation of 1..n")
        if not 1 <= self.j <= self.n * self.log_n:
            raise ValueError(f"j must lie in 1..{self.n * self.log_n}")

    @property
    def log_n(self) -> int:
        return self.n.bit_length() - 1

    @property
    def psi_gamma(self) -> tuple[int, int]:
        return phi(self.j, self.n)


@dataclass(frozen=True)
class DisjInstance:
    x: tuple[int, ...]
    y: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(b) for b in self.x))
        object.__setattr__(self, "y", tuple(int(b) for b in self.y))
        if len(self.x) != len(self.y) or not self.x:
            raise ValueError("x and y must be non-empty and of equal length")
        if any(b not in (0, 1) for b in self.x + self.y):
            raise ValueError("x and y must be bit vectors")

    @classmethod
    def from_strings(cls, x: str, y: str) -> "DisjInstance":
        return cls(tuple(int(c) for c in x), tuple(int(c) for c in y))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def disjoint(self) -> int:
        """1 when no index has ``x_i = y_i = 1``."""
        return int(not any(a and b for a, b in zip(self.x, self.y)))


def phi(j: int, n: int) -> tuple[int, int]:
    """Split a bit position of the concatenated string into (element, bit)."""
    log_n = n.bit_length() - 1
    psi = math.ceil(j / log_n)
    return psi, j + log_n - psi * log_n


def bit(i: int, gamma: int, n: int) -> int:
    """Bit ``gamma`` (1 = most significant) of ``i`` written with log2(n) bits; ``n`` is all zeros."""
    log_n = n.bit_length() - 1
    return (i % n) >> (log_n - gamma) & 1


def perm_string(pi: Sequence[int], n: int) -> str:
    log_n = n.bit_length() - 1
    return "".join(format(p % n, f"0{log_n}b") for p in pi)


def perm_value(inst: PermInstance) -> int:
    psi, gamma = inst.psi_gamma
    return bit(inst.pi[psi - 1], gamma, inst.n)


class _Builder:
    def __init__(self, model: Model, labels: Sequence[str]):
        self.model = model
        self.labels = list(labels)
        self.index = {name: i for i, name in enumerate(self.labels)}
        self.events: list[VertexExpose] = []

    def expose(self, v: str, nbrs: Sequence[str] = ()) -> None:
        self.events.append(VertexExpose(self.index[v], tuple(self.index[x] for x in nbrs)))

    def stream(self) -> Stream:
        s = Stream(self.model, len(self.labels), tuple(self.events), tuple(self.labels))
        validate(s)
        return s


def gen_perm_fvs(inst: PermInstance) -> Stream:
    """Adjacency-list graph on ``4n + 2`` vertices; it has a cycle iff the queried bit is 1."""
    n, pi = inst.n, inst.pi
    inv = {p: i for i, p in enumerate(pi, start=1)}
    psi, gamma = inst.psi_gamma
    idx = range(1, n + 1)
    b = _Builder(
        Model.AL,
        [f"u{i}" for i in idx] + [f"v{i}" for i in idx]
        + [f"u'{i}" for i in idx] + [f"v'{i}" for i in idx] + ["w", "w'"],
    )
    for i in idx:
        b.expose(f"u{i}", [f"u'{i}", f"v{pi[i - 1]}"])
    for i in idx:
        b.expose(f"v{i}", [f"v'{i}", f"u{inv[i]}"])
    for i in idx:
        b.expose(f"u'{i}", [f"u{i}", "w'"] if i == psi else [f"u{i}"])
    ones = [i for i in idx if bit(i, gamma, n)]
    for i in idx:
        b.expose(f"v'{i}", [f"v{i}", "w"] if i in ones else [f"v{i}"])
    b.expose("w", ["w'"] + [f"v'{i}" for i in ones])
    b.expose("w'", ["w", f"u'{psi}"])
    return b.stream()


def _quad_labels(n: int, size: int) -> list[str]:
    return [f"u_{i}_{c}" for i in range(1, n + 1) for c in range(1, size + 1)]


def gen_disj_fvs(inst: DisjInstance) -> Stream:
    """Adjacency-list graph of ``n`` four-vertex gadgets; index ``i`` closes a C4 iff ``x_i = y_i = 1``."""
    b = _Builder(Model.AL, _quad_labels(inst.n, 4))
    for i, xi in enumerate(inst.x, start=1):
        u = [f"u_{i}_{c}" for c in range(1, 5)]
        b.expose(u[0], [u[2]] + ([u[1]] if xi else []))
        b.expose(u[1], [u[3]] + ([u[0]] if xi else []))
    for i, yi in enumerate(inst.y, start=1):
        u = [f"u_{i}_{c}" for c in range(1, 5)]
        b.expose(u[2], [u[0]] + ([u[3]] if yi else []))
        b.expose(u[3], [u[1]] + ([u[2]] if yi else []))
    return b.stream()


def gen_disj_fvs_vc(inst: DisjInstance) -> Stream:
    """Vertex-arrival graph on ``n + 3`` vertices with vertex cover at most 2."""
    idx = range(1, inst.n + 1)
    b = _Builder(Model.VA, ["ua"] + [f"v{i}" for i in idx] + ["ub", "w"])
    b.expose("ua")
    for i, xi in zip(idx, inst.x):
        b.expose(f"v{i}", ["ua"] if xi else [])
    b.expose("ub", [f"v{i}" for i, yi in zip(idx, inst.y) if yi])
    b.expose("w", ["ua", "ub"])
    return b.stream()


def gen_perm_td(inst: PermInstance) -> Stream:
    """Vertex-arrival graph on ``2n + 1`` vertices; it has a triangle iff the queried bit is 1."""
    n, pi = inst.n, inst.pi
    inv = {p: i for i, p in enumerate(pi, start=1)}
    psi, gamma = inst.psi_gamma
    idx = range(1, n + 1)
    b = _Builder(Model.VA, [f"u{i}" for i in idx] + [f"v{i}" for i in idx] + ["w"])
    for i in idx:
        b.expose(f"u{i}")
    for i in idx:
        # edge (u_k, v_pi(k)) arrives when v_pi(k) is exposed
        b.expose(f"v{i}", [f"u{inv[i]}"])
    b.expose("w", [f"u{psi}"] + [f"v{i}" for i in idx if bit(i, gamma, n)])
    return b.stream()


def gen_disj_td(inst: DisjInstance) -> Stream:
    b = _Builder(Model.VA, _quad_labels(inst.n, 3))
    for i, xi in enumerate(inst.x, start=1):
        b.expose(f"u_{i}_1")
        b.expose(f"u_{i}_2", [f"u_{i}_1"] if xi else [])
    for i, yi in enumerate(inst.y, start=1):
        b.expose(f"u_{i}_3", [f"u_{i}_1", f"u_{i}_2"] if yi else [])
    return b.stream()


def gen_disj_td_vc(inst: DisjInstance) -> Stream:
    idx = range(1, inst.n + 1)
    b = _Builder(Model.VA, ["ua"] + [f"v{i}" for i in idx] + ["ub"])
    b.expose("ua")
    for i, xi in zip(idx, inst.x):
        b.expose(f"v{i}", ["ua"] if xi else [])
    b.expose("ub", ["ua"] + [f"v{i}" for i, yi in zip(idx, inst.y) if yi])
    return b.stream()


def gen_disj_cvd(inst: DisjInstance) -> Stream:
    """Vertex-arrival paths of length at most 2; an induced P3 appears iff ``x_i = y_i = 1``."""
    b = _Builder(Model.VA, _quad_labels(inst.n, 3))
    for i, xi in enumerate(inst.x, start=1):
        b.expose(f"u_{i}_1")
        b.expose(f"u_{i}_2", [f"u_{i}_1"] if xi else [])
    for i, yi in enumerate(inst.y, start=1):
        b.expose(f"u_{i}_3", [f"u_{i}_2"] if yi else [])
    return b.stream()


_OBSTRUCTIONS = {
    "C4": [(0, 1), (1, 2), (2, 3), (3, 0)],
    "triangle": [(0, 1), (1, 2), (0, 2)],
    "P3": [(0, 1), (1, 2)],
}


def pad_with_disjoint_obstructions(stream: Stream, k: int, kind: str) -> Stream:
    """Append ``k`` vertex-disjoint copies of a C4, triangle or P3 on fresh vertices."""
    if kind not in _OBSTRUCTIONS:
        raise ValueError(f"kind must be one of {sorted(_OBSTRUCTIONS)}")
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return stream
    model = Model(stream.model)
    if model not in (Model.VA, Model.AL):
        raise ValueError("padding supports vertex-exposure streams")
    edges = _OBSTRUCTIONS[kind]
    size = max(max(e) for e in edges) + 1
    events = list(stream.events)
    labels = list(stream.labels) if stream.labels else [str(v + 1) for v in range(stream.n)]
    base = stream.n
    for c in range(k):
        for a in range(size):
            nbrs = sorted({q for p, q in edges if p == a} | {p for p, q in edges if q == a})
            if model is Model.VA:
                nbrs = [q for q in nbrs if q < a]
            events.append(VertexExpose(base + a, tuple(base + q for q in nbrs)))
            labels.append(f"pad{c + 1}_{a + 1}")
        base += size
    out = Stream(model, base, tuple(events), tuple(labels))
    validate(out)
    return out


GENERATORS = {
    "perm-fvs": gen_perm_fvs,
    "disj-fvs": gen_disj_fvs,
    "disj-fvs-vc": gen_disj_fvs_vc,
    "perm-td": gen_perm_td,
    "disj-td": gen_disj_td,
    "disj-td-vc": gen_disj_td_vc,
    "disj-cvd": gen_disj_cvd,
}

PAD_KIND = {
    "perm-fvs": "C4",
    "disj-fvs": "C4",
    "disj-fvs-vc": "C4",
    "perm-td": "triangle",
    "disj-td": "triangle",
    "disj-td-vc": "triangle",
    "disj-cvd": "P3",
}
