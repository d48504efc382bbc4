"""Hashing and l0-sampling over dynamic item streams.

An :class:`L0Sampler` is a linear sketch: its state depends only on the net
count of every item, so inserts and deletes may arrive in any order.  It keeps
a one-sparse recovery cell per geometric subsampling level and answers a query
from the sparsest level that holds exactly one item.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .graph import Graph

MERSENNE_61 = (1 << 61) - 1
MERSENNE_127 = (1 << 127) - 1
HASH_BITS = 61




@dataclass(frozen=True)
class PairwiseHash:
    """``x -> ((a*x + b) mod p) mod m``, values in ``0..m-1``."""

    a: int
    b: int
    p: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("range size must be >= 1")
        if not (1 <= self.a < self.p and 0 <= self.b < self.p):
            raise ValueError("coefficients out of range")

    def __call__(self, x: int) -> int:
        return ((self.a * x + self.b) % self.p) % self.m

    def raw(self, x: int) -> int:
        return (self.a * x + self.b) % self.p


def sample_hash(seed: int, universe: int, m: int) -> PairwiseHash:
    """Draw a member of the ``ax+b`` family for keys in ``[0, universe)``."""
    if m < 1:
        raise ValueError("range size must be >= 1")
    if universe >= MERSENNE_127:
        raise ValueError("universe too large")
    p = MERSENNE_61 if universe < MERSENNE_61 else MERSENNE_127
    rng = random.Random(seed)
    return PairwiseHash(rng.randrange(1, p), rng.randrange(p), p, m)


def level_count(universe: int) -> int:
    """Highest subsampling level ``L``; levels are ``0..L``."""
    if universe <= 1:
        return 0
    return min(HASH_BITS, math.ceil(2 * math.log2(universe)))


class L0Sampler:
    """Uniform sample from the live (net positive) items of a dynamic stream.

    Each level ``j`` holds ``count``, ``id_sum`` and a fingerprint
    ``sum(delta * z**item) mod p`` over the items whose level hash has at
    least ``j`` leading zero bits.
    """

    WORDS_PER_LEVEL = 3
    SEED_WORDS = 3  # level hash (a, b) and the fingerprint base z

    def __init__(self, universe: int, seed: int, levels: int | None = None,
                 fingerprint_prime: int = MERSENNE_61):
        if universe < 1:
            raise ValueError("universe must be >= 1")
        self.universe = universe
        self.seed = seed
        self.levels = level_count(universe) if levels is None else levels
        self.prime = fingerprint_prime
        rng = random.Random(seed)
        self._a = rng.randrange(1, MERSENNE_61)
        self._b = rng.randrange(MERSENNE_61)
        self._z = rng.randrange(2, fingerprint_prime)
        size = self.levels + 1
        self.count = [0] * size
        self.id_sum = [0] * size
        self.check_sum = [0] * size

    @property
    def words(self) -> int:
        return (self.levels + 1) * self.WORDS_PER_LEVEL + self.SEED_WORDS

    def depth(self, item: int) -> int:
        v = (self._a * item + self._b) % MERSENNE_61
        return min(self.levels, HASH_BITS - v.bit_length())

    def update(self, item: int, delta: int = 1) -> None:
        if not 0 <= item < self.universe:
            raise ValueError(f"item {item} outside universe")
        term = delta * pow(self._z, item, self.prime)
        isum = delta * item
        p = self.prime
        for j in range(self.depth(item) + 1):
            self.count[j] += delta
            self.id_sum[j] += isum
            self.check_sum[j] = (self.check_sum[j] + term) % p

    def query(self) -> int | None:
        for j in range(self.levels, -1, -1):
            c = self.count[j]
            if c == 0:
                continue
            s = self.id_sum[j]
            if s % c:
                continue
            x = s // c
            if not 0 <= x < self.universe or self.depth(x) < j:
                continue
            if self.check_sum[j] != (c * pow(self._z, x, self.prime)) % self.prime:
                continue
            return x
        return None

    def is_empty(self) -> bool:
        return self.count[0] == 0 and self.id_sum[0] == 0 and self.check_sum[0] == 0

    def state(self) -> tuple:
        return (tuple(self.count), tuple(self.id_sum), tuple(self.check_sum))


class ExactSampler:
    """Shadow sampler with the :class:`L0Sampler` interface that stores the live set."""

    def __init__(self, universe: int, seed: int, **_):
        self.universe = universe
        self.seed = seed
        self.live: dict[int, int] = {}

    @property
    def words(self) -> int:
        return 2 * len(self.live) + 1

    def update(self, item: int, delta: int = 1) -> None:
        c = self.live.get(item, 0) + delta
        if c:
            self.live[item] = c
        else:
            self.live.pop(item, None)

    def query(self) -> int | None:
        items = sorted(x for x, c in self.live.items() if c > 0)
        if not items:
            return None
        return random.Random(self.seed).choice(items)

    def is_empty(self) -> bool:
        return not self.live

    def state(self) -> tuple:
        return tuple(sorted(self.live.items()))


def pair_index(r: int, s: int, m: int) -> int:
    """Index of the unordered label pair ``{r, s}`` among ``m(m+1)/2`` cells."""
    if r > s:
        r, s = s, r
    return r * m - r * (r - 1) // 2 + (s - r)


def encode_edge(u: int, v: int, n: int) -> int:
    if u > v:
        u, v = v, u
    return u * n + v


def decode_edge(e: int, n: int) -> tuple[int, int]:
    return divmod(e, n)


def hash_count(n: int, alpha: int) -> int:
    return alpha * max(1, math.ceil(math.log2(n))) if n > 1 else alpha


@dataclass
class SamplerGrid:
    """One l0-sampler per (hash, unordered label pair); samplers are built on first touch.

    Untouched cells are all-zero and answer ``None``, so allocating lazily does
    not change any query result.
    """

    n: int
    K: int
    alpha: int = 16
    beta: int = 10
    seed: int = 0
    exact: bool = False
    hashes: list[PairwiseHash] = field(init=False)
    cells: dict[tuple[int, int], L0Sampler | ExactSampler] = field(init=False)

    def __post_init__(self):
        if self.K < 1 or self.alpha < 1 or self.beta < 1:
            raise ValueError("K, alpha and beta must be >= 1")
        self.labels = self.beta * self.K
        rng = random.Random(self.seed)
        self.hashes = [
            sample_hash(rng.getrandbits(64), self.n, self.labels)
            for _ in range(hash_count(self.n, self.alpha))
        ]
        self._cell_seed = rng.getrandbits(64)
        self.universe = max(1, self.n * self.n)
        self.levels = level_count(self.universe)
        self.cells = {}
        self.peak_cells = 0

    @property
    def cells_per_hash(self) -> int:
        return self.labels * (self.labels + 1) // 2

    @property
    def total_cells(self) -> int:
        return len(self.hashes) * self.cells_per_hash

    @property
    def words_per_cell(self) -> int:
        return (self.levels + 1) * L0Sampler.WORDS_PER_LEVEL + L0Sampler.SEED_WORDS

    def space_words(self) -> int:
        """Words held by the full grid, every cell counted."""
        return 2 * len(self.hashes) + self.total_cells * self.words_per_cell

    def allocated_words(self) -> int:
        """Words of the hashes plus the cells actually materialised so far."""
        return 2 * len(self.hashes) + len(self.cells) * self.words_per_cell

    def cell_for(self, i: int, u: int, v: int) -> int:
        h = self.hashes[i]
        return pair_index(h(u), h(v), self.labels)

    def _sampler(self, i: int, c: int):
        key = (i, c)
        s = self.cells.get(key)
        if s is None:
            sub_seed = (self._cell_seed * 1_000_003 + i) * 10_000_019 + c
            cls = ExactSampler if self.exact else L0Sampler
            s = cls(self.universe, sub_seed, levels=self.levels)
            self.cells[key] = s
            self.peak_cells = max(self.peak_cells, len(self.cells))
        return s

    def feed(self, u: int, v: int, delta: int) -> None:
        if u == v:
            raise ValueError("self-loops are not edges")
        e = encode_edge(u, v, self.n)
        for i in range(len(self.hashes)):
            self._sampler(i, self.cell_for(i, u, v)).update(e, delta)

    def extract(self) -> tuple[Graph, int]:
        """Union of every cell's sample, and the number of non-empty cells that failed."""
        edges = set()
        failures = 0
        for key in sorted(self.cells):
            s = self.cells[key]
            x = s.query()
            if x is None:
                if not s.is_empty():
                    failures += 1
                continue
            edges.add(decode_edge(x, self.n))
        return Graph(self.n, edges), failures


def grid_space_words(n: int, K: int, alpha: int, beta: int) -> int:
    """Closed form of :meth:`SamplerGrid.space_words`."""
    hashes = hash_count(n, alpha)
    labels = beta * K
    cells = hashes * labels * (labels + 1) // 2
    per_cell = (level_count(max(1, n * n)) + 1) * L0Sampler.WORDS_PER_LEVEL + L0Sampler.SEED_WORDS
    return 2 * hashes + cells * per_cell
