"""Simple undirected graphs and the small-scale structure checks built on them.

Vertices are dense integer ids ``0..n-1``. A :class:`Graph` is immutable once
built; every operation that "changes" a graph returns a new one with the same
id space, so vertex ids stay stable across deletions.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class GraphFormatError(ValueError):
    """Raised when a graph text file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    __slots__ = ("n", "adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside [0, {n})")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self._edges: frozenset[tuple[int, int]] | None = None

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        if self._edges is None:
            self._edges = frozenset(
                (u, v) for u in range(self.n) for v in self.adj[u] if u < v
            )
        return self._edges

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def non_isolated(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if self.adj[v])

    def common_neighbors(self, vertices: Iterable[int]) -> frozenset[int]:
        it = iter(vertices)
        try:
            first = next(it)
        except StopIteration:
            return frozenset(range(self.n))
        out = set(self.adj[first])
        for v in it:
            out &= self.adj[v]
        return frozenset(out)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class GraphStats:
    max_degree: int
    avg_degree: float
    vc_size: int


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[tuple[int, int]]

    @property
    def matched_vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.pairs for v in e)

    def __len__(self) -> int:
        return len(self.pairs)


# -- constructors -----------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


def paw_graph() -> Graph:
    """Triangle 0-1-2 with a pendant vertex 3 on 0."""
    return Graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


def stats(g: Graph, vc_cap: int | None = None) -> GraphStats:
    vc = exact_min_vc(g, g.n if vc_cap is None else vc_cap)
    if vc is None:
        raise ValueError("vertex cover exceeds the requested cap")
    avg = 2 * g.m / g.n if g.n else 0.0
    return GraphStats(max_degree=g.max_degree(), avg_degree=avg, vc_size=vc)


# -- basic structure ----------------------------------------------------------

def delete_vertices(g: Graph, x: Iterable[int]) -> Graph:
    """Induced subgraph on ``V(g) - x``; deleted ids remain as isolated vertices."""
    gone = frozenset(x)
    if not gone:
        return g
    return Graph(g.n, ((u, v) for u, v in g.edges if u not in gone and v not in gone))


def find_induced_p3(g: Graph) -> tuple[int, int, int] | None:
    """Lexicographically least induced path ``(u, v, w)`` with centre ``v``.

    Ordered by centre first, then by the pair of ends.
    """
    for v in range(g.n):
        nbrs = sorted(g.adj[v])
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1:]:
                if w not in g.adj[u]:
                    return (u, v, w)
    return None


def is_cluster_graph(g: Graph) -> bool:
    return find_induced_p3(g) is None


def greedy_maximal_matching(g: Graph, edge_order: Sequence[tuple[int, int]] | None = None) -> Matching:
    if edge_order is None:
        edge_order = g.sorted_edges()
    matched: set[int] = set()
    pairs = set()
    for u, v in edge_order:
        if u in matched or v in matched:
            continue
        matched.update((u, v))
        pairs.add(_norm(u, v))
    return Matching(frozenset(pairs))


def is_maximal_matching(g: Graph, matching: Matching) -> bool:
    seen: set[int] = set()
    for u, v in matching.pairs:
        if not g.has_edge(u, v) or u in seen or v in seen:
            return False
        seen.update((u, v))
    return all(u in seen or v in seen for u, v in g.edges)


def exact_min_vc(g: Graph, cap: int) -> int | None:
    """Minimum vertex cover size if it is at most ``cap``, else ``None``."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    adj = [set(a) for a in g.adj]
    for budget in range(cap + 1):
        if _vc_within(adj, budget):
            return budget
    return None


def _vc_within(adj: list[set[int]], k: int) -> bool:
    v = max(range(len(adj)), key=lambda i: len(adj[i]), default=None)
    if v is None or not adj[v]:
        return True
    if k == 0:
        return False
    deg = len(adj[v])
    if deg == 1:
        # a leaf edge: taking the other endpoint is never worse
        (u,) = adj[v]
        return _vc_within(_without(adj, [u]), k - 1)
    if _vc_within(_without(adj, [v]), k - 1):
        return True
    return deg <= k and _vc_within(_without(adj, adj[v]), k - deg)


def _without(adj: list[set[int]], vs: Iterable[int]) -> list[set[int]]:
    vs = set(vs)
    return [set() if i in vs else a - vs for i, a in enumerate(adj)]


# -- subgraph embeddings ------------------------------------------------------

def _search_order(f: Graph) -> list[int]:
    order: list[int] = []
    placed: set[int] = set()
    remaining = set(range(f.n))
    while remaining:
        # prefer vertices with many placed neighbours, then high degree
        v = max(
            sorted(remaining),
            key=lambda x: (len(f.adj[x] & placed), f.degree(x)),
        )
        order.append(v)
        placed.add(v)
        remaining.discard(v)
    return order


def iter_subgraph_embeddings(g: Graph, f: Graph) -> Iterator[dict[int, int]]:
    """Yield every injective map ``V(f) -> V(g)`` carrying edges onto edges."""
    if f.n > g.n:
        return
    order = _search_order(f)
    prior = [[w for w in order[:i] if w in f.adj[v]] for i, v in enumerate(order)]
    fdeg = [f.degree(v) for v in range(f.n)]
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> Iterator[dict[int, int]]:
        if i == len(order):
            yield dict(mapping)
            return
        v = order[i]
        if prior[i]:
            cands = set(g.adj[mapping[prior[i][0]]])
            for w in prior[i][1:]:
                cands &= g.adj[mapping[w]]
            cands = sorted(cands)
        else:
            cands = range(g.n)
        for x in cands:
            if x in used or g.degree(x) < fdeg[v]:
                continue
            mapping[v] = x
            used.add(x)
            yield from extend(i + 1)
            used.discard(x)
            del mapping[v]

    yield from extend(0)


def find_subgraph(g: Graph, f: Graph) -> dict[int, int] | None:
    return next(iter_subgraph_embeddings(g, f), None)


def contains_subgraph(g: Graph, f: Graph) -> bool:
    return find_subgraph(g, f) is not None


def subgraph_copy_sets(g: Graph, f: Graph) -> set[frozenset[int]]:
    """Vertex sets of all copies of ``f`` in ``g``."""
    return {frozenset(m.values()) for m in iter_subgraph_embeddings(g, f)}


# -- minors -------------------------------------------------------------------

def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _biconnected_blocks(n: int, adj: list[int]) -> list[int]:
    """Vertex masks of the blocks (biconnected components) of a bitmask graph."""
    disc = [-1] * n
    low = [0] * n
    blocks: list[int] = []
    stack: list[tuple[int, int]] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        work = [(root, -1, list(_bits(adj[root])))]
        while work:
            v, parent, todo = work[-1]
            if todo:
                w = todo.pop()
                if disc[w] == -1:
                    stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    work.append((w, v, list(_bits(adj[w]))))
                elif w != parent and disc[w] < disc[v]:
                    stack.append((v, w))
                    low[v] = min(low[v], disc[w])
                continue
            work.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                mask = 0
                while True:
                    a, b = stack.pop()
                    mask |= (1 << a) | (1 << b)
                    if (a, b) == (parent, v):
                        break
                blocks.append(mask)
    return blocks


class _Reduced:
    """Bitmask graph on a subset of original vertices with contraction groups."""

    def __init__(self, verts: list[int], g: Graph):
        index = {v: i for i, v in enumerate(verts)}
        self.groups = [frozenset([v]) for v in verts]
        self.adj = [0] * len(verts)
        for i, v in enumerate(verts):
            for w in g.adj[v]:
                j = index.get(w)
                if j is not None:
                    self.adj[i] |= 1 << j
        self.alive = (1 << len(verts)) - 1

    def degree(self, i: int) -> int:
        return bin(self.adj[i] & self.alive).count("1")

    def remove(self, i: int) -> None:
        self.alive &= ~(1 << i)
        for j in _bits(self.adj[i]):
            self.adj[j] &= ~(1 << i)
        self.adj[i] = 0

    def contract_into(self, i: int, j: int) -> None:
        """Merge vertex ``i`` into its neighbour ``j``."""
        nbrs = self.adj[i] & ~(1 << j)
        self.remove(i)
        for t in _bits(nbrs):
            self.adj[t] |= 1 << j
        self.adj[j] |= nbrs
        self.groups[j] = self.groups[j] | self.groups[i]

    def reduce(self, min_deg: int) -> None:
        changed = True
        while changed:
            changed = False
            for i in _bits(self.alive):
                if not (self.alive >> i) & 1:
                    continue
                d = self.degree(i)
                if d < min(min_deg, 2):
                    self.remove(i)
                    changed = True
                elif d == 2 and min_deg >= 3:
                    j = (self.adj[i] & -self.adj[i]).bit_length() - 1
                    self.contract_into(i, j)
                    changed = True


def _connected_sets(adj: list[int], anchor: int, allowed: int) -> Iterator[int]:
    """Each connected vertex set inside ``allowed`` that contains ``anchor``, once."""

    def grow(current: int, ext: int, banned: int) -> Iterator[int]:
        yield current
        while ext:
            low = ext & -ext
            ext ^= low
            v = low.bit_length() - 1
            nxt = (ext | adj[v]) & allowed & ~current & ~banned & ~low
            yield from grow(current | low, nxt, banned)
            banned |= low

    yield from grow(1 << anchor, adj[anchor] & allowed & ~(1 << anchor), 0)


def _model_search(adj: list[int], alive: int, f: Graph) -> list[int] | None:
    order = _search_order(f)
    pos = {v: i for i, v in enumerate(order)}
    req = [[pos[w] for w in f.adj[v] if pos[w] < i] for i, v in enumerate(order)]
    later = [
        [j for j in range(i + 1, len(order)) if any(r <= i for r in req[j])]
        for i in range(len(order))
    ]
    p = len(order)
    sets: list[int] = [0] * p

    def nbhd(mask: int) -> int:
        out = 0
        for v in _bits(mask):
            out |= adj[v]
        return out & ~mask

    def place(i: int, avail: int) -> bool:
        if i == p:
            return True
        if bin(avail).count("1") < p - i:
            return False
        if req[i]:
            touch = [nbhd(sets[r]) & avail for r in req[i]]
            if not all(touch):
                return False
            anchors = touch[0]
        else:
            anchors = avail
        banned_anchors = 0
        for a in _bits(anchors):
            allowed = avail & ~banned_anchors
            banned_anchors |= 1 << a
            for cand in _connected_sets(adj, a, allowed):
                if req[i] and not all(cand & t for t in touch[1:]):
                    continue
                rest = avail & ~cand
                sets[i] = cand
                ok = True
                for j in later[i]:
                    for r in req[j]:
                        if r <= i and not (nbhd(sets[r]) & rest):
                            ok = False
                            break
                    if not ok:
                        break
                if ok and place(i + 1, rest):
                    return True
        sets[i] = 0
        return False

    if place(0, alive):
        return [sets[pos[v]] for v in range(f.n)]
    return None


def find_minor_model(g: Graph, f: Graph) -> list[frozenset[int]] | None:
    """Branch sets (one per vertex of connected ``f``) of a minor model in ``g``.

    Returns ``None`` if ``f`` is not a minor of ``g``. Exponential, intended for
    desk-scale graphs only.
    """
    if f.n == 0:
        return []
    if not f.is_connected():
        raise ValueError("minor search expects a connected pattern graph")
    fmin = min(f.degree(v) for v in range(f.n))
    two_connected = f.n >= 3 and len(_biconnected_blocks(f.n, _masks(f))) == 1
    pieces: list[list[int]] = []
    for comp in g.components():
        if len(comp) < f.n:
            continue
        if two_connected:
            sub = _Reduced(comp, g)
            for block in _biconnected_blocks(len(comp), sub.adj):
                verts = [comp[i] for i in _bits(block)]
                if len(verts) >= f.n:
                    pieces.append(verts)
        else:
            pieces.append(comp)
    for verts in pieces:
        red = _Reduced(verts, g)
        red.reduce(fmin)
        if bin(red.alive).count("1") < f.n:
            continue
        found = _model_search(red.adj, red.alive, f)
        if found is not None:
            return [
                frozenset().union(*(red.groups[i] for i in _bits(mask)))
                for mask in found
            ]
    return None


def _masks(g: Graph) -> list[int]:
    out = []
    for a in g.adj:
        m = 0
        for v in a:
            m |= 1 << v
        out.append(m)
    return out


def contains_minor(g: Graph, f: Graph) -> bool:
    return find_minor_model(g, f) is not None


def is_minor_model(g: Graph, f: Graph, model: Sequence[Iterable[int]]) -> bool:
    sets = [frozenset(s) for s in model]
    if len(sets) != f.n or any(not s for s in sets):
        return False
    seen: set[int] = set()
    for s in sets:
        if seen & s:
            return False
        seen |= s
        sub = Graph(g.n, ((u, v) for u, v in g.edges if u in s and v in s))
        start = next(iter(s))
        comp = next(c for c in sub.components() if start in c)
        if set(comp) != s:
            return False
    for a, b in f.edges:
        if not any(g.adj[v] & sets[b] for v in sets[a]):
            return False
    return True


# -- text format ----------------------------------------------------------------

def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def _data_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_graphs(text: str) -> list[Graph]:
    """Parse one or more concatenated graph blocks."""
    graphs = []
    lines = list(_data_lines(text))
    i = 0
    while i < len(lines):
        lineno, head = lines[i]
        if len(head) != 2:
            raise GraphFormatError("expected header 'n m'", lineno)
        try:
            n, m = int(head[0]), int(head[1])
        except ValueError:
            raise GraphFormatError("header values must be integers", lineno) from None
        if m > len(lines) - i - 1:
            raise GraphFormatError(f"expected {m} edge lines", lineno)
        edges = []
        for lineno, parts in lines[i + 1:i + 1 + m]:
            if len(parts) != 2:
                raise GraphFormatError("expected edge 'u v'", lineno)
            try:
                u, v = int(parts[0]) - 1, int(parts[1]) - 1
            except ValueError:
                raise GraphFormatError("edge endpoints must be integers", lineno) from None
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise GraphFormatError(f"invalid edge {parts[0]} {parts[1]}", lineno)
            edges.append((u, v))
        graphs.append(Graph(n, edges))
        i += 1 + m
    return graphs


def parse_graph(text: str) -> Graph:
    graphs = parse_graphs(text)
    if len(graphs) != 1:
        raise GraphFormatError(f"expected exactly one graph, found {len(graphs)}")
    return graphs[0]


def read_graph(path: str) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def read_graphs(path: str) -> list[Graph]:
    with open(path) as fh:
        return parse_graphs(fh.read())


def write_graph(g: Graph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g))
