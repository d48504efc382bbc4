"""Graph streams in the four arrival models and their text wire format.

Models:

* ``EA``  - edge arrival: each edge arrives once.
* ``DEA`` - dynamic edge arrival: edges are inserted and deleted.
* ``VA``  - vertex arrival: a vertex is exposed with its edges to vertices
  exposed before it.
* ``AL``  - adjacency list: a vertex is exposed with *all* its edges, so every
  edge is seen twice, once from each endpoint.

Wire format, one event per line after a two line header (ids are 1-based)::

    model DEA
    n 5
    + 1 2
    - 1 2
    e 1 2            (EA)
    x 3 : 1 2        (VA / AL exposure of 3)
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

from .graph import Graph


class Model(str, enum.Enum):
    EA = "EA"
    DEA = "DEA"
    VA = "VA"
    AL = "AL"


@dataclass(frozen=True)
class EdgeInsert:
    u: int
    v: int


@dataclass(frozen=True)
class EdgeDelete:
    u: int
    v: int


@dataclass(frozen=True)
class EdgeArrive:
    u: int
    v: int


@dataclass(frozen=True)
class VertexExpose:
    """Exposure of ``v`` together with the other endpoints of its revealed edges."""

    v: int
    neighbors: tuple[int, ...] = ()

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(self.v, x) for x in self.neighbors]


StreamEvent = Union[EdgeInsert, EdgeDelete, EdgeArrive, VertexExpose]

_ALLOWED = {
    Model.EA: (EdgeArrive,),
    Model.DEA: (EdgeInsert, EdgeDelete),
    Model.VA: (VertexExpose,),
    Model.AL: (VertexExpose,),
}


class StreamError(ValueError):
    """A stream violates its model; ``index`` is the offending event (0-based)."""

    def __init__(self, message: str, index: int | None = None, line: int | None = None):
        self.index = index
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if index is not None:
            where.append(f"event {index}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class Stream:
    model: Model
    n: int
    events: tuple[StreamEvent, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __iter__(self) -> Iterator[StreamEvent]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def validate(stream: Stream) -> None:
    """Raise :class:`StreamError` at the first event violating the model."""
    model, n = Model(stream.model), stream.n
    allowed = _ALLOWED[model]

    def check_pair(i: int, u: int, v: int) -> None:
        if u == v:
            raise StreamError(f"self-loop on vertex {u + 1}", i)
        if not (0 <= u < n and 0 <= v < n):
            raise StreamError(f"vertex out of range in ({u + 1}, {v + 1})", i)

    if model in (Model.EA, Model.DEA):
        live: set[tuple[int, int]] = set()
        for i, ev in enumerate(stream.events):
            if not isinstance(ev, allowed):
                raise StreamError(f"{type(ev).__name__} not allowed in {model.value}", i)
            check_pair(i, ev.u, ev.v)
            e = _key(ev.u, ev.v)
            if isinstance(ev, EdgeDelete):
                if e not in live:
                    raise StreamError(f"delete of non-live edge ({ev.u + 1}, {ev.v + 1})", i)
                live.discard(e)
            else:
                if e in live:
                    raise StreamError(f"duplicate edge ({ev.u + 1}, {ev.v + 1})", i)
                live.add(e)
        return

    exposed: set[int] = set()
    # AL: edge -> index of the exposure that listed it first, and the edges
    # each unexposed vertex still owes
    pending: dict[tuple[int, int], int] = {}
    owed: dict[int, set[int]] = {}
    done: set[tuple[int, int]] = set()
    for i, ev in enumerate(stream.events):
        if not isinstance(ev, allowed):
            raise StreamError(f"{type(ev).__name__} not allowed in {model.value}", i)
        if not 0 <= ev.v < n:
            raise StreamError(f"vertex {ev.v + 1} out of range", i)
        if ev.v in exposed:
            raise StreamError(f"vertex {ev.v + 1} exposed twice", i)
        if len(set(ev.neighbors)) != len(ev.neighbors):
            raise StreamError(f"repeated edge in exposure of {ev.v + 1}", i)
        for x in ev.neighbors:
            check_pair(i, ev.v, x)
            e = _key(ev.v, x)
            if model is Model.VA:
                if x not in exposed:
                    raise StreamError(
                        f"edge ({ev.v + 1}, {x + 1}) joins an unexposed vertex", i
                    )
                if e in done:
                    raise StreamError(f"duplicate edge ({ev.v + 1}, {x + 1})", i)
                done.add(e)
            else:
                if e in done:
                    raise StreamError(f"edge ({ev.v + 1}, {x + 1}) seen more than twice", i)
                if e in pending:
                    del pending[e]
                    owed[ev.v].discard(x)
                    done.add(e)
                elif x in exposed:
                    raise StreamError(
                        f"edge ({ev.v + 1}, {x + 1}) missing from the exposure of {x + 1}", i
                    )
                else:
                    pending[e] = i
                    owed.setdefault(x, set()).add(ev.v)
        if model is Model.AL and owed.get(ev.v):
            x = min(owed[ev.v])
            raise StreamError(f"edge ({x + 1}, {ev.v + 1}) missing from the exposure of {ev.v + 1}", i)
        exposed.add(ev.v)
    if pending:
        (u, v), i = min(pending.items(), key=lambda kv: kv[1])
        raise StreamError(f"edge ({u + 1}, {v + 1}) listed at only one endpoint", i)


def is_valid(stream: Stream) -> bool:
    try:
        validate(stream)
    except StreamError:
        return False
    return True


def edge_updates(stream: Stream) -> Iterator[tuple[int, int, int]]:
    """Flatten any stream into ``(u, v, delta)`` edge updates.

    AL edges are emitted once, from the exposure of their smaller endpoint, so
    no memory is needed to de-duplicate them.
    """
    model = Model(stream.model)
    for ev in stream.events:
        if isinstance(ev, EdgeDelete):
            yield ev.u, ev.v, -1
        elif isinstance(ev, (EdgeInsert, EdgeArrive)):
            yield ev.u, ev.v, 1
        else:
            for x in ev.neighbors:
                if model is Model.VA or ev.v < x:
                    yield ev.v, x, 1


def replay(stream: Stream) -> Graph:
    """The final live graph of a valid stream."""
    validate(stream)
    live: set[tuple[int, int]] = set()
    for u, v, delta in edge_updates(stream):
        if delta > 0:
            live.add(_key(u, v))
        else:
            live.discard(_key(u, v))
    return Graph(stream.n, live)


def graph_to_stream(
    g: Graph,
    model: Model | str,
    vertex_order: Sequence[int] | None = None,
    edge_order_seed: int = 0,
) -> Stream:
    """A stream of ``model`` whose final graph is ``g``.

    ``vertex_order`` fixes the exposure order for VA/AL and the coarse edge
    order for EA/DEA (edges grouped by their later endpoint); the order of
    edges inside each exposure or group is a shuffle seeded by
    ``edge_order_seed``.
    """
    model = Model(model)
    order = list(range(g.n)) if vertex_order is None else list(vertex_order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("vertex_order must be a permutation of the vertices")
    rng = random.Random(edge_order_seed)
    rank = {v: i for i, v in enumerate(order)}
    events: list[StreamEvent] = []
    for v in order:
        if model is Model.AL:
            nbrs = sorted(g.adj[v])
        else:
            nbrs = sorted(x for x in g.adj[v] if rank[x] < rank[v])
        rng.shuffle(nbrs)
        if model in (Model.VA, Model.AL):
            events.append(VertexExpose(v, tuple(nbrs)))
        elif model is Model.EA:
            events.extend(EdgeArrive(x, v) for x in nbrs)
        else:
            events.extend(EdgeInsert(x, v) for x in nbrs)
    return Stream(model, g.n, tuple(events))


def churn(stream: Stream, extra_edges: Sequence[tuple[int, int]], seed: int = 0) -> Stream:
    """Interleave insert/delete pairs of ``extra_edges`` into a DEA stream.

    The final graph is unchanged; every extra edge must be absent from it.
    """
    if Model(stream.model) is not Model.DEA:
        raise ValueError("churn applies to DEA streams only")
    rng = random.Random(seed)
    events = list(stream.events)
    final = {_key(ev.u, ev.v) for ev in events if isinstance(ev, EdgeInsert)}
    for u, v in extra_edges:
        if _key(u, v) in final:
            raise ValueError(f"edge ({u}, {v}) is part of the final graph")
        i = rng.randint(0, len(events))
        j = rng.randint(i, len(events))
        events.insert(j, EdgeDelete(u, v))
        events.insert(i, EdgeInsert(u, v))
    return Stream(Model.DEA, stream.n, tuple(events), stream.labels)


def ea_projection(stream: Stream) -> Stream:
    """EA view of a DEA stream that never deletes."""
    events = []
    for i, ev in enumerate(stream.events):
        if not isinstance(ev, EdgeInsert):
            raise StreamError("EA projection needs an insert-only stream", i)
        events.append(EdgeArrive(ev.u, ev.v))
    return Stream(Model.EA, stream.n, tuple(events), stream.labels)


# -- text format ----------------------------------------------------------------

def format_event(ev: StreamEvent) -> str:
    if isinstance(ev, EdgeInsert):
        return f"+ {ev.u + 1} {ev.v + 1}"
    if isinstance(ev, EdgeDelete):
        return f"- {ev.u + 1} {ev.v + 1}"
    if isinstance(ev, EdgeArrive):
        return f"e {ev.u + 1} {ev.v + 1}"
    tail = " ".join(str(x + 1) for x in ev.neighbors)
    return f"x {ev.v + 1} :" + (f" {tail}" if tail else "")


def format_stream(stream: Stream) -> str:
    lines = [f"model {Model(stream.model).value}", f"n {stream.n}"]
    lines.extend(format_event(ev) for ev in stream.events)
    return "\n".join(lines) + "\n"


def _check_ids(ids, n: int, lineno: int) -> None:
    for v in ids:
        if not 0 <= v < n:
            raise StreamError(f"vertex {v + 1} outside 1..{n}", line=lineno)


def parse_stream(text: str) -> Stream:
    model: Model | None = None
    n: int | None = None
    events: list[StreamEvent] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        try:
            if tag == "model":
                model = Model(parts[1])
                continue
            if tag == "n":
                n = int(parts[1])
                continue
            if model is None or n is None:
                raise StreamError("header 'model' and 'n' must precede events", line=lineno)
            if tag in ("+", "-", "e"):
                if len(parts) != 3:
                    raise StreamError("expected '<tag> u v'", line=lineno)
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
                _check_ids((u, v), n, lineno)
                cls = {"+": EdgeInsert, "-": EdgeDelete, "e": EdgeArrive}[tag]
                events.append(cls(u, v))
            elif tag == "x":
                if len(parts) < 3 or parts[2] != ":":
                    raise StreamError("expected 'x v : u1 u2 ...'", line=lineno)
                v, nbrs = int(parts[1]) - 1, tuple(int(t) - 1 for t in parts[3:])
                _check_ids((v,) + nbrs, n, lineno)
                events.append(VertexExpose(v, nbrs))
            else:
                raise StreamError(f"unknown event tag {tag!r}", line=lineno)
        except (ValueError, IndexError) as exc:
            if isinstance(exc, StreamError):
                raise
            raise StreamError(f"cannot parse {line!r}", line=lineno) from None
    if model is None or n is None:
        raise StreamError("missing 'model' or 'n' header")
    return Stream(model, n, tuple(events))


def read_stream(path: str) -> Stream:
    with open(path) as fh:
        return parse_stream(fh.read())


def write_stream(stream: Stream, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_stream(stream))
