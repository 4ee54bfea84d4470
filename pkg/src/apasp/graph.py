"""Directed graph with positive edge weights, plus the text formats for
graphs and decremental update traces.

Vertices are dense integer ids 0..n-1; a label table maps them back to the
names used in input files.  Graphs are immutable after construction except
through :func:`apply_weights`, which returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class GraphError(Exception):
    """Malformed graph file or invalid graph data."""


class UpdateError(Exception):
    """Invalid decremental update."""


class NonIncidentEdge(UpdateError):
    pass


class WeightDecrease(UpdateError):
    pass


class UnknownEdge(UpdateError):
    pass


# An edge is an ordered vertex pair.
Edge = tuple[int, int]

# Sentinel for edge deletion in an update's change map.
DELETE = "del"


@dataclass
class Graph:
    """Weighted digraph over dense vertex ids.

    ``weights`` maps (u, v) to a finite weight > 0.  ``out_adj`` / ``in_adj``
    list neighbours in insertion order and stay mutually consistent.
    """

    n: int
    labels: list[str]
    weights: dict[Edge, float] = field(default_factory=dict)
    out_adj: list[list[int]] = field(default_factory=list)
    in_adj: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.labels:
            self.labels = [str(i) for i in range(self.n)]
        if not self.out_adj:
            self.out_adj = [[] for _ in range(self.n)]
        if not self.in_adj:
            self.in_adj = [[] for _ in range(self.n)]
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def m(self) -> int:
        return len(self.weights)

    def vertex(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    def add_edge(self, u: int, v: int, w: float) -> None:
        if u == v:
            raise GraphError(f"self-loop on {self.labels[u]!r} rejected")
        if (u, v) in self.weights:
            raise GraphError(
                f"duplicate edge {self.labels[u]} -> {self.labels[v]}")
        if not (w > 0.0) or w != w or w == float("inf"):
            raise GraphError(
                f"edge {self.labels[u]} -> {self.labels[v]} has "
                f"non-positive or non-finite weight {w!r}")
        self.weights[(u, v)] = w
        self.out_adj[u].append(v)
        self.in_adj[v].append(u)

    def copy(self) -> "Graph":
        g = Graph(self.n, list(self.labels), dict(self.weights),
                  [list(a) for a in self.out_adj],
                  [list(a) for a in self.in_adj])
        return g


@dataclass
class UpdateOp:
    """One decremental update: new weights or deletions on edges incident
    to vertex ``v``."""

    v: int
    changes: dict[Edge, float | str] = field(default_factory=dict)


def _parse_weight(token: str, lineno: int) -> float:
    try:
        w = float(token)
    except ValueError:
        raise GraphError(f"line {lineno}: bad weight {token!r}") from None
    return w


def load_graph(text: str) -> Graph:
    """Parse a graph file.

    Format: optional header line ``vertices <n>``; then one edge per line,
    ``<src-label> <dst-label> <weight>``.  ``#`` starts a comment.
    Labels are mapped to dense ids in first-appearance order.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    declared_n: int | None = None
    edges: list[tuple[int, int, float, int]] = []

    def intern(label: str) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices":
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphError(f"line {lineno}: bad vertices header")
            declared_n = int(parts[1])
            continue
        if len(parts) != 3:
            raise GraphError(
                f"line {lineno}: expected '<src> <dst> <weight>', got {raw!r}")
        src, dst = intern(parts[0]), intern(parts[1])
        w = _parse_weight(parts[2], lineno)
        if not (w > 0.0):
            raise GraphError(f"line {lineno}: non-positive weight {parts[2]}")
        edges.append((src, dst, w, lineno))

    n = len(labels)
    if declared_n is not None:
        if declared_n < n:
            raise GraphError(
                f"vertices header says {declared_n} but {n} labels appear")
        for i in range(n, declared_n):
            intern(str(i))
        n = declared_n
    g = Graph(n, labels)
    for src, dst, w, lineno in edges:
        try:
            g.add_edge(src, dst, w)
        except GraphError as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
    return g


def serialize_graph(g: Graph) -> str:
    """Canonical text form; ``load_graph(serialize_graph(g))`` round-trips."""
    lines = [f"vertices {g.n}"]
    for u in range(g.n):
        for v in g.out_adj[u]:
            lines.append(
                f"{g.labels[u]} {g.labels[v]} {format_weight(g.weights[(u, v)])}")
    return "\n".join(lines) + "\n"


def format_weight(w: float) -> str:
    """Stable text rendering: integral weights print without a fraction."""
    if w == float("inf"):
        return "inf"
    if float(w).is_integer():
        return str(int(w))
    return repr(float(w))


def load_trace(text: str, g: Graph) -> list[UpdateOp]:
    """Parse an update trace: per line ``update <v> [<src> <dst> (<w>|del)]+``."""
    ops: list[UpdateOp] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "update" or len(parts) < 2:
            raise GraphError(f"line {lineno}: expected 'update <v> ...'")
        v = g.vertex(parts[1])
        rest = parts[2:]
        if len(rest) % 3 != 0:
            raise GraphError(
                f"line {lineno}: changes must come in (src, dst, weight) triplets")
        changes: dict[Edge, float | str] = {}
        for i in range(0, len(rest), 3):
            e = (g.vertex(rest[i]), g.vertex(rest[i + 1]))
            if rest[i + 2] == DELETE:
                changes[e] = DELETE
            else:
                changes[e] = _parse_weight(rest[i + 2], lineno)
        ops.append(UpdateOp(v, changes))
    return ops


def validate_update(g: Graph, op: UpdateOp) -> None:
    """Raise an UpdateError subclass unless ``op`` is a valid decremental
    update against ``g``."""
    for (u, w_), change in op.changes.items():
        if u != op.v and w_ != op.v:
            raise NonIncidentEdge(
                f"edge {g.labels[u]} -> {g.labels[w_]} is not incident on "
                f"{g.labels[op.v]}")
        if (u, w_) not in g.weights:
            raise UnknownEdge(f"edge {g.labels[u]} -> {g.labels[w_]} not in graph")
        if change != DELETE:
            assert isinstance(change, float)
            if change < g.weights[(u, w_)]:
                raise WeightDecrease(
                    f"edge {g.labels[u]} -> {g.labels[w_]}: new weight "
                    f"{change} < current {g.weights[(u, w_)]}")


def apply_weights(g: Graph, op: UpdateOp) -> Graph:
    """Return the updated graph; deleted edges vanish from both adjacency
    lists.  Assumes :func:`validate_update` passed."""
    g2 = g.copy()
    for e, change in op.changes.items():
        if change == DELETE:
            del g2.weights[e]
            g2.out_adj[e[0]].remove(e[1])
            g2.in_adj[e[1]].remove(e[0])
        else:
            g2.weights[e] = float(change)
    return g2
