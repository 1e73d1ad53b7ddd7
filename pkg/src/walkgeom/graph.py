"""Weighted undirected graphs: construction, edge-list I/O and generators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_NODES = 4096


class GraphError(ValueError):
    """Invalid graph data."""


class ParseError(GraphError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class IsolatedVertexError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Symmetric non-negative affinity matrix over dense node ids ``0..n-1``.

    ``labels`` is an optional side table mapping ids back to the names used
    in the input file.
    """

    weights: np.ndarray
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise GraphError(f"weights must be a square matrix, got shape {w.shape}")
        n = w.shape[0]
        if n == 0:
            raise GraphError("graph has no nodes")
        if n > MAX_NODES:
            raise GraphError(f"{n} nodes exceeds the dense limit of {MAX_NODES}")
        if not np.all(np.isfinite(w)):
            raise GraphError("weights must be finite")
        if np.any(w < 0):
            raise GraphError("weights must be non-negative")
        if np.any(np.diag(w) != 0):
            raise GraphError("self-loops are not allowed")
        if not np.array_equal(w, w.T):
            raise GraphError("weights must be symmetric")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n:
                raise GraphError(f"{len(labels)} labels for {n} nodes")
            if len(set(labels)) != n:
                raise GraphError("node labels must be unique")
            object.__setattr__(self, "labels", labels)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(np.triu(self.weights, 1)))

    def edges(self) -> list[tuple[int, int, float]]:
        """Edges ``(u, v, w)`` with ``u < v``, sorted."""
        u, v = np.nonzero(np.triu(self.weights, 1))
        return [(int(a), int(b), float(self.weights[a, b])) for a, b in zip(u, v)]

    def label(self, node: int) -> str:
        return self.labels[node] if self.labels is not None else str(node)

    def node_labels(self) -> list[str]:
        return [self.label(i) for i in range(self.n)]

    def index(self, label: str | int) -> int:
        """Resolve an external label (or a bare id) to the dense node id."""
        key = str(label)
        if self.labels is not None:
            try:
                return self.labels.index(key)
            except ValueError:
                raise GraphError(f"unknown node {key!r}") from None
        try:
            i = int(key)
        except ValueError:
            raise GraphError(f"unknown node {key!r}") from None
        if not 0 <= i < self.n:
            raise GraphError(f"node {i} out of range 0..{self.n - 1}")
        return i

    @property
    def volume(self) -> float:
        return float(weighted_degrees(self).sum())


def from_edges(
    n: int, edges: Iterable[tuple[int, int] | tuple[int, int, float]], labels: Sequence[str] | None = None
) -> Graph:
    w = np.zeros((n, n))
    for e in edges:
        u, v = int(e[0]), int(e[1])
        wt = float(e[2]) if len(e) > 2 else 1.0
        if u == v:
            raise GraphError(f"self-loop at node {u}")
        w[u, v] += wt
        w[v, u] += wt
    return Graph(w, tuple(labels) if labels is not None else None)


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v [w]`` lines; ``#`` starts a comment, duplicates are summed.

    Labels are interned in order of first appearance, except when every
    label is a non-negative integer, in which case they are ordered
    numerically so that ``0..n-1`` inputs keep their ids.
    """
    triples: list[tuple[str, str, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise ParseError(f"expected 'u v [w]', got {raw.strip()!r}", lineno)
        u, v = tokens[0], tokens[1]
        if u == v:
            raise ParseError(f"self-loop at node {u!r}", lineno)
        wt = 1.0
        if len(tokens) == 3:
            try:
                wt = float(tokens[2])
            except ValueError:
                raise ParseError(f"bad weight {tokens[2]!r}", lineno) from None
            if not np.isfinite(wt):
                raise ParseError(f"non-finite weight {tokens[2]!r}", lineno)
            if wt < 0:
                raise ParseError(f"negative weight {wt!r}", lineno)
        triples.append((u, v, wt))
    if not triples:
        raise ParseError("empty edge list")

    order: dict[str, int] = {}
    for u, v, _ in triples:
        order.setdefault(u, len(order))
        order.setdefault(v, len(order))
    names = list(order)
    if all(s.isdigit() for s in names):
        names.sort(key=int)
    ids = {s: i for i, s in enumerate(names)}
    if len(names) > MAX_NODES:
        raise GraphError(f"{len(names)} nodes exceeds the dense limit of {MAX_NODES}")
    return from_edges(len(names), ((ids[u], ids[v], wt) for u, v, wt in triples), names)


def read_edge_list(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _format_weight(w: float) -> str:
    s = repr(float(w))
    return s[:-2] if s.endswith(".0") else s


def serialize_edge_list(g: Graph) -> str:
    lines = [f"{g.label(u)} {g.label(v)} {_format_weight(w)}" for u, v, w in g.edges()]
    return "\n".join(lines) + "\n"


def path_graph(n: int) -> Graph:
    if n < 2:
        raise GraphError("path needs at least 2 nodes")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        # a 2-cycle would be a doubled edge
        raise GraphError("cycle needs at least 3 nodes")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise GraphError("complete graph needs at least 2 nodes")
    w = np.ones((n, n)) - np.eye(n)
    return Graph(w)


def lattice2d(rows: int, cols: int) -> Graph:
    """4-neighbour grid with open boundary; node id is ``r * cols + c``."""
    if rows < 2 or cols < 2:
        raise GraphError("lattice needs at least 2 rows and 2 columns")
    edges = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                edges.append((i, i + 1))
            if r + 1 < rows:
                edges.append((i, i + cols))
    return from_edges(rows * cols, edges)


def random_connected(n: int, p: float, seed: int, weighted: bool = False) -> Graph:
    """Erdos-Renyi G(n, p), resampled until connected.

    With ``weighted`` the edge weights are drawn uniformly from [0.5, 2).
    """
    if n < 2:
        raise GraphError("random graph needs at least 2 nodes")
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        mask = np.triu(rng.random((n, n)) < p, 1)
        w = mask * (rng.uniform(0.5, 2.0, (n, n)) if weighted else 1.0)
        w = w + w.T
        g = Graph(w)
        if is_connected(g):
            return g
    raise GraphError(f"could not draw a connected G({n}, {p})")


GENERATORS = {"path": path_graph, "cycle": cycle_graph, "complete": complete_graph, "lattice2d": lattice2d}


def generate(kind: str, *sizes: int) -> Graph:
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise GraphError(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}") from None
    want = 2 if kind == "lattice2d" else 1
    if len(sizes) != want:
        raise GraphError(f"{kind} takes {want} size argument(s), got {len(sizes)}")
    return fn(*(int(s) for s in sizes))


def is_connected(g: Graph) -> bool:
    adj = g.weights > 0
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in np.flatnonzero(adj[x] & ~seen):
            seen[y] = True
            queue.append(int(y))
    return bool(seen.all())


def weighted_degrees(g: Graph) -> np.ndarray:
    deg = g.weights.sum(axis=1)
    isolated = np.flatnonzero(deg <= 0)
    if isolated.size:
        names = ", ".join(g.label(int(i)) for i in isolated[:5])
        raise IsolatedVertexError(f"isolated vertex: {names}")
    return deg


def volume(g: Graph) -> float:
    return float(weighted_degrees(g).sum())


def require_connected(g: Graph) -> None:
    weighted_degrees(g)
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")
