"""Simple undirected graphs on vertices 0..n-1, plus graph6 and edge-list I/O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import Graph6Error, GraphError


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``edges`` holds pairs (u, v) with u < v.  ``labels`` are optional vertex
    annotations and do not take part in equality.
    """

    order: int
    edges: frozenset[tuple[int, int]] = frozenset()
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.order < 0:
            raise GraphError("order must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < v < self.order):
                raise GraphError(f"bad edge ({u}, {v}) for order {self.order}")
        if self.labels is not None and len(self.labels) != self.order:
            raise GraphError("one label per vertex expected")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.order)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency_matrix(self) -> list[list[int]]:
        a = [[0] * self.order for _ in range(self.order)]
        for u, v in self.edges:
            a[u][v] = a[v][u] = 1
        return a

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex i renamed perm[i]."""
        return Graph(self.order, frozenset((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in self.edges))

    def to_graph6(self) -> str:
        return emit_graph6(self)

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.sorted_edges()})"


def make_graph(n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None) -> Graph:
    """Build a graph from a vertex count and edge list; duplicates collapse."""
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    out = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for {n} vertices")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        out.add((min(u, v), max(u, v)))
    return Graph(n, frozenset(out), tuple(labels) if labels is not None else None)


def named_graph(family: str, k: int) -> Graph:
    """path(k), cycle(k), complete(k), empty(k), or star(k) = K_{1,k} centred at 0."""
    if family == "path":
        if k < 1:
            raise GraphError("path needs at least one vertex")
        return make_graph(k, [(i, i + 1) for i in range(k - 1)])
    if family == "cycle":
        if k < 3:
            raise GraphError("cycle needs at least three vertices")
        return make_graph(k, [(i, (i + 1) % k) for i in range(k)])
    if family == "complete":
        if k < 1:
            raise GraphError("complete graph needs at least one vertex")
        return make_graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])
    if family == "empty":
        if k < 1:
            raise GraphError("empty graph needs at least one vertex")
        return make_graph(k, [])
    if family == "star":
        if k < 1:
            raise GraphError("star needs at least one leaf")
        return make_graph(k + 1, [(0, i) for i in range(1, k + 1)])
    raise GraphError(f"unknown graph family {family!r}")


def path(k: int) -> Graph:
    return named_graph("path", k)


def cycle(k: int) -> Graph:
    return named_graph("cycle", k)


def complete(k: int) -> Graph:
    return named_graph("complete", k)


def star(k: int) -> Graph:
    return named_graph("star", k)


def empty(k: int) -> Graph:
    return named_graph("empty", k)


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    offset = 0
    edges = []
    for g in parts:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.order
    return Graph(offset, frozenset(edges))


def _bfs_order(g: Graph, start: int) -> dict[int, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    if g.order == 0:
        raise GraphError("connectivity of the empty graph is undefined")
    return len(_bfs_order(g, 0)) == g.order


def is_bipartite(g: Graph) -> bool:
    color: dict[int, int] = {}
    for s in range(g.order):
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def is_tree(g: Graph) -> bool:
    return g.order >= 1 and g.edge_count == g.order - 1 and is_connected(g)


def components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in range(g.order):
        if s not in seen:
            comp = sorted(_bfs_order(g, s))
            seen.update(comp)
            out.append(comp)
    return out


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    index = {v: i for i, v in enumerate(vertices)}
    return Graph(
        len(vertices),
        frozenset((min(index[u], index[v]), max(index[u], index[v])) for u, v in g.edges if u in index and v in index),
    )


# ---------------------------------------------------------------------------
# graph6

_G6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error(f"order {n} too large for graph6")


def emit_graph6(g: Graph) -> str:
    n = g.order
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in g.edges else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        body.append(chr(v + 63))
    return _encode_n(n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER) :]
    if not s:
        raise Graph6Error("empty graph6 string")
    vals = [ord(c) - 63 for c in s]
    if any(v < 0 or v > 63 for v in vals):
        raise Graph6Error(f"malformed graph6 string {text!r}")
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated graph6 order field")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated graph6 order field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    data = vals[pos:]
    if len(data) != need:
        raise Graph6Error(f"graph6 body has {len(data)} bytes, expected {need} for order {n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (data[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    # padding bits must be zero
    for k2 in range(nbits, need * 6):
        if (data[k2 // 6] >> (5 - k2 % 6)) & 1:
            raise Graph6Error("nonzero padding bits in graph6 string")
    return Graph(n, frozenset(edges))


# ---------------------------------------------------------------------------
# edge-list text: "n m" then m lines "u v"


def emit_edge_list(g: Graph) -> str:
    lines = [f"{g.order} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise GraphError("empty edge list")
    try:
        n, m = (int(t) for t in rows[0])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError("malformed edge list") from exc
    if len(edges) != m:
        raise GraphError(f"edge list header says {m} edges, found {len(edges)}")
    return make_graph(n, edges)


def read_graph(text: str) -> Graph:
    """Accept either a graph6 line or an edge list."""
    stripped = text.strip()
    if "\n" not in stripped and " " not in stripped:
        return parse_graph6(stripped)
    return parse_edge_list(text)
