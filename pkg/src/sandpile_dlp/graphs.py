"""Graph families with their Laplacians and spanning-tree counts.

Three families are built here:

* ``square_cycle(n)`` -- the square of the cycle, vertex ``i`` adjacent to
  ``i +- 1`` and ``i +- 2`` (mod n), vertices ``0..n-1``, sink 0.
* ``wheel(n)`` -- hub 0 joined to every vertex of the rim cycle ``1..n``,
  sink 0.
* ``banana_subdivided(s)`` -- hubs ``v0 = 0`` and ``v1 = 1`` joined by
  ``len(s)`` paths, path ``i`` having ``s[i]`` edges.  Subdivision vertices
  are numbered branch by branch starting from the ``v0`` end; sink 1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from sandpile_dlp.exactmath.linalg import bareiss_det

Matrix = list[list[int]]


class GraphError(ValueError):
    """Invalid graph parameters or an unusable graph."""


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph on vertices ``0..vertex_count-1``.

    ``edges`` holds ``(u, v, multiplicity)`` with ``u < v``, sorted.  Instances
    are hashable so expensive derived data (pseudoinverse, SNF) can be cached
    per graph.
    """

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]
    sink: int = 0
    family: str | None = None
    params: tuple[int, ...] = ()
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise GraphError("graph needs at least one vertex")
        merged: Counter[tuple[int, int]] = Counter()
        for u, v, mult in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge ({u}, {v}) out of range")
            if mult < 1:
                raise GraphError(f"edge ({u}, {v}) has multiplicity {mult}")
            merged[(min(u, v), max(u, v))] += mult
        object.__setattr__(
            self, "edges", tuple(sorted((u, v, m) for (u, v), m in merged.items()))
        )
        if not self.labels:
            object.__setattr__(
                self, "labels", tuple(str(i) for i in range(self.vertex_count))
            )
        if not 0 <= self.sink < self.vertex_count:
            raise GraphError(f"sink {self.sink} is not a vertex")
        if not self._connected():
            raise GraphError("graph is not connected")

    @classmethod
    def from_edges(cls, vertex_count: int, edges, sink: int = 0) -> Graph:
        """Build from ``(u, v)`` or ``(u, v, mult)`` items; repeats add up."""
        triples = []
        for e in edges:
            u, v, *rest = e
            triples.append((int(u), int(v), int(rest[0]) if rest else 1))
        return cls(vertex_count, tuple(triples), sink)

    def with_sink(self, sink: int) -> Graph:
        return Graph(self.vertex_count, self.edges, sink, self.family, self.params,
                     self.labels)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(neighbour, multiplicity)`` pairs."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for u, v, m in self.edges:
            adj[u].append((v, m))
            adj[v].append((u, m))
        return tuple(tuple(a) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(m for _, m in nbrs) for nbrs in self.adjacency)

    @property
    def non_sink(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.vertex_count) if v != self.sink)

    @property
    def edge_count(self) -> int:
        return sum(m for _, _, m in self.edges)

    def _connected(self) -> bool:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count


def square_cycle(n: int) -> Graph:
    """Square of the n-cycle (4-regular, simple for n >= 5)."""
    if n < 5:
        raise GraphError(f"square_cycle needs n >= 5, got {n}")
    edges = set()
    for i in range(n):
        for step in (1, 2):
            j = (i + step) % n
            edges.add((min(i, j), max(i, j)))
    return Graph(n, tuple((u, v, 1) for u, v in edges), 0, "square_cycle", (n,))


def wheel(n: int) -> Graph:
    """Wheel with hub 0 and rim 1..n."""
    if n < 3:
        raise GraphError(f"wheel needs n >= 3, got {n}")
    edges = [(0, i, 1) for i in range(1, n + 1)]
    edges += [(i, i % n + 1, 1) for i in range(1, n + 1)]
    return Graph(n + 1, tuple(edges), 0, "wheel", (n,))


def banana_branches(s) -> list[list[int]]:
    """Vertex paths of each branch of ``banana_subdivided(s)``, from v0 to v1."""
    branches = []
    nxt = 2
    for length in s:
        inner = list(range(nxt, nxt + length - 1))
        nxt += length - 1
        branches.append([0, *inner, 1])
    return branches


def banana_subdivided(s) -> Graph:
    """Banana graph B_m with edge ``i`` subdivided into a path of ``s[i]`` edges."""
    s = tuple(int(x) for x in s)
    if len(s) < 2:
        raise GraphError("banana graph needs at least two branches")
    if any(x < 1 for x in s):
        raise GraphError(f"branch lengths must be positive, got {s}")
    branches = banana_branches(s)
    edges = [(a, b, 1) for path in branches for a, b in zip(path, path[1:])]
    n = 2 + sum(x - 1 for x in s)
    labels = ("v0", "v1", *(str(i) for i in range(2, n)))
    return Graph(n, tuple(edges), 1, "banana", s, labels)


def laplacian(g: Graph) -> Matrix:
    n = g.vertex_count
    L = [[0] * n for _ in range(n)]
    for u, v, m in g.edges:
        L[u][v] -= m
        L[v][u] -= m
        L[u][u] += m
        L[v][v] += m
    return L


def reduced_laplacian(g: Graph, sink: int | None = None) -> Matrix:
    """Laplacian with the sink row and column removed."""
    if sink is None:
        sink = g.sink
    if not 0 <= sink < g.vertex_count:
        raise GraphError(f"sink {sink} is not a vertex")
    L = laplacian(g)
    keep = [v for v in range(g.vertex_count) if v != sink]
    return [[L[i][j] for j in keep] for i in keep]


def tree_count(g: Graph, sink: int | None = None) -> int:
    """Number of spanning trees (matrix-tree theorem)."""
    if g.vertex_count == 1:
        return 1
    return bareiss_det(reduced_laplacian(g, sink))


def fibonacci(n: int) -> int:
    if n < 1:
        raise ValueError(f"fibonacci index must be >= 1, got {n}")
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


def lucas(n: int) -> int:
    if n < 1:
        raise ValueError(f"lucas index must be >= 1, got {n}")
    a, b = 1, 3
    for _ in range(n - 1):
        a, b = b, a + b
    return a


def graph_from_family(family: str, params, sink: int | None = None) -> Graph:
    """Construct ``square_cycle``/``wheel``/``banana`` from name and parameters."""
    if isinstance(params, int):
        params = (params,)
    params = tuple(int(p) for p in params)
    if family == "square_cycle":
        if len(params) != 1:
            raise GraphError("square_cycle takes a single parameter n")
        g = square_cycle(params[0])
    elif family == "wheel":
        if len(params) != 1:
            raise GraphError("wheel takes a single parameter n")
        g = wheel(params[0])
    elif family == "banana":
        g = banana_subdivided(params)
    else:
        raise GraphError(f"unknown family {family!r}")
    return g if sink is None else g.with_sink(sink)
