"""Chip-firing on a graph with a sink and the resulting sandpile group.

Configurations live on the non-sink vertices, in increasing vertex order.
Divisors live on all vertices; ``config_to_divisor`` puts minus the total
chip count on the sink so the divisor has degree 0.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from sandpile_dlp.exactmath.snf import smith_normal_form
from sandpile_dlp.graphs import Graph, reduced_laplacian, tree_count

# entries above this many multiples of the max degree go through binary stabilization
_DIRECT_LIMIT = 64


class SandpileError(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    """Chip counts on the non-sink vertices of ``graph``."""

    graph: Graph
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(x) for x in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.graph.vertex_count - 1:
            raise SandpileError(
                f"configuration needs {self.graph.vertex_count - 1} entries, got {len(values)}"
            )
        if any(x < 0 for x in values):
            raise SandpileError(f"negative chip count in {values}")

    @property
    def sink(self) -> int:
        return self.graph.sink

    def is_stable(self) -> bool:
        degs = self.graph.degrees
        return all(x < degs[v] for x, v in zip(self.values, self.graph.non_sink))

    def __add__(self, other: Configuration) -> Configuration:
        return group_add(self, other)

    def __rmul__(self, x: int) -> Configuration:
        return scalar_multiple(x, self)


@dataclass(frozen=True)
class GroupDescription:
    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    order: int

    def __post_init__(self):
        prod = 1
        for d in self.invariant_factors:
            prod *= d
        if prod != self.order:
            raise SandpileError("product of invariant factors differs from the order")
        if len(self.generators) != len(self.invariant_factors):
            raise SandpileError("need exactly one generator per invariant factor")


def config_to_divisor(c: Configuration) -> tuple[int, ...]:
    out = [0] * c.graph.vertex_count
    for v, x in zip(c.graph.non_sink, c.values):
        out[v] = x
    out[c.sink] = -sum(c.values)
    return tuple(out)


def divisor_to_config(d, g: Graph) -> Configuration:
    if len(d) != g.vertex_count:
        raise SandpileError(f"divisor needs {g.vertex_count} entries, got {len(d)}")
    return Configuration(g, tuple(d[v] for v in g.non_sink))


def _restrict(values, g: Graph) -> list[int]:
    values = list(values)
    if len(values) == g.vertex_count:
        values = [values[v] for v in g.non_sink]
    if len(values) != g.vertex_count - 1:
        raise SandpileError(f"expected {g.vertex_count - 1} non-sink entries")
    return values


def _stabilize_small(chips: list[int], g: Graph) -> list[int]:
    """Topple in place until stable; ``chips`` is indexed by vertex."""
    degs = g.degrees
    adj = g.adjacency
    sink = g.sink
    queue = deque(v for v in range(g.vertex_count) if v != sink and chips[v] >= degs[v])
    queued = set(queue)
    while queue:
        v = queue.popleft()
        queued.discard(v)
        k = chips[v] // degs[v]
        if k == 0:
            continue
        chips[v] -= k * degs[v]
        for u, m in adj[v]:
            chips[u] += k * m
            if u != sink and u not in queued and chips[u] >= degs[u]:
                queue.append(u)
                queued.add(u)
    return chips


def stabilize(values, g: Graph) -> Configuration:
    """Stable configuration reached by toppling ``values`` on ``g``.

    ``values`` may be given on the non-sink vertices or on all vertices (the
    sink entry is then ignored).  Large inputs are stabilized bit by bit,
    highest bit first: ``stab(2a + b) = stab(2 stab(a) + b)``.
    """
    values = _restrict(values, g)
    if any(x < 0 for x in values):
        raise SandpileError("cannot stabilize negative chip counts")
    n = g.vertex_count
    top = max(values, default=0)
    if top <= _DIRECT_LIMIT * max(g.degrees):
        chips = [0] * n
        for v, x in zip(g.non_sink, values):
            chips[v] = x
    else:
        chips = [0] * n
        for bit in reversed(range(top.bit_length())):
            for v, x in zip(g.non_sink, values):
                chips[v] = 2 * chips[v] + ((x >> bit) & 1)
            chips[g.sink] = 0
            _stabilize_small(chips, g)
        return Configuration(g, tuple(chips[v] for v in g.non_sink))
    _stabilize_small(chips, g)
    return Configuration(g, tuple(chips[v] for v in g.non_sink))


def topple_randomly(values, g: Graph, rng: random.Random) -> tuple[tuple[int, ...], list[int]]:
    """Stabilize by single topplings of a randomly chosen unstable vertex.

    Returns the stable values and the number of times each vertex toppled.
    Slow; meant for checking schedule independence.
    """
    chips = [0] * g.vertex_count
    for v, x in zip(g.non_sink, _restrict(values, g)):
        chips[v] = x
    degs = g.degrees
    fired = [0] * g.vertex_count
    while True:
        unstable = [v for v in g.non_sink if chips[v] >= degs[v]]
        if not unstable:
            break
        v = rng.choice(unstable)
        chips[v] -= degs[v]
        fired[v] += 1
        for u, m in g.adjacency[v]:
            chips[u] += m
    return tuple(chips[v] for v in g.non_sink), fired


def _same_graph(c1: Configuration, c2: Configuration):
    if c1.graph != c2.graph or c1.sink != c2.sink:
        raise SandpileError("configurations live on different graphs")


def group_add(c1: Configuration, c2: Configuration) -> Configuration:
    _same_graph(c1, c2)
    return stabilize([a + b for a, b in zip(c1.values, c2.values)], c1.graph)


def scalar_multiple(x: int, c: Configuration) -> Configuration:
    """Stabilization of ``x * c``."""
    if x < 0:
        raise SandpileError("multiplier must be nonnegative")
    return stabilize([x * a for a in c.values], c.graph)


def max_stable(g: Graph) -> Configuration:
    return Configuration(g, tuple(g.degrees[v] - 1 for v in g.non_sink))


@lru_cache(maxsize=256)
def identity(g: Graph) -> Configuration:
    """Neutral recurrent configuration, ``(2m - (2m)°)°`` for ``m`` maximal stable."""
    doubled = [2 * x for x in max_stable(g).values]
    settled = stabilize(doubled, g).values
    return stabilize([a - b for a, b in zip(doubled, settled)], g)


def is_recurrent(c: Configuration) -> bool:
    """Dhar's burning test.

    Fire starts at the sink; an unburnt vertex catches fire once its chip
    count is at least the number of edges joining it to unburnt vertices.
    """
    if not c.is_stable():
        raise SandpileError("burning test needs a stable configuration")
    g = c.graph
    chips = dict(zip(g.non_sink, c.values))
    unburnt_edges = {v: g.degrees[v] - sum(m for u, m in g.adjacency[v] if u == g.sink)
                     for v in g.non_sink}
    burning = [v for v in g.non_sink if chips[v] >= unburnt_edges[v]]
    burnt = set(burning)
    while burning:
        v = burning.pop()
        for u, m in g.adjacency[v]:
            if u == g.sink or u in burnt:
                continue
            unburnt_edges[u] -= m
            if chips[u] >= unburnt_edges[u]:
                burnt.add(u)
                burning.append(u)
    return len(burnt) == g.vertex_count - 1


@lru_cache(maxsize=256)
def group_order(g: Graph) -> int:
    return tree_count(g)


def recurrent_representative(values, g: Graph) -> Configuration:
    """Recurrent configuration equivalent to an arbitrary integer vector.

    ``values`` (non-sink entries, or all entries of a divisor) may be
    negative.  Every ``order * e_v`` is a Laplacian image, so entries are
    first reduced modulo the group order.
    """
    order = group_order(g)
    reduced = [x % order for x in _restrict(values, g)]
    return group_add(stabilize(reduced, g), identity(g))


def _smith(g: Graph):
    return smith_normal_form(reduced_laplacian(g))


@lru_cache(maxsize=64)
def group_structure(g: Graph) -> GroupDescription:
    """Invariant factors and matching generators from the Smith form.

    With ``U Δ V = S``, ``y -> U y`` identifies ``Z^k / im Δ`` with the sum of
    cyclic groups, so generator ``i`` is the class of column ``i`` of ``U^-1``.
    """
    order = group_order(g)
    if g.vertex_count == 1:
        return GroupDescription((), (), 1)
    snf = _smith(g)
    factors = []
    gens = []
    for i, d in enumerate(snf.diagonal):
        if d == 1:
            continue
        column = [row[i] for row in snf.U_inv]
        gens.append(config_to_divisor(recurrent_representative(column, g)))
        factors.append(d)
    return GroupDescription(tuple(factors), tuple(gens), order)


def biggs_generators(n: int, g: Graph | None = None) -> list[Configuration]:
    """Two generators of the wheel group for odd ``n = 2r + 1``.

    Rim vertex ``k`` (1-based) carries the label ``k - r - 1`` in
    ``-r..r``; ``g`` puts one chip on ``+-r`` and two elsewhere, and the
    second generator is ``g`` shifted by one position.
    """
    if n < 3 or n % 2 == 0:
        raise SandpileError(f"Biggs generators need odd n >= 3, got {n}")
    from sandpile_dlp.graphs import wheel

    if g is None:
        g = wheel(n)
    r = (n - 1) // 2

    def biggs(label):
        return 1 if (label - r) % n == 0 or (label + r) % n == 0 else 2

    labels = [k - r - 1 for k in range(1, n + 1)]
    g1 = Configuration(g, tuple(biggs(v) for v in labels))
    g2 = Configuration(g, tuple(biggs(v - 1) for v in labels))
    return [g1, g2]


def random_configuration(g: Graph, rng: random.Random) -> Configuration:
    return Configuration(g, tuple(rng.randrange(g.degrees[v]) for v in g.non_sink))


def random_recurrent(g: Graph, rng: random.Random) -> Configuration:
    """A random stable configuration pushed into the recurrent class by adding the identity."""
    return group_add(random_configuration(g, rng), identity(g))


def enumerate_recurrent(g: Graph) -> list[Configuration]:
    """All recurrent configurations, by brute force over stable ones."""
    ranges = [range(g.degrees[v]) for v in g.non_sink]
    out = []
    for vals in product(*ranges):
        c = Configuration(g, vals)
        if is_recurrent(c):
            out.append(c)
    return out


def element_order(c: Configuration, bound: int | None = None) -> int:
    """Order of a recurrent configuration, by repeated addition."""
    e = identity(c.graph)
    if bound is None:
        bound = group_order(c.graph)
    acc = c
    for k in range(1, bound + 1):
        if acc == e:
            return k
        acc = group_add(acc, c)
    raise SandpileError(f"order exceeds {bound}")
