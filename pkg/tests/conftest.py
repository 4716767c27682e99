import itertools
from math import gcd

import pytest

from sandpile_dlp.graphs import banana_subdivided, square_cycle, wheel


def spanning_trees_brute(g):
    """Count spanning trees by checking every (n-1)-subset of edge copies."""
    n = g.vertex_count
    copies = [(u, v) for u, v, m in g.edges for _ in range(m)]
    count = 0
    for subset in itertools.combinations(copies, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        count += ok
    return count


def determinantal_invariants(A):
    """Invariant factors from gcds of k x k minors (slow, small matrices only)."""
    import sympy

    M = sympy.Matrix(A)
    n = M.rows
    divisors = [1]
    for k in range(1, n + 1):
        g = 0
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, int(M.extract(list(rows), list(cols)).det()))
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, n + 1) if divisors[k - 1]]


SMALL_GRAPHS = [
    square_cycle(5), square_cycle(6), square_cycle(7), square_cycle(8),
    wheel(3), wheel(4), wheel(5), wheel(6), wheel(7),
    banana_subdivided((1, 1)), banana_subdivided((2, 2)), banana_subdivided((2, 3)),
    banana_subdivided((1, 2, 3)), banana_subdivided((3, 7, 10)),
]


@pytest.fixture(params=SMALL_GRAPHS, ids=lambda g: f"{g.family}{g.params}")
def small_graph(request):
    return request.param


def gid(g):
    return f"{g.family}{list(g.params)}"
