import random

import pytest
import sympy

from sandpile_dlp.graphs import Graph, banana_subdivided, laplacian, square_cycle, wheel

from conftest import gid
from sandpile_dlp.sandpile import (
    Configuration,
    GroupDescription,
    SandpileError,
    biggs_generators,
    config_to_divisor,
    divisor_to_config,
    element_order,
    enumerate_recurrent,
    group_add,
    group_order,
    group_structure,
    identity,
    is_recurrent,
    max_stable,
    random_configuration,
    random_recurrent,
    recurrent_representative,
    scalar_multiple,
    stabilize,
    topple_randomly,
)

W7 = wheel(7)
SQ7 = square_cycle(7)
W7_C1 = Configuration(W7, (2, 2, 2, 0, 2, 2, 0))
W7_C2 = Configuration(W7, (2, 2, 2, 1, 2, 2, 1))


def test_divisor_round_trip_wheel():
    assert config_to_divisor(W7_C1) == (-10, 2, 2, 2, 0, 2, 2, 0)
    g1 = Configuration(W7, (1, 2, 2, 2, 2, 2, 1))
    assert config_to_divisor(g1) == (-12, 1, 2, 2, 2, 2, 2, 1)
    assert divisor_to_config(config_to_divisor(g1), W7) == g1


def test_zero_configuration_divisor():
    assert config_to_divisor(Configuration(W7, (0,) * 7)) == (0,) * 8


def test_divisor_round_trip_banana_sink_in_middle():
    g = banana_subdivided((3, 7, 10))
    d = (2, -17, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1)
    assert config_to_divisor(divisor_to_config(d, g)) == d


def test_divisor_to_config_rejects_negative():
    with pytest.raises(SandpileError):
        divisor_to_config((0, -1, 2, 0, 0, 0, 0, -1), W7)
    with pytest.raises(SandpileError):
        divisor_to_config((0, 1), W7)


def test_stabilize_stable_unchanged():
    assert stabilize(W7_C1.values, W7) == W7_C1


def test_stabilize_worked_instances():
    assert stabilize([15 * x for x in W7_C1.values], W7) == W7_C2
    c1 = divisor_to_config((-12, 3, 3, 0, 3, 3, 0), SQ7)
    c2 = divisor_to_config((-14, 3, 3, 3, 3, 1, 1), SQ7)
    assert stabilize([20 * x for x in c1.values], SQ7) == c2


def test_stabilize_accepts_full_vector():
    full = config_to_divisor(scalar_multiple(3, W7_C1))
    assert stabilize([99] + list(full[1:]), W7) == scalar_multiple(3, W7_C1)


def test_stabilize_rejects_negative():
    with pytest.raises(SandpileError):
        stabilize([-1, 0, 0, 0, 0, 0, 0], W7)


def test_stabilize_large_entries_binary_path():
    # the bitwise route must agree with plain toppling
    rng = random.Random(1)
    g = wheel(6)
    for _ in range(10):
        big = [rng.randint(500, 3000) for _ in range(6)]
        expected, _ = topple_randomly(big, g, rng)
        assert stabilize(big, g).values == expected


@pytest.mark.parametrize("g", [square_cycle(6), square_cycle(9), wheel(5), wheel(9),
                               banana_subdivided((2, 3)), banana_subdivided((1, 2, 4)),
                               banana_subdivided((1, 1))], ids=gid)
def test_abelian_property(g):
    rng = random.Random(42)
    for _ in range(5):
        c = [rng.randint(0, 6 * g.degrees[v]) for v in g.non_sink]
        fast = stabilize(c, g).values
        results = [topple_randomly(c, g, rng) for _ in range(20)]
        # same final state and the same odometer for every schedule
        assert len({(vals, tuple(f)) for vals, f in results}) == 1
        assert results[0][0] == fast


@pytest.mark.parametrize("g", [square_cycle(7), wheel(6), banana_subdivided((2, 3, 5))], ids=gid)
def test_stabilize_idempotent_and_preserves_class(g):
    rng = random.Random(7)
    L = sympy.Matrix(laplacian(g))
    keep = list(g.non_sink)
    reduced = L.extract(keep, keep)
    for _ in range(10):
        c = [rng.randint(0, 20) for _ in g.non_sink]
        s = stabilize(c, g)
        assert stabilize(s.values, g) == s
        diff = sympy.Matrix([a - b for a, b in zip(c, s.values)])
        # c - stab(c) is the reduced Laplacian applied to the (integer) odometer
        z = reduced.LUsolve(diff)
        assert all(x.is_integer for x in z)


def test_max_stable_and_identity_trivial_group():
    g = Graph.from_edges(2, [(0, 1)], sink=1)
    assert max_stable(g).values == (0,)
    assert identity(g).values == (0,)


def test_identity_k4():
    e = identity(wheel(3))
    assert group_add(e, e) == e


@pytest.mark.parametrize("g", [square_cycle(n) for n in range(5, 13)]
                         + [wheel(n) for n in range(3, 13)]
                         + [banana_subdivided(s) for s in [(1, 1), (2, 2), (3, 4), (2, 3, 5)]],
                         ids=gid)
def test_identity_recurrent_and_neutral(g):
    e = identity(g)
    assert is_recurrent(e)
    rng = random.Random(0)
    for _ in range(5):
        c = random_recurrent(g, rng)
        assert group_add(c, e) == c


def test_is_recurrent_examples():
    assert is_recurrent(max_stable(W7))
    assert not is_recurrent(Configuration(wheel(3), (0, 0, 0)))
    assert is_recurrent(Configuration(W7, (1, 2, 2, 2, 2, 2, 1)))
    with pytest.raises(SandpileError):
        is_recurrent(Configuration(W7, (3, 0, 0, 0, 0, 0, 0)))


def test_is_recurrent_matches_fixed_point_definition():
    # c recurrent iff adding the sink's edges and stabilizing returns c
    for g in [wheel(4), square_cycle(5), banana_subdivided((2, 3))]:
        beta = [sum(m for u, m in g.adjacency[v] if u == g.sink) for v in g.non_sink]
        for c in _all_stable(g):
            expect = stabilize([a + b for a, b in zip(c.values, beta)], g) == c
            assert is_recurrent(c) == expect


def _all_stable(g):
    from itertools import product

    for vals in product(*[range(g.degrees[v]) for v in g.non_sink]):
        yield Configuration(g, vals)


@pytest.mark.parametrize("g", [wheel(3), wheel(4), banana_subdivided((2, 2))], ids=gid)
def test_recurrent_configurations_form_group(g):
    elems = enumerate_recurrent(g)
    assert len(elems) == group_order(g)
    members = set(elems)
    e = identity(g)
    assert e in members
    for a in elems:
        assert any(group_add(a, b) == e for b in elems)
        for b in elems:
            assert group_add(a, b) in members
            assert group_add(a, b) == group_add(b, a)


def test_group_add_associative_w5():
    g = wheel(5)
    rng = random.Random(5)
    for _ in range(100):
        a, b, c = (random_recurrent(g, rng) for _ in range(3))
        assert group_add(group_add(a, b), c) == group_add(a, group_add(b, c))


def test_group_add_mismatched_graphs():
    with pytest.raises(SandpileError):
        group_add(W7_C1, max_stable(wheel(6)))


def test_scalar_multiple():
    assert scalar_multiple(1, W7_C1) == W7_C1
    g1 = Configuration(W7, (1, 2, 2, 2, 2, 2, 1))
    assert group_add(g1, g1) == scalar_multiple(2, g1)
    assert scalar_multiple(15, W7_C1) == W7_C2
    with pytest.raises(SandpileError):
        scalar_multiple(-1, W7_C1)


def test_scalar_multiple_is_repeated_addition():
    g = wheel(5)
    rng = random.Random(9)
    c = random_recurrent(g, rng)
    acc = c
    for k in range(2, 40):
        acc = group_add(acc, c)
        assert scalar_multiple(k, c) == acc


def test_lagrange_w5():
    g = wheel(5)
    e = identity(g)
    for c in enumerate_recurrent(g):
        assert scalar_multiple(group_order(g), c) == e


def test_operators():
    assert W7_C1 + identity(W7) == W7_C1
    assert 15 * W7_C1 == W7_C2


def test_group_structure_examples():
    assert group_structure(SQ7).invariant_factors == (13, 91)
    assert group_structure(SQ7).order == 1183
    assert group_structure(W7).invariant_factors == (29, 29)
    assert group_structure(W7).order == 841
    desc = group_structure(banana_subdivided((3, 7, 10)))
    assert (desc.invariant_factors, desc.order) == ((121,), 121)


def _check_generator_orders(g):
    desc = group_structure(g)
    e = identity(g)
    for d, gen in zip(desc.invariant_factors, desc.generators):
        assert sum(gen) == 0
        c = divisor_to_config(gen, g)
        assert is_recurrent(c)
        if d <= 200:
            assert element_order(c) == d
        else:
            assert scalar_multiple(d, c) == e
            for p in sympy.primefactors(d):
                assert scalar_multiple(d // p, c) != e


@pytest.mark.parametrize("g", [square_cycle(n) for n in range(5, 14)]
                         + [wheel(n) for n in range(3, 14)]
                         + [banana_subdivided(s) for s in [(1, 1), (2, 2, 2), (3, 7, 10), (2, 4, 6)]],
                         ids=gid)
def test_generator_orders(g):
    _check_generator_orders(g)


def test_generators_generate_w4():
    # every recurrent configuration is a combination of the SNF generators
    g = wheel(4)
    desc = group_structure(g)
    gens = [divisor_to_config(d, g) for d in desc.generators]
    reached = set()
    from itertools import product

    for ks in product(*[range(d) for d in desc.invariant_factors]):
        acc = identity(g)
        for k, c in zip(ks, gens):
            acc = group_add(acc, scalar_multiple(k, c)) if k else acc
        reached.add(acc)
    assert reached == set(enumerate_recurrent(g))


def test_biggs_generators():
    g1, g2 = biggs_generators(7)
    assert g1.values == (1, 2, 2, 2, 2, 2, 1)
    assert g2.values == (1, 1, 2, 2, 2, 2, 2)
    for n in (3, 5, 9, 11):
        for c in biggs_generators(n):
            assert is_recurrent(c)
            assert element_order(c) == int(group_order(wheel(n)) ** 0.5 + 0.5)
    with pytest.raises(SandpileError):
        biggs_generators(8)


def test_recurrent_representative():
    g = W7
    assert recurrent_representative(config_to_divisor(W7_C1), g) == W7_C1
    # negative entries land in the right class: c + (-c) is the identity
    neg = [-x for x in W7_C1.values]
    assert group_add(recurrent_representative(neg, g), W7_C1) == identity(g)


def test_group_description_invariants():
    with pytest.raises(SandpileError):
        GroupDescription((2, 3), ((0,), (0,)), 7)
    with pytest.raises(SandpileError):
        GroupDescription((6,), (), 6)


def test_configuration_validation():
    with pytest.raises(SandpileError):
        Configuration(W7, (1, 2))
    with pytest.raises(SandpileError):
        Configuration(W7, (-1, 0, 0, 0, 0, 0, 0))
    assert not Configuration(W7, (3, 0, 0, 0, 0, 0, 0)).is_stable()


def test_random_configuration_is_stable():
    rng = random.Random(0)
    assert random_configuration(W7, rng).is_stable()
