"""Worked examples reproduced as regression checks.

Each check compares an expected value against a freshly computed one;
``run_checks`` never raises on a mismatch, it records it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q

from sandpile_dlp.dlp import (
    DlpInstance,
    banana_generator,
    banana_pairing,
    banana_potential,
    banana_solve,
    brute_force_dlp,
    graph_pseudoinverse,
    monodromy_pairing,
    pairing_raw,
    shokrieh_solve,
)
from sandpile_dlp.exactmath.numtheory import ResidueClass, crt_combine, solve_lin_diophantine
from sandpile_dlp.graphs import banana_subdivided, laplacian, square_cycle, tree_count, wheel
from sandpile_dlp.sandpile import (
    Configuration,
    biggs_generators,
    config_to_divisor,
    group_structure,
)

# square cycle C_7^2
SQ7_LAPLACIAN_ROW0 = [4, -1, -1, 0, 0, -1, -1]
SQ7_PINV_ROW0 = [Q(18, 91), Q(-1, 91), Q(-2, 91), Q(-6, 91), Q(-6, 91), Q(-2, 91), Q(-1, 91)]
SQ7_EDGES = {(0, 1), (0, 2), (0, 5), (0, 6), (1, 2), (1, 3), (1, 6),
             (2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)}
SQ7_G1 = (-10, 1, 1, 3, 2, 3, 0)
SQ7_G2 = (-13, 3, 1, 3, 3, 1, 2)
SQ7_C1 = (-12, 3, 3, 0, 3, 3, 0)
SQ7_C2 = (-14, 3, 3, 3, 3, 1, 1)
SQ7_RAW = {("c1", "g1"): Q(435, 13), ("c1", "g2"): Q(3825, 91),
           ("c2", "g1"): Q(523, 13), ("c2", "g2"): Q(4701, 91)}
SQ7_R = {("c1", "g1"): Q(6, 13), ("c1", "g2"): Q(3, 91),
         ("c2", "g1"): Q(3, 13), ("c2", "g2"): Q(60, 91)}

# wheel W_7
W7_PINV_ENTRIES = {(0, 0): Q(7, 64), (1, 1): Q(571, 1856), (0, 1): Q(-1, 64),
                   (1, 2): Q(59, 1856), (1, 3): Q(-133, 1856), (1, 4): Q(-197, 1856)}
W7_LAPLACIAN_ROW0 = [7, -1, -1, -1, -1, -1, -1, -1]
W7_G1 = (-12, 1, 2, 2, 2, 2, 2, 1)
W7_G2 = (-12, 1, 1, 2, 2, 2, 2, 2)
W7_C1 = (-10, 2, 2, 2, 0, 2, 2, 0)
W7_C2 = (-12, 2, 2, 2, 1, 2, 2, 1)
W7_RAW = {("c1", "g1"): Q(504, 29), ("c1", "g2"): Q(484, 29),
          ("c2", "g1"): Q(600, 29), ("c2", "g2"): Q(590, 29)}
W7_R = {("c1", "g1"): Q(11, 29), ("c1", "g2"): Q(20, 29),
        ("c2", "g1"): Q(20, 29), ("c2", "g2"): Q(10, 29)}

WHEEL_TREE_NUMBERS = {3: 16, 4: 45, 5: 121, 6: 320, 7: 841, 8: 2205, 9: 5776, 10: 15125}
WHEEL_BENCH_ORDERS = {
    29: 1322157322201,
    31: 9062201101801,
    33: 62113250390416,
    35: 425730551631121,
    37: 2918000611027441,
    39: 20000273725560976,
    41: 137083915467899401,
    43: 939587134549734841,
    45: 6440026026380244496,
}

# subdivided banana B_(3,7,10)
BANANA_S = (3, 7, 10)
BANANA_C1 = (2, -17, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1)
BANANA_C2 = (2, -17, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1)
BANANA_PAIRINGS = (Q(95, 121), Q(62, 121))
BANANA_X = 100


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "expected": _show(self.expected), "actual": _show(self.actual)}


def _show(v):
    if isinstance(v, Q):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (set, frozenset)):
        return [_show(x) for x in sorted(v)]
    if isinstance(v, (list, tuple)):
        return [_show(x) for x in v]
    if isinstance(v, ResidueClass):
        return {"residue": str(v.residue), "modulus": str(v.modulus)}
    if isinstance(v, dict):
        return {str(k): _show(x) for k, x in v.items()}
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return v


def _guard(name, expected, fn):
    try:
        return Check(name, expected, fn())
    except Exception as exc:  # a crash is a failed check, reported by name
        return Check(name, expected, f"error: {exc}")


def _pairings(P, divs, gens, raw):
    f = pairing_raw if raw else monodromy_pairing
    return {(cn, gn): f(P, c, g) for cn, c in divs.items() for gn, g in gens.items()}


def square_cycle_checks(inject_fault: bool = False) -> list[Check]:
    g = square_cycle(7)
    P = [row[:] for row in graph_pseudoinverse(g)]
    if inject_fault:
        P[0][1] += Q(1, 91)
        P[1][0] += Q(1, 91)
    divs = {"c1": SQ7_C1, "c2": SQ7_C2}
    gens = {"g1": SQ7_G1, "g2": SQ7_G2}
    inst = DlpInstance.from_divisors(g, SQ7_C1, SQ7_C2, (SQ7_G1, SQ7_G2))
    expected_P = [SQ7_PINV_ROW0[-i:] + SQ7_PINV_ROW0[:-i] for i in range(7)]
    return [
        _guard("sq7.edges", SQ7_EDGES, lambda: {(u, v) for u, v, _ in g.edges}),
        _guard("sq7.laplacian_row0", SQ7_LAPLACIAN_ROW0, lambda: laplacian(g)[0]),
        _guard("sq7.pseudoinverse", expected_P, lambda: P),
        _guard("sq7.pairings_raw", SQ7_RAW, lambda: _pairings(P, divs, gens, True)),
        _guard("sq7.pairings", SQ7_R, lambda: _pairings(P, divs, gens, False)),
        _guard("sq7.diophantine_g1", ResidueClass(7, 13), lambda: solve_lin_diophantine(6, 13, 3)),
        _guard("sq7.diophantine_g2", ResidueClass(20, 91), lambda: solve_lin_diophantine(3, 91, 60)),
        _guard("sq7.crt", ResidueClass(20, 91),
               lambda: crt_combine([ResidueClass(7, 13), ResidueClass(20, 91)])),
        _guard("sq7.solve", (20, 91, True), lambda: _solve_triple(shokrieh_solve(inst, P=P))),
        _guard("sq7.brute_force", 20, lambda: brute_force_dlp(inst)),
        _guard("sq7.group", ((13, 91), 1183), lambda: _factors(g)),
    ]


def wheel_checks(inject_fault: bool = False) -> list[Check]:
    g = wheel(7)
    P = [row[:] for row in graph_pseudoinverse(g)]
    if inject_fault:
        P[1][1] += Q(1, 1856)
    divs = {"c1": W7_C1, "c2": W7_C2}
    gens = {"g1": W7_G1, "g2": W7_G2}
    inst = DlpInstance.from_divisors(g, W7_C1, W7_C2, (W7_G1, W7_G2))
    c1 = Configuration(g, (2, 2, 2, 0, 2, 2, 0))
    return [
        _guard("w7.laplacian_row0", W7_LAPLACIAN_ROW0, lambda: laplacian(g)[0]),
        _guard("w7.pseudoinverse_entries", W7_PINV_ENTRIES,
               lambda: {k: P[k[0]][k[1]] for k in W7_PINV_ENTRIES}),
        _guard("w7.biggs_generators", [W7_G1, W7_G2],
               lambda: [config_to_divisor(c) for c in biggs_generators(7)]),
        _guard("w7.c1_divisor", W7_C1, lambda: config_to_divisor(c1)),
        _guard("w7.pairings_raw", W7_RAW, lambda: _pairings(P, divs, gens, True)),
        _guard("w7.pairings", W7_R, lambda: _pairings(P, divs, gens, False)),
        _guard("w7.solve", (15, 29, True), lambda: _solve_triple(shokrieh_solve(inst, P=P))),
        _guard("w7.brute_force", 15, lambda: brute_force_dlp(inst)),
        _guard("w7.group", ((29, 29), 841), lambda: _factors(g)),
        _guard("wheel.tree_numbers", WHEEL_TREE_NUMBERS,
               lambda: {n: tree_count(wheel(n)) for n in WHEEL_TREE_NUMBERS}),
        _guard("wheel.bench_orders", WHEEL_BENCH_ORDERS,
               lambda: {n: tree_count(wheel(n)) for n in WHEEL_BENCH_ORDERS}),
    ]


def banana_checks() -> list[Check]:
    s = BANANA_S
    g = banana_subdivided(s)
    f = banana_potential(s)
    return [
        _guard("banana.vertex_count", 19, lambda: g.vertex_count),
        _guard("banana.order", 121, lambda: tree_count(g)),
        _guard("banana.group", ((121,), 121), lambda: _factors(g)),
        _guard("banana.generator_order", 121, lambda: _banana_generator_order(g, s)),
        _guard("banana.pairings", BANANA_PAIRINGS,
               lambda: (banana_pairing(s, f, BANANA_C1), banana_pairing(s, f, BANANA_C2))),
        _guard("banana.diophantine", ResidueClass(100, 121),
               lambda: solve_lin_diophantine(95, 121, 62)),
        _guard("banana.solve", (BANANA_X, 121, True),
               lambda: _solve_triple(banana_solve(s, BANANA_C1, BANANA_C2))),
    ]


def _banana_generator_order(g, s):
    P = graph_pseudoinverse(g)
    D = banana_generator(s)
    return monodromy_pairing(P, D, D).denominator


def _factors(g):
    desc = group_structure(g)
    return desc.invariant_factors, desc.order


def _solve_triple(sol):
    return sol.x, sol.modulus, sol.verified


def run_checks(inject_fault: bool = False) -> list[Check]:
    return square_cycle_checks(inject_fault) + wheel_checks(inject_fault) + banana_checks()
