"""Discrete logarithms in sandpile groups.

Given recurrent ``c1`` and ``c2`` with ``c2 = (x * c1)°``, ``x`` is recovered
from the monodromy pairing ``<d1, d2> = d1^T P d2 mod 1`` (``P`` the Laplacian
pseudoinverse) against a set of group generators: each generator ``g``
yields the congruence ``<c2, g> = x <c1, g> (mod 1)``, and the congruences are
merged with the CRT.  For subdivided banana graphs whose group is cyclic of
prime-power order the pairing against ``v0 - v1`` comes from an integer
potential instead, with no pseudoinverse.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod

from sandpile_dlp.exactmath.linalg import pseudoinverse
from sandpile_dlp.exactmath.numtheory import (
    ResidueClass,
    crt_combine,
    lcm,
    solve_lin_diophantine,
)
from sandpile_dlp.graphs import Graph, banana_branches, banana_subdivided, laplacian
from sandpile_dlp.sandpile import (
    Configuration,
    config_to_divisor,
    divisor_to_config,
    group_add,
    group_order,
    group_structure,
    random_recurrent,
    scalar_multiple,
)

DEFAULT_LIFT_CAP = 10**6
METHODS = ("pairing", "banana", "brute_force")


class PairingError(ValueError):
    pass


class UnverifiedError(ArithmeticError):
    """No lift of the computed residue class passed verification."""


@dataclass(frozen=True)
class DlpInstance:
    graph: Graph
    base: Configuration
    target: Configuration
    generators: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        for c in (self.base, self.target):
            if c.graph != self.graph:
                raise ValueError("configuration does not belong to the instance graph")
        if self.generators is not None:
            gens = tuple(tuple(int(x) for x in d) for d in self.generators)
            object.__setattr__(self, "generators", gens)

    @classmethod
    def from_divisors(cls, graph: Graph, d1, d2, generators=None) -> DlpInstance:
        return cls(graph, divisor_to_config(d1, graph), divisor_to_config(d2, graph),
                   generators)


@dataclass(frozen=True)
class DlpSolution:
    """``x`` is the least positive verified exponent found (or the candidate
    that failed verification); ``residue_class`` is what the method derived."""

    residue_class: ResidueClass
    verified: bool
    method: str
    x: int
    pairings: tuple = field(default=(), compare=False)

    @property
    def modulus(self) -> int:
        return self.residue_class.modulus


def frac_part(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


@lru_cache(maxsize=32)
def graph_pseudoinverse(g: Graph):
    return pseudoinverse(laplacian(g), g.vertex_count)


def _check_divisor(d, n: int):
    if len(d) != n:
        raise PairingError(f"divisor has {len(d)} entries, expected {n}")
    if sum(d) != 0:
        raise PairingError(f"divisor has degree {sum(d)}, expected 0")


def pairing_raw(P, d1, d2) -> Fraction:
    """``d1^T P d2`` before reduction mod 1."""
    n = len(P)
    _check_divisor(d1, n)
    _check_divisor(d2, n)
    Pd2 = [sum((p * y for p, y in zip(row, d2) if y), Fraction(0)) for row in P]
    return sum((x * v for x, v in zip(d1, Pd2) if x), Fraction(0))


def monodromy_pairing(P, d1, d2) -> Fraction:
    """Monodromy pairing of two degree-0 divisors, as a fraction in [0, 1)."""
    return frac_part(pairing_raw(P, d1, d2))


def _congruence(r1: Fraction, r2: Fraction) -> ResidueClass:
    m = lcm(r1.denominator, r2.denominator)
    return solve_lin_diophantine(int(r1 * m), m, int(r2 * m))


def _verify_lifts(inst: DlpInstance, cls: ResidueClass, cap: int) -> tuple[int, bool]:
    order = group_order(inst.graph)
    x = cls.residue or cls.modulus
    first = x
    steps = 0
    while x <= max(order, first) and steps < cap:
        if scalar_multiple(x, inst.base) == inst.target:
            return x, True
        x += cls.modulus
        steps += 1
    return first, False


def shokrieh_solve(inst: DlpInstance, lift_cap: int = DEFAULT_LIFT_CAP, P=None) -> DlpSolution:
    """Pairing-based solver.

    Raises :class:`InconsistentError` when some congruence (or their CRT
    merge) has no solution and :class:`UnverifiedError` when no lift
    ``x + k*M`` up to the group order reproduces the target.
    """
    g = inst.graph
    if P is None:
        P = graph_pseudoinverse(g)
    gens = inst.generators if inst.generators is not None else group_structure(g).generators
    d1 = config_to_divisor(inst.base)
    d2 = config_to_divisor(inst.target)
    classes = [ResidueClass(0, 1)]
    pairings = []
    for gen in gens:
        r1 = monodromy_pairing(P, d1, gen)
        r2 = monodromy_pairing(P, d2, gen)
        pairings.append((r1, r2))
        classes.append(_congruence(r1, r2))
    cls = crt_combine(classes)
    x, ok = _verify_lifts(inst, cls, lift_cap)
    if not ok:
        raise UnverifiedError(f"no lift of {cls.residue} mod {cls.modulus} maps base to target")
    return DlpSolution(cls, True, "pairing", x, tuple(pairings))


def prime_power(n: int) -> tuple[int, int] | None:
    """``(p, r)`` with ``n == p**r`` for prime ``p`` and ``r >= 1``, else None."""
    if n < 2:
        return None
    p = next((q for q in range(2, int(n**0.5) + 1) if n % q == 0), n)
    r = 0
    while n % p == 0:
        n //= p
        r += 1
    return (p, r) if n == 1 else None


def banana_order(s) -> int:
    """Spanning-tree count of the subdivided banana graph: sum of prod(s)/s_i."""
    total = prod(s)
    return sum(total // x for x in s)


def check_banana_hypotheses(s) -> tuple[int, int]:
    """Return ``(p, r)`` if the group of ``B_s`` is cyclic of order ``p**r`` with
    every ``s_i`` prime to ``p``; otherwise raise :class:`PairingError`."""
    order = banana_order(s)
    pr = prime_power(order)
    if pr is None:
        raise PairingError(f"order {order} of B_{tuple(s)} is not a prime power")
    p, _ = pr
    if any(x % p == 0 for x in s):
        raise PairingError(f"some branch length of {tuple(s)} is divisible by {p}")
    return pr


def banana_potential(s) -> list[int]:
    """Integer potential with ``f(v1) = 0`` dropping by ``prod(s)/s_i`` per edge
    of branch ``i`` on the way from ``v1`` to ``v0``."""
    s = tuple(s)
    total = prod(s)
    n = 2 + sum(x - 1 for x in s)
    f = [0] * n
    f[0] = -total
    for length, path in zip(s, banana_branches(s)):
        step = total // length
        for k, v in enumerate(path[1:-1], start=1):
            f[v] = -total + k * step
    return f


def banana_pairing(s, f, d) -> Fraction:
    """Pairing of ``v0 - v1`` with ``d`` computed from the potential ``f``.

    ``L f = -p^r (v0 - v1)``, hence ``<v0 - v1, d> = -(sum_v d(v) f(v)) / p^r``.
    """
    check_banana_hypotheses(s)
    order = banana_order(s)
    _check_divisor(d, len(f))
    return frac_part(Fraction(-sum(x * y for x, y in zip(d, f)), order))


def banana_generator(s) -> tuple[int, ...]:
    n = 2 + sum(x - 1 for x in s)
    return (1, -1) + (0,) * (n - 2)


def banana_solve(s, c1, c2, lift_cap: int = DEFAULT_LIFT_CAP) -> DlpSolution:
    """Solve on ``B_s`` using only the potential; ``c1``, ``c2`` are degree-0
    divisors or configurations on ``banana_subdivided(s)``."""
    s = tuple(s)
    g = banana_subdivided(s)
    base = c1 if isinstance(c1, Configuration) else divisor_to_config(c1, g)
    target = c2 if isinstance(c2, Configuration) else divisor_to_config(c2, g)
    d1, d2 = config_to_divisor(base), config_to_divisor(target)
    f = banana_potential(s)
    r1 = banana_pairing(s, f, d1)
    r2 = banana_pairing(s, f, d2)
    cls = crt_combine([_congruence(r1, r2)])
    inst = DlpInstance(g, base, target, (banana_generator(s),))
    x, ok = _verify_lifts(inst, cls, lift_cap)
    if not ok:
        raise UnverifiedError(f"no lift of {cls.residue} mod {cls.modulus} maps base to target")
    return DlpSolution(cls, True, "banana", x, ((r1, r2),))


def brute_force_dlp(inst: DlpInstance, bound: int | None = None) -> int | None:
    """Least ``k >= 1`` with ``(k * c1)° == c2`` by repeated addition."""
    if bound is None:
        bound = group_order(inst.graph)
    acc = inst.base
    for k in range(1, bound + 1):
        if acc == inst.target:
            return k
        acc = group_add(acc, inst.base)
    return None


def verify_solution(inst: DlpInstance, x: int) -> bool:
    return scalar_multiple(x, inst.base) == inst.target


def solve(inst: DlpInstance, method: str = "pairing", lift_cap: int = DEFAULT_LIFT_CAP) -> DlpSolution:
    if method == "pairing":
        return shokrieh_solve(inst, lift_cap)
    if method == "banana":
        g = inst.graph
        if g.family != "banana" or g.sink != 1:
            raise PairingError("banana method needs a banana graph with sink v1")
        return banana_solve(g.params, inst.base, inst.target, lift_cap)
    if method == "brute_force":
        k = brute_force_dlp(inst)
        if k is None:
            raise UnverifiedError("target is not a multiple of the base")
        order = group_order(inst.graph)
        return DlpSolution(ResidueClass(k, order), True, "brute_force", k)
    raise ValueError(f"unknown method {method!r}")


def random_instance(g: Graph, rng: random.Random, generators=None) -> tuple[DlpInstance, int]:
    """Random recurrent base, exponent in ``[2, order]``, target ``(x * base)°``."""
    order = group_order(g)
    base = random_recurrent(g, rng)
    x = rng.randint(2, max(order, 2))
    target = scalar_multiple(x, base)
    return DlpInstance(g, base, target, generators), x

