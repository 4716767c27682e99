"""Extended Euclid, linear congruences and the Chinese remainder theorem."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class InconsistentError(ArithmeticError):
    """A congruence system has no solution."""


@dataclass(frozen=True)
class ResidueClass:
    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def __contains__(self, x: int) -> bool:
        return (x - self.residue) % self.modulus == 0


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def solve_lin_diophantine(a: int, m: int, c: int) -> ResidueClass:
    """Solve ``c = a*x + m*y`` for ``x``; the answer is a class mod ``m/gcd(a, m)``."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    g, u, _ = egcd(a, m)
    if g == 0 or c % g:
        raise InconsistentError(f"{c} = {a}x + {m}y has no integer solution")
    return ResidueClass(u * (c // g), m // g)


def crt_combine(classes) -> ResidueClass:
    """Merge congruences with arbitrary (not necessarily coprime) moduli."""
    classes = list(classes)
    if not classes:
        raise ValueError("need at least one residue class")
    r, m = classes[0].residue, classes[0].modulus
    for cls in classes[1:]:
        g, p, _ = egcd(m, cls.modulus)
        diff = cls.residue - r
        if diff % g:
            raise InconsistentError(
                f"x = {r} mod {m} and x = {cls.residue} mod {cls.modulus} are incompatible"
            )
        lcm = m // g * cls.modulus
        r = (r + m * (diff // g * p % (cls.modulus // g))) % lcm
        m = lcm
    return ResidueClass(r, m)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out // gcd(out, v) * v
    return out
