"""Fraction-free elimination and the exact Laplacian pseudoinverse.

Matrices are plain row-major lists; integer matrices hold ``int`` and
rational ones hold :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class SingularMatrixError(ArithmeticError):
    pass


def transpose(A):
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def bareiss_det(A) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        row_k = M[k]
        for i in range(k + 1, n):
            row_i = M[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def bareiss_inverse(A) -> tuple[list[list[int]], int]:
    """Return ``(R, d)`` with ``A^{-1} = R / d`` for an integer matrix ``A``.

    Fraction-free Gauss-Jordan on ``[A | I]``: every intermediate entry is a
    minor of the augmented matrix, so the divisions are exact and the final
    left block is ``d * I`` with ``d = +-det(A)``.
    """
    n = len(A)
    M = [list(map(int, row)) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    width = 2 * n
    prev = 1
    for k in range(n):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    break
            else:
                raise SingularMatrixError("matrix is singular")
        pivot = M[k][k]
        row_k = M[k]
        for i in range(n):
            if i == k:
                continue
            row_i = M[i]
            factor = row_i[k]
            if factor == 0:
                if pivot != prev:
                    for j in range(width):
                        row_i[j] = pivot * row_i[j] // prev
                continue
            for j in range(width):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
        prev = pivot
    d = M[0][0]
    return [row[n:] for row in M], d


def pseudoinverse(L, n: int | None = None) -> list[list[Fraction]]:
    """Moore-Penrose pseudoinverse of a connected-graph Laplacian.

    Uses ``P = (L + J/n)^{-1} - J/n`` where ``J`` is the all-ones matrix; the
    inverse is taken of the integer matrix ``n*L + J`` so elimination stays
    in the integers.
    """
    if n is None:
        n = len(L)
    if len(L) != n or any(len(row) != n for row in L):
        raise ValueError(f"expected a {n}x{n} matrix")
    B = [[n * L[i][j] + 1 for j in range(n)] for i in range(n)]
    try:
        R, d = bareiss_inverse(B)
    except SingularMatrixError:
        raise SingularMatrixError("L + J/n is singular: graph is disconnected") from None
    shift = Fraction(1, n)
    return [[Fraction(n * R[i][j], d) - shift for j in range(n)] for i in range(n)]


def _scaled(A) -> tuple[list[list[int]], int]:
    """Integer matrix ``k*A`` and the common denominator ``k``."""
    k = 1
    for row in A:
        for x in row:
            den = Fraction(x).denominator
            k = k * den // gcd(k, den)
    return [[int(Fraction(x) * k) for x in row] for row in A], k


def is_moore_penrose(A, P) -> bool:
    """Check the four Moore-Penrose identities exactly.

    Both matrices are scaled to integers first (``A' = a*A``, ``P' = p*P``);
    then ``APA = A`` iff ``A'P'A' = ap*A'`` and likewise for ``PAP``.
    """
    A, a = _scaled(A)
    P, p = _scaled(P)
    ap = a * p
    AP = matmul(A, P)
    PA = matmul(P, A)
    return (
        matmul(AP, A) == [[ap * x for x in row] for row in A]
        and matmul(PA, P) == [[ap * x for x in row] for row in P]
        and transpose(AP) == AP
        and transpose(PA) == PA
    )
