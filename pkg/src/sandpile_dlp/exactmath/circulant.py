"""Spectral formula for the pseudoinverse of a circulant matrix.

Only used as a floating-point cross-check of the exact pseudoinverse: the
first row ``b`` of the pseudoinverse of the circulant with first row ``a`` is

    b_i = (1/n) sum_j beta_j * (lam * w**j) ** (-i)

with ``w`` a primitive n-th root of unity, ``mu_j = sum_k a_k w**(j*k)`` the
eigenvalues, ``beta_j = 1/mu_j`` (or 0 when ``mu_j`` vanishes) and ``lam = 1``.
"""

from __future__ import annotations

import mpmath

DEFAULT_PREC = 256


def is_circulant(rows) -> bool:
    n = len(rows)
    first = list(rows[0])
    return all(list(rows[i]) == first[-i:] + first[:-i] for i in range(1, n))


def circulant_pinv_first_row(first_row, prec: int = DEFAULT_PREC, lam=1):
    """First row of the circulant pseudoinverse as ``mpmath.mpf`` values.

    ``first_row`` may also be a full square matrix, in which case it is
    checked to be circulant first.
    """
    first_row = list(first_row)
    if first_row and isinstance(first_row[0], (list, tuple)):
        if not is_circulant(first_row):
            raise ValueError("matrix is not circulant")
        first_row = list(first_row[0])
    n = len(first_row)
    if n == 0:
        raise ValueError("empty row")
    with mpmath.workprec(prec):
        w = mpmath.exp(2j * mpmath.pi / n)
        lam = mpmath.mpc(lam)
        # eigenvalue zero is exact in theory; anything below this is rounding
        zero_tol = mpmath.mpf(2) ** (-(prec // 2))
        betas = []
        for j in range(n):
            mu = mpmath.fsum(a * w ** (j * k) for k, a in enumerate(first_row))
            betas.append(0 if abs(mu) < zero_tol else 1 / mu)
        out = []
        for i in range(n):
            b = mpmath.fsum(beta * (lam * w**j) ** (-i) for j, beta in enumerate(betas)) / n
            out.append(+b.real)
    return out
