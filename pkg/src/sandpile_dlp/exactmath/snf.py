"""Smith normal form with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass

from sandpile_dlp.exactmath.linalg import matmul


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal.

    ``U_inv`` is kept as well: its columns are the group generators when
    ``A`` is a reduced Laplacian.
    """

    U: list
    S: list
    V: list
    U_inv: list

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]

    @property
    def invariant_factors(self) -> list[int]:
        """Diagonal entries other than 1 (zeros kept, they are free factors)."""
        return [d for d in self.diagonal if d != 1]

    def check(self, A) -> bool:
        return matmul(matmul(self.U, A), self.V) == self.S


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A) -> SnfDecomposition:
    """Reduce ``A`` by elementary row/column operations, pivoting on the
    smallest nonzero entry (in absolute value) of the trailing block."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [list(map(int, r)) for r in A]
    U = _identity(rows)
    Ui = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        rd, rs = M[dst], M[src]
        for k in range(cols):
            if rs[k]:
                rd[k] += q * rs[k]
        ud, us = U[dst], U[src]
        for k in range(rows):
            if us[k]:
                ud[k] += q * us[k]
        for r in Ui:
            if r[dst]:
                r[src] -= q * r[dst]

    def add_col(dst, src, q):
        for r in M:
            if r[src]:
                r[dst] += q * r[src]
        for r in V:
            if r[src]:
                r[dst] += q * r[src]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = M[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                return _finish(M, U, V, Ui)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = M[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if M[i][t]:
                    q = M[i][t] // p
                    add_row(i, t, -q)
                    dirty = dirty or M[i][t] != 0
            for j in range(t + 1, cols):
                if M[t][j]:
                    q = M[t][j] // p
                    add_col(j, t, -q)
                    dirty = dirty or M[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows)
                 if any(M[i][j] % p for j in range(t + 1, cols))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            negate_row(t)
    return _finish(M, U, V, Ui)


def _finish(M, U, V, Ui):
    return SnfDecomposition(U=U, S=M, V=V, U_inv=Ui)
