"""Exact linear algebra over fields of Python scalars (mpq, QQi, Radical).

Matrices are lists of rows.  Nothing here mutates its arguments.
"""

from __future__ import annotations

from itertools import combinations

import gmpy2
from gmpy2 import mpfr

from .scalars import QQi, Radical, as_exact, conj

__all__ = [
    "det",
    "eye",
    "hermitian_pivots",
    "inverse",
    "is_hermitian",
    "is_positive_definite",
    "is_positive_semidefinite",
    "lower_triangular_inverse",
    "matmul",
    "nullspace",
    "rank",
    "rref",
    "conj_transpose",
    "transpose",
]


def eye(n: int, one=None) -> list[list]:
    one = QQi(1) if one is None else one
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def conj_transpose(M):
    return [[conj(x) for x in col] for col in zip(*M)]


def matmul(A, B):
    Bt = transpose(B)
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def rref(rows, ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; pivots are chosen at the lowest column index."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [x / p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int, zero=None, one=None) -> list[list]:
    """Basis of {x : rows @ x = 0}, one vector per free column, ascending."""
    zero = QQi(0) if zero is None else zero
    one = QQi(1) if one is None else one
    R, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def det(M):
    n = len(M)
    if n == 0:
        return QQi(1)
    A = [list(r) for r in M]
    sign = 1
    result = None
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return A[0][0] - A[0][0]
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        result = p if result is None else result * p
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / p
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return result if sign > 0 else -result


def inverse(M):
    n = len(M)
    one = as_exact(1)
    zero = as_exact(0)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R[:n]]


def lower_triangular_inverse(T):
    """Inverse of a lower-triangular matrix; only diagonal entries are divided by."""
    n = len(T)
    zero = T[0][0] - T[0][0]
    Q = [[zero] * n for _ in range(n)]
    for j in range(n):
        Q[j][j] = 1 / T[j][j]
        for i in range(j + 1, n):
            acc = zero
            for c in range(j, i):
                acc = acc + T[i][c] * Q[c][j]
            Q[i][j] = -acc / T[i][i]
    return Q


def is_hermitian(M) -> bool:
    n = len(M)
    return all(M[i][j] == conj(M[j][i]) for i in range(n) for j in range(n))


def hermitian_pivots(M) -> list:
    """Pivots of symmetric Gaussian elimination without row exchanges.

    For a Hermitian matrix these are the ratios of consecutive leading
    principal minors; all positive iff the matrix is positive definite.
    Elimination stops at the first zero pivot.
    """
    A = [list(r) for r in M]
    n = len(A)
    pivots = []
    for c in range(n):
        p = A[c][c]
        pivots.append(p)
        if not p:
            break
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / p
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return pivots


def _positive(x) -> bool:
    x = as_exact(x)
    if isinstance(x, Radical):
        if x.is_rational():
            x = x.to_qqi()
        elif not x.is_real():
            return False
        elif len(x.parts) == 1:
            return next(iter(x.parts.values())).re > 0
        else:
            # multi-class real radical: high-precision evaluation, refuse near-ties
            with gmpy2.local_context(gmpy2.context(), precision=512):
                v = sum(mpfr(z.re) * gmpy2.sqrt(m) for m, z in x.parts.items())
                if abs(v) < mpfr(2) ** -400:
                    raise ArithmeticError("cannot decide the sign of a near-zero radical")
                return v > 0
    return not x.im and x.re > 0


def is_positive_definite(M) -> bool:
    if not is_hermitian(M):
        return False
    piv = hermitian_pivots(M)
    return len(piv) == len(M) and all(_positive(p) for p in piv)


def is_positive_semidefinite(M) -> bool:
    """All principal minors nonnegative (exact; intended for small n)."""
    if not is_hermitian(M):
        return False
    n = len(M)
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            m = as_exact(det([[M[i][j] for j in idx] for i in idx]))
            if m and not _positive(m):
                return False
    return True
