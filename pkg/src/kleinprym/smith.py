"""Smith normal form over the integers, with unimodular transforms.

Works on Python ints throughout, so there is no overflow and results are
exact.
"""

from __future__ import annotations

from typing import Sequence


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _to_int_matrix(a) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in a]
    for row, orig in zip(rows, a):
        for x, y in zip(row, orig):
            if x != y:
                raise ValueError(f"non-integer entry {y!r}")
    return rows


def smith_normal_form(a: Sequence[Sequence[int]]):
    """Return ``(S, U, V)`` with ``U @ A @ V == S``.

    ``S`` is diagonal with non-negative entries ``s_1 | s_2 | ...`` and ``U``,
    ``V`` are unimodular.  All three are lists of lists of ints.
    """
    A = _to_int_matrix(a)
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        for M in (A, U):
            M[dst] = [x + k * y for x, y in zip(M[dst], M[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for M in (A, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            U[t] = [-x for x in U[t]]
            A[t] = [-x for x in A[t]]
    return A, U, V


def elementary_divisors(a) -> tuple[int, ...]:
    """Diagonal of the Smith normal form (length ``min(rows, cols)``)."""
    S, _, _ = smith_normal_form(a)
    return tuple(S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)))


def int_det(a) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    M = _to_int_matrix(a)
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1] if n else 1


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def unimodular_inverse(a):
    """Inverse of an integer matrix with determinant +-1, exactly."""
    from fractions import Fraction

    n = len(a)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    inv = [row[n:] for row in M]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]
