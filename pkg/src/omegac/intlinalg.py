"""Exact integer linear algebra on lists of Python ints.

Matrices are lists of rows.  Vectors act on the left (row vectors), so the
lattice spanned by a matrix is its row space.
"""
from __future__ import annotations

from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(r) for r in A]


def shape(A: Sequence[Sequence[int]], ncols: int = None) -> Tuple[int, int]:
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    return m, n


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], ncols: int = None) -> Matrix:
    m = len(A)
    k = len(B)
    n = len(B[0]) if k else (ncols or 0)
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        row = A[i]
        o = out[i]
        for t in range(k):
            a = row[t]
            if a:
                bt = B[t]
                for j in range(n):
                    o[j] += a * bt[j]
    return out


def transpose(A: Sequence[Sequence[int]], ncols: int = 0) -> Matrix:
    if not A:
        return [[] for _ in range(ncols)]
    return [list(c) for c in zip(*A)]


def vecmat(x: Sequence[int], A: Sequence[Sequence[int]], ncols: int = None) -> List[int]:
    n = len(A[0]) if A else (ncols or 0)
    out = [0] * n
    for a, row in zip(x, A):
        if a:
            for j in range(n):
                out[j] += a * row[j]
    return out


def det(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = copy(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hermite


def hnf(A: Sequence[Sequence[int]], ncols: int = None) -> Tuple[Matrix, Matrix, int]:
    """Row Hermite normal form: ``H = U A`` with U unimodular.

    H is in row echelon form, pivots are positive, entries above a pivot lie
    in ``[0, pivot)``, and zero rows come last.  Returns ``(H, U, rank)``.
    """
    H = copy(A)
    m, n = shape(H, ncols)
    U = identity(m)
    r = 0
    for col in range(n):
        if r == m:
            break
        while True:
            best = None
            for i in range(r, m):
                v = H[i][col]
                if v and (best is None or abs(v) < abs(H[best][col])):
                    best = i
            if best is None:
                break
            if best != r:
                H[r], H[best] = H[best], H[r]
                U[r], U[best] = U[best], U[r]
            p = H[r][col]
            done = True
            for i in range(r + 1, m):
                v = H[i][col]
                if v:
                    q = v // p
                    if q:
                        _axpy(H[i], H[r], -q)
                        _axpy(U[i], U[r], -q)
                    if H[i][col]:
                        done = False
            if done:
                break
        if r < m and H[r][col]:
            if H[r][col] < 0:
                H[r] = [-v for v in H[r]]
                U[r] = [-v for v in U[r]]
            p = H[r][col]
            for i in range(r):
                q = H[i][col] // p
                if q:
                    _axpy(H[i], H[r], -q)
                    _axpy(U[i], U[r], -q)
            r += 1
    return H, U, r


def _axpy(y: List[int], x: Sequence[int], a: int) -> None:
    for j, v in enumerate(x):
        if v:
            y[j] += a * v


def lattice_basis(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Canonical basis (nonzero HNF rows) of the lattice spanned by ``rows``."""
    if not rows:
        return []
    H, _, r = hnf(rows, ncols)
    return H[:r]


def same_lattice(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], ncols: int) -> bool:
    return lattice_basis(A, ncols) == lattice_basis(B, ncols)


def left_kernel(A: Sequence[Sequence[int]], ncols: int = None) -> Matrix:
    """Basis of ``{x : x A = 0}``."""
    m, _ = shape(A, ncols)
    if m == 0:
        return []
    H, U, r = hnf(A, ncols)
    return [U[i] for i in range(r, m)]


# ---------------------------------------------------------------------------
# Smith


def snf(A: Sequence[Sequence[int]], ncols: int = None) -> Tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``S = U A V`` with U, V unimodular.

    The diagonal of S is nonnegative and each entry divides the next.
    """
    S = copy(A)
    m, n = shape(S, ncols)
    if m == 0:
        return S, [], identity(n)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, a):
        for row in S:
            row[dst] += a * row[src]
        for row in V:
            row[dst] += a * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = S[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                return S, U, V
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                q = S[i][t] // p
                if q:
                    _axpy(S[i], S[t], -q)
                    _axpy(U[i], U[t], -q)
                if S[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = S[t][j] // p
                if q:
                    add_col(j, t, -q)
                if S[t][j]:
                    clean = False
            if not clean:
                continue
            # divisibility of the remaining block
            bad = None
            for i in range(t + 1, m):
                if any(S[i][j] % p for j in range(t + 1, n)):
                    bad = i
                    break
            if bad is None:
                break
            _axpy(S[t], S[bad], 1)
            _axpy(U[t], U[bad], 1)
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
    return S, U, V


def diagonal(S: Sequence[Sequence[int]]) -> List[int]:
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def invariant_factors(A: Sequence[Sequence[int]], ncols: int = None) -> List[int]:
    S, _, _ = snf(A, ncols)
    return [d for d in diagonal(S) if d]


def is_unimodular(A: Sequence[Sequence[int]]) -> bool:
    return len(A) == (len(A[0]) if A else 0) and abs(det(A)) == 1


def inverse_unimodular(A: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular matrix via its Smith form (``I = U A V`` gives ``A^-1 = V U``)."""
    S, U, V = snf(A)
    if any(S[i][i] != 1 for i in range(len(S))):
        raise ValueError("matrix is not unimodular")
    return matmul(V, U)


def check_snf_certificate(A, S, U, V, ncols: int = None) -> bool:
    """Independent re-check of a Smith form trace."""
    m, n = shape(A, ncols)
    if m == 0:
        return True
    if matmul(matmul(U, A, n), V, n) != [list(r) for r in S]:
        return False
    if abs(det(U)) != 1 or abs(det(V)) != 1:
        return False
    d = diagonal(S)
    for i in range(m):
        for j in range(n):
            if i != j and S[i][j]:
                return False
    nz = [x for x in d if x]
    if any(x < 0 for x in nz) or d[:len(nz)] != nz:
        return False
    return all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
