"""Exact integer linear algebra: Smith normal form, cokernels, N-solutions.

Matrices are plain lists of row lists of Python ints (arbitrary precision).
"""
from __future__ import annotations

from typing import NamedTuple, Sequence


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def matvec(M, x):
    return [sum(m * v for m, v in zip(row, x)) for row in M]


def shape(M):
    return len(M), (len(M[0]) if M else 0)


def _smith(M, ncols=None):
    """Return U, Uinv, D, V, Vinv with M = U D V."""
    rows = len(M)
    cols = len(M[0]) if M else (ncols or 0)
    D = [list(map(int, r)) for r in M]
    U, Uinv = identity(rows), identity(rows)
    V, Vinv = identity(cols), identity(cols)

    # Row op D <- E D updates U <- U E^-1 and Uinv <- E Uinv.
    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        Uinv[i], Uinv[j] = Uinv[j], Uinv[i]
        for r in U:
            r[i], r[j] = r[j], r[i]

    def row_add(i, j, k):  # row_i += k * row_j
        if k == 0:
            return
        D[i] = [a + k * b for a, b in zip(D[i], D[j])]
        Uinv[i] = [a + k * b for a, b in zip(Uinv[i], Uinv[j])]
        for r in U:
            r[j] -= k * r[i]

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        Uinv[i] = [-a for a in Uinv[i]]
        for r in U:
            r[i] = -r[i]

    # Column op D <- D F updates V <- F^-1 V and Vinv <- Vinv F.
    def col_swap(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in Vinv:
            r[i], r[j] = r[j], r[i]
        V[i], V[j] = V[j], V[i]

    def col_add(i, j, k):  # col_i += k * col_j
        if k == 0:
            return
        for r in D:
            r[i] += k * r[j]
        for r in Vinv:
            r[i] += k * r[j]
        V[j] = [a - k * b for a, b in zip(V[j], V[i])]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            p = D[t][t]
            done = True
            for i in range(t + 1, rows):
                q = D[i][t] // p
                row_add(i, t, -q)
                if D[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = D[t][j] // p
                col_add(j, t, -q)
                if D[t][j]:
                    done = False
            if not done:
                best = None
                for i in range(t, rows):
                    if D[i][t] and (best is None or abs(D[i][t]) < abs(D[best][t])):
                        best = i
                best_c = None
                for j in range(t, cols):
                    if D[t][j] and (best_c is None or abs(D[t][j]) < abs(D[t][best_c])):
                        best_c = j
                if abs(D[best][t]) <= abs(D[t][best_c]):
                    row_swap(t, best)
                else:
                    col_swap(t, best_c)
                continue
            # divisibility: every remaining entry must be a multiple of the pivot
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if D[t][t] < 0:
            row_neg(t)
        t += 1
    return U, Uinv, D, V, Vinv


def smith_normal_form(M):
    """Return ``(U, D, V)`` with ``M = U D V``, U and V unimodular.

    D is diagonal with non-negative entries d_1 | d_2 | ... .
    """
    U, _, D, V, _ = _smith(M)
    return U, D, V


def diagonal(D):
    return [D[i][i] for i in range(min(shape(D)))]


class Cokernel(NamedTuple):
    free_rank: int
    torsion: tuple


def cokernel_presentation(M, nrows=None) -> Cokernel:
    """Cokernel of ``M: Z^cols -> Z^rows`` as (free rank, torsion invariants)."""
    rows = len(M) if M else (nrows or 0)
    if not M or not M[0]:
        return Cokernel(rows, ())
    _, D, _ = smith_normal_form(M)
    diag = [d for d in diagonal(D) if d]
    return Cokernel(rows - len(diag), tuple(d for d in diag if d > 1))


def determinant(M):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, r)) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def solve_unimodular(T, y):
    """Solve ``T z = y`` for square unimodular T; returns None if no integer solution."""
    n = len(T)
    U, Uinv, D, V, Vinv = _smith(T, n)
    w = matvec(Uinv, y)
    z = []
    for i in range(n):
        d = D[i][i]
        if d == 0 or w[i] % d:
            return None
        z.append(w[i] // d)
    return matvec(Vinv, z)


class NonnegSolutions(NamedTuple):
    solutions: list
    cap_hit: bool


def _dfs(M, v, cap, cols, limit=None):
    rows = len(v)
    colv = [[M[i][j] for i in range(rows)] for j in range(cols)]
    # suffix bounds on what columns j.. can still contribute per row
    lo = [[0] * rows for _ in range(cols + 1)]
    hi = [[0] * rows for _ in range(cols + 1)]
    for j in range(cols - 1, -1, -1):
        for i in range(rows):
            m = colv[j][i] * cap
            lo[j][i] = lo[j + 1][i] + min(0, m)
            hi[j][i] = hi[j + 1][i] + max(0, m)
    out = []
    x = [0] * cols

    def feasible(j, r):
        return all(lo[j][i] <= r[i] <= hi[j][i] for i in range(rows))

    def rec(j, r):
        if limit is not None and len(out) >= limit:
            return
        if j == cols:
            if not any(r):
                out.append(tuple(x))
            return
        col = colv[j]
        for val in range(cap + 1):
            nr = [r[i] - val * col[i] for i in range(rows)] if val else r
            if feasible(j + 1, nr):
                x[j] = val
                rec(j + 1, nr)
        x[j] = 0

    if feasible(0, list(v)):
        rec(0, list(v))
    return out


def solve_nonneg(M: Sequence[Sequence[int]], v: Sequence[int], cap: int,
                 check_cap: bool = True, ncols: int | None = None) -> NonnegSolutions:
    """All ``x`` in ``[0, cap]^cols`` with ``M x = v``, in lexicographic order.

    ``cap_hit`` is set when the box boundary is active, i.e. some solution
    exists in ``[0, cap+1]^cols`` with a coordinate equal to ``cap + 1``.
    """
    if cap < 0:
        raise ValueError("cap must be non-negative")
    M = [list(r) for r in M]
    if len(M) != len(v):
        raise ValueError("row count of M and length of v differ")
    cols = len(M[0]) if M else (ncols or 0)
    sols = _dfs(M, v, cap, cols)
    hit = False
    if check_cap:
        bigger = _dfs(M, v, cap + 1, cols)
        hit = any(max(s, default=0) == cap + 1 for s in bigger)
    return NonnegSolutions(sols, hit)
