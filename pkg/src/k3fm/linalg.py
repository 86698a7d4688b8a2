"""Exact integer and rational linear algebra.

Matrices are plain lists of row lists holding Python ``int`` or
``fractions.Fraction`` entries.  Nothing here ever touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from .errors import NotSymmetric, SingularMatrix

Matrix = List[List[int]]
RatMatrix = List[List[Fraction]]


def as_matrix(A: Sequence[Sequence]) -> list:
    return [list(row) for row in A]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(A: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*A)] if A else []


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vecmat(v: Sequence, A: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    n = len(A[0]) if A else 0
    out = [0] * n
    for vi, row in zip(v, A):
        if vi:
            for j in range(n):
                out[j] += vi * row[j]
    return out


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def bilinear(u: Sequence, G: Sequence[Sequence], v: Sequence):
    """u G v^T for row vectors u, v."""
    return dot(vecmat(u, G), v)


def is_symmetric(A: Sequence[Sequence]) -> bool:
    n = len(A)
    return all(len(row) == n for row in A) and all(
        A[i][j] == A[j][i] for i in range(n) for j in range(i + 1, n)
    )


def block_diagonal(*blocks: Sequence[Sequence[int]]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return out


def determinant(A: Sequence[Sequence]) -> int | Fraction:
    """Exact determinant; fraction-free Bareiss for integer input."""
    n = len(A)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in A for x in row):
        M = as_matrix(A)
        sign = 1
        prev = 1
        for k in range(n - 1):
            if M[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
                if swap is None:
                    return 0
                M[k], M[swap] = M[swap], M[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            prev = M[k][k]
        return sign * M[n - 1][n - 1]
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                for j in range(k, n):
                    M[i][j] -= f * M[k][j]
    return det


def rational_inverse(A: Sequence[Sequence]) -> RatMatrix:
    """Gauss-Jordan inverse over Q.  Raises SingularMatrix."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("rational_inverse needs a square matrix")
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        M[k], M[piv] = M[piv], M[k]
        p = M[k][k]
        M[k] = [x / p for x in M[k]]
        for i in range(n):
            if i != k and M[i][k] != 0:
                f = M[i][k]
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return [row[n:] for row in M]


def integer_inverse(A: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular integer matrix, as integers."""
    inv = rational_inverse(A)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def is_unimodular(A: Sequence[Sequence[int]]) -> bool:
    return len(A) == len(A[0]) and abs(determinant(A)) == 1


# -- row/column helpers for the normal forms --------------------------------

def _row_addmul(M, dst, src, f):
    if f:
        rd, rs = M[dst], M[src]
        for j in range(len(rd)):
            rd[j] += f * rs[j]


def _col_addmul(M, dst, src, f):
    if f:
        for row in M:
            row[dst] += f * row[src]


def _col_swap(M, a, b):
    for row in M:
        row[a], row[b] = row[b], row[a]


def smith_normal_form(A: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """Return ``(S, U, V)`` with ``U*A*V == S`` in Smith form.

    S is diagonal with entries d1 | d2 | ... >= 0, U and V are unimodular.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = as_matrix(A)
    U = identity(m)
    V = identity(n)

    for t in range(min(m, n)):
        nz = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        S[t], S[i0] = S[i0], S[t]
        U[t], U[i0] = U[i0], U[t]
        _col_swap(S, t, j0)
        _col_swap(V, t, j0)
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    f = S[i][t] // p
                    _row_addmul(S, i, t, -f)
                    _row_addmul(U, i, t, -f)
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    f = S[t][j] // p
                    _col_addmul(S, j, t, -f)
                    _col_addmul(V, j, t, -f)
                    dirty = dirty or S[t][j] != 0
            if dirty:
                # move the smallest remaining entry of row/column t to the pivot
                cands = [(abs(S[i][t]), i, t) for i in range(t, m) if S[i][t]]
                cands += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, i1, j1 = min(cands)
                if i1 != t:
                    S[t], S[i1] = S[i1], S[t]
                    U[t], U[i1] = U[i1], U[t]
                if j1 != t:
                    _col_swap(S, t, j1)
                    _col_swap(V, t, j1)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            _row_addmul(S, t, bad[0], 1)
            _row_addmul(U, t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return S, U, V


def hermite_normal_form(A: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix]:
    """Row-style Hermite normal form: ``U*A == H``.

    H is in row echelon form with positive pivots, entries above each pivot
    reduced into ``[0, pivot)``, and zero rows at the bottom.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = as_matrix(A)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [(abs(H[i][c]), i) for i in range(r, m) if H[i][c]]
            if not nz:
                break
            _, i0 = min(nz)
            H[r], H[i0] = H[i0], H[r]
            U[r], U[i0] = U[i0], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    f = H[i][c] // H[r][c]
                    _row_addmul(H, i, r, -f)
                    _row_addmul(U, i, r, -f)
                    done = done and H[i][c] == 0
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            f = H[i][c] // p
            _row_addmul(H, i, r, -f)
            _row_addmul(U, i, r, -f)
        r += 1
    return H, U


def signature(G: Sequence[Sequence]) -> Tuple[int, int]:
    """(p, n) of a nonsingular symmetric matrix by congruence diagonalization."""
    if not is_symmetric(G):
        raise NotSymmetric("Gram matrix is not symmetric")
    M = [[Fraction(x) for x in row] for row in G]
    k = len(M)
    pos = neg = 0
    for t in range(k):
        if M[t][t] == 0:
            j = next((j for j in range(t + 1, k) if M[j][j] != 0), None)
            if j is not None:
                M[t], M[j] = M[j], M[t]
                for row in M:
                    row[t], row[j] = row[j], row[t]
            else:
                j = next((j for j in range(t + 1, k) if M[t][j] != 0), None)
                if j is None:
                    raise SingularMatrix("Gram matrix is singular")
                # e_t <- e_t + e_j makes the diagonal entry 2*M[t][j] != 0
                for c in range(k):
                    M[t][c] += M[j][c]
                for row in M:
                    row[t] += row[j]
        p = M[t][t]
        for i in range(t + 1, k):
            f = M[i][t] / p
            if f:
                for c in range(t, k):
                    M[i][c] -= f * M[t][c]
                for r in range(t, k):
                    M[r][i] -= f * M[r][t]
        if p > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0


def common_denominator(values) -> int:
    den = 1
    for v in values:
        den = lcm(den, Fraction(v).denominator)
    return den
