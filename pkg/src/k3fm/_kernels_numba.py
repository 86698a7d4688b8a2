"""numba ports of :mod:`k3fm._kernels_numpy` (same signatures, same results)."""
import numpy as np
from numba import njit


@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def grid(counts, steps):
    k = counts.shape[0]
    total = 1
    for i in range(k):
        total *= counts[i]
    out = np.zeros((total, k), dtype=np.int64)
    idx = np.zeros(k, dtype=np.int64)
    for r in range(total):
        for i in range(k):
            out[r, i] = idx[i] * steps[i]
        # odometer, last coordinate fastest (lexicographic order)
        i = k - 1
        while i >= 0:
            idx[i] += 1
            if idx[i] < counts[i]:
                break
            idx[i] = 0
            i -= 1
    return out


@njit(cache=True)
def q_table(E, Qn, Bn, scale):
    mod = 2 * scale
    n, k = E.shape
    out = np.zeros(n, dtype=np.int64)
    for r in range(n):
        acc = 0
        for i in range(k):
            ci = E[r, i] % mod
            acc = (acc + (ci * ci % mod) * Qn[i]) % mod
            for j in range(i + 1, k):
                acc = (acc + 2 * ((ci * (E[r, j] % mod)) % mod) * Bn[i, j]) % mod
        out[r] = acc
    return out


@njit(cache=True)
def _weights(y, Bn, scale):
    k = y.shape[0]
    w = np.zeros(k, dtype=np.int64)
    for j in range(k):
        acc = 0
        for i in range(k):
            acc = (acc + y[i] * (Bn[i, j] % scale)) % scale
        w[j] = acc
    return w


@njit(cache=True)
def pair_table(E, y, Bn, scale):
    n, k = E.shape
    w = _weights(y, Bn, scale)
    out = np.zeros(n, dtype=np.int64)
    for r in range(n):
        acc = 0
        for j in range(k):
            acc = (acc + (E[r, j] % scale) * w[j]) % scale
        out[r] = acc
    return out


@njit(cache=True)
def order_table(E, factors):
    n, k = E.shape
    out = np.ones(n, dtype=np.int64)
    for r in range(n):
        acc = 1
        for i in range(k):
            o = factors[i] // _gcd(E[r, i] % factors[i], factors[i])
            acc = acc // _gcd(acc, o) * o
        out[r] = acc
    return out


@njit(cache=True)
def match_pairings(C, images, targets, Bn, scale):
    n, k = C.shape
    m = images.shape[0]
    W = np.zeros((m, k), dtype=np.int64)
    for j in range(m):
        W[j] = _weights(images[j], Bn, scale)
    mask = np.ones(n, dtype=np.bool_)
    for r in range(n):
        for j in range(m):
            acc = 0
            for i in range(k):
                acc = (acc + (C[r, i] % scale) * W[j, i]) % scale
            if acc != targets[j]:
                mask[r] = False
                break
    return mask
