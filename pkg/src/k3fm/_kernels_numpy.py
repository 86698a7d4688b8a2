"""Pure-numpy kernels over tabulated elements of a finite quadratic form.

Elements are int64 coefficient rows.  q- and b-values are integers scaled by
a common ``scale``: q is returned mod ``2*scale`` and b mod ``scale``.
"""
import numpy as np


def grid(counts, steps):
    counts = np.asarray(counts, dtype=np.int64)
    steps = np.asarray(steps, dtype=np.int64)
    k = counts.shape[0]
    total = int(np.prod(counts)) if k else 1
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    axes = [np.arange(c, dtype=np.int64) * s for c, s in zip(counts, steps)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(total) for m in mesh], axis=1)


def q_table(E, Qn, Bn, scale):
    mod = 2 * scale
    E = E % mod
    out = np.zeros(E.shape[0], dtype=np.int64)
    k = E.shape[1]
    for i in range(k):
        ci = E[:, i]
        out = (out + (ci * ci % mod) * Qn[i]) % mod
        for j in range(i + 1, k):
            out = (out + 2 * ((ci * E[:, j]) % mod) * Bn[i, j]) % mod
    return out


def pair_table(E, y, Bn, scale):
    # w_j = sum_i y_i B_ij, then b(e, y) = sum_j e_j w_j
    w = (np.asarray(y, dtype=np.int64) @ (Bn % scale)) % scale
    return (E % scale) @ w % scale if E.shape[1] else np.zeros(E.shape[0], dtype=np.int64)


def order_table(E, factors):
    factors = np.asarray(factors, dtype=np.int64)
    out = np.ones(E.shape[0], dtype=np.int64)
    for i in range(factors.shape[0]):
        o = factors[i] // np.gcd(E[:, i], factors[i])
        out = np.lcm(out, o)
    return out


def match_pairings(C, images, targets, Bn, scale):
    """Mask of rows c of C with b(c, images[j]) == targets[j] for every j."""
    mask = np.ones(C.shape[0], dtype=np.bool_)
    for j in range(images.shape[0]):
        mask &= pair_table(C, images[j], Bn, scale) == targets[j]
    return mask
