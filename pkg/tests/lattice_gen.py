"""Seeded generators of small even lattices for the randomized tests."""
import random

from k3fm.lattice import make_lattice
from k3fm.linalg import block_diagonal, determinant, matmul, transpose


def random_unimodular(rng: random.Random, n: int, steps: int = 6):
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        f = rng.choice([-2, -1, 1, 2])
        P[i] = [a + f * b for a, b in zip(P[i], P[j])]
    if rng.random() < 0.5:
        P[0] = [-a for a in P[0]]
    return P


def random_block(rng: random.Random):
    kind = rng.choice(["rank1", "rank1", "U", "Ut", "two"])
    if kind == "rank1":
        a = rng.choice([-1, 1]) * rng.randint(1, 12)
        return [[2 * a]]
    if kind == "U":
        return [[0, 1], [1, 0]]
    if kind == "Ut":
        t = rng.randint(2, 5)
        return [[0, t], [t, 0]]
    while True:
        a, c = rng.randint(-4, 4), rng.randint(-4, 4)
        b = rng.randint(-3, 3)
        g = [[2 * a, b], [b, 2 * c]]
        if determinant(g) != 0:
            return g


def random_gram(rng: random.Random, max_det: int = 500, max_rank: int = 4):
    """An even nondegenerate Gram matrix with 1 < |det| <= max_det."""
    while True:
        blocks = [random_block(rng) for _ in range(rng.randint(1, 3))]
        G = block_diagonal(*blocks)
        if len(G) > max_rank:
            continue
        det = abs(determinant(G))
        if 1 < det <= max_det:
            P = random_unimodular(rng, len(G))
            return matmul(matmul(P, G), transpose(P))


def random_lattice(rng: random.Random, **kw):
    return make_lattice(random_gram(rng, **kw))
