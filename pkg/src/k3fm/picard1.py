"""Picard rank one: NS(S) = ZH with (H, H) = 2n.

Closed-form partner counts, the subset family Sigma, the Mukai vectors
v = (d r, k~ H, k~^2 d s) and the isomorphism rule between partners.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod
from typing import List, Tuple

from .errors import DNotAdmissible, InvariantViolation, MismatchedProblem


def factorize(m: int) -> List[Tuple[int, int]]:
    """Prime factorization of m >= 1 as sorted (p, e) pairs."""
    if m < 1:
        raise ValueError("m must be positive")
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def tau_primes(m: int) -> int:
    """Number of distinct primes of m, with the convention tau(1) = 1."""
    return len(factorize(m)) or 1


def euler_phi(d: int) -> int:
    if d < 1:
        raise ValueError("d must be positive")
    return prod((p - 1) * p ** (e - 1) for p, e in factorize(d))


def units(d: int) -> List[int]:
    """Representatives of (Z/d)^x in 1..d (for d = 1 this is [1])."""
    return [k for k in range(1, d + 1) if gcd(k, d) == 1]


def admissible_d(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % (d * d) == 0]


def closed_count(n: int, d: int) -> int:
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    if n % (d * d):
        return 0
    t = tau_primes(n // (d * d))
    if d >= 3 and d * d == n:
        return euler_phi(d) * 2 ** (t - 1) // 2
    return euler_phi(d) * 2 ** (t - 1)


@dataclass(frozen=True)
class PicardOneProblem:
    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("n and d must be positive")
        if self.n % (self.d * self.d):
            raise DNotAdmissible(f"d^2 = {self.d ** 2} does not divide n = {self.n}")

    @property
    def m(self) -> int:
        return self.n // (self.d * self.d)


@dataclass(frozen=True)
class SigmaElement:
    sigma: Tuple[int, ...]   # 1-based indices into the prime list of n/d^2
    r: int
    s: int


def _prime_powers(m: int) -> List[Tuple[int, int]]:
    # for m = 1 the convention is a single "prime" p1 = e1 = 1
    return factorize(m) or [(1, 1)]


def sigma_set(n: int, d: int) -> List[SigmaElement]:
    """Nonempty index sets sigma with prod_{i in sigma} p_i^(2 e_i) >= n/d^2."""
    m = PicardOneProblem(n, d).m
    pp = _prime_powers(m)
    out = []
    for size in range(1, len(pp) + 1):
        for sub in combinations(range(1, len(pp) + 1), size):
            r = prod(pp[i - 1][0] ** pp[i - 1][1] for i in sub)
            if r * r >= m:
                out.append(SigmaElement(sub, r, m // r))
    return out


def k_tilde(k: int, d: int, n: int) -> int:
    """Smallest positive integer congruent to k mod d and coprime to 2n."""
    if gcd(k, d) != 1:
        raise ValueError(f"{k} is not a unit mod {d}")
    c = k % d or d
    while gcd(c, 2 * n) != 1:
        c += d
    return c


def mukai_pairing(n: int, v, w) -> int:
    """((r, cH, s), (r', c'H, s')) = c c' 2n - r s' - r' s."""
    return v[1] * w[1] * 2 * n - v[0] * w[2] - w[0] * v[2]


def divisibility(n: int, v) -> int:
    """gcd of the pairings of v against (1,0,0), (0,H,0), (0,0,1)."""
    return gcd(gcd(mukai_pairing(n, v, (1, 0, 0)), mukai_pairing(n, v, (0, 1, 0))),
               mukai_pairing(n, v, (0, 0, 1)))


@dataclass(frozen=True)
class MukaiPartner:
    n: int
    d: int
    sigma: SigmaElement
    k: int
    k_tilde: int
    v: Tuple[int, int, int]
    partner_ns_disc: int
    twist_order: int

    def as_json(self):
        return {
            "n": self.n, "d": self.d, "sigma": list(self.sigma.sigma),
            "r": self.sigma.r, "s": self.sigma.s, "k": self.k,
            "k_tilde": self.k_tilde, "v": list(self.v),
            "partner_ns_disc": self.partner_ns_disc, "twist_order": self.twist_order,
        }


def mukai_vector(p: PicardOneProblem, sigma: SigmaElement, k: int) -> MukaiPartner:
    kt = k_tilde(k, p.d, p.n)
    v = (p.d * sigma.r, kt, kt * kt * p.d * sigma.s)
    if mukai_pairing(p.n, v, v) != 0:
        raise InvariantViolation(f"{v} is not isotropic")
    if gcd(gcd(*v[:2]), v[2]) != 1:
        raise InvariantViolation(f"{v} is not primitive")
    if divisibility(p.n, v) != p.d:
        raise InvariantViolation(f"div{v} != {p.d}")
    return MukaiPartner(p.n, p.d, sigma, k % p.d if p.d > 1 else 1, kt, v,
                        2 * sigma.r * sigma.s, p.d)


def _needs_sign_identification(n: int, d: int) -> bool:
    return d >= 3 and d * d == n


def partner_keys(n: int, d: int) -> List[int]:
    """The k's listed for (n, d): all units, or min(k, d-k) representatives."""
    ks = units(d)
    if _needs_sign_identification(n, d):
        ks = [k for k in ks if k <= d - k]
    return ks


def list_partners(n: int, d: int) -> List[MukaiPartner]:
    p = PicardOneProblem(n, d)
    return [mukai_vector(p, sig, k) for sig in sigma_set(n, d) for k in partner_keys(n, d)]


def lambda_sign_pattern(sigma, tau_rs: int) -> List[int]:
    """+1 at the primes indexed by sigma, -1 elsewhere."""
    idx = set(sigma.sigma if isinstance(sigma, SigmaElement) else sigma)
    return [1 if i in idx else -1 for i in range(1, tau_rs + 1)]


def partner_distinct(p1: MukaiPartner, p2: MukaiPartner) -> bool:
    """True iff the two twisted partners are non-isomorphic."""
    if (p1.n, p1.d) != (p2.n, p2.d):
        raise MismatchedProblem("partners belong to different (n, d)")
    if p1.sigma.sigma != p2.sigma.sigma:
        return True
    d = p1.d
    if _needs_sign_identification(p1.n, d):
        return (p1.k - p2.k) % d != 0 and (p1.k + p2.k) % d != 0
    return (p1.k - p2.k) % d != 0
