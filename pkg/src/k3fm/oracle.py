"""Brute-force cross-checks behind ``k3fm oracle``.

Each check recomputes a quantity by a route that shares no code with the
main path (direct enumeration with Fractions, unit counting, subset
counting) and compares.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd
from typing import Callable, Iterable, List, Tuple

from .discform import DiscriminantForm, isometry_group, isotropic_elements, perp_mod, is_isometric
from .fmcount import HodgeGroupSpec, count_fm
from .lattice import discriminant_form, named, rank_one, rescale, direct_sum
from .overlattice import overlattice
from .picard1 import (
    admissible_d, closed_count, divisibility, factorize, list_partners, mukai_pairing, sigma_set,
)


def brute_isotropic(D: DiscriminantForm, d: int) -> List[Tuple[int, ...]]:
    out = []
    for x in product(*(range(f) for f in D.factors)):
        order = 1
        while any(order * c % f for c, f in zip(x, D.factors)):
            order += 1
        if order != d:
            continue
        val = sum(Fraction(x[i] * x[j]) * D.b_gens[i][j]
                  for i in range(D.rank) for j in range(D.rank) if i != j)
        val += sum(x[i] * x[i] * D.q_gens[i] for i in range(D.rank))
        if val % 2 == 0:
            out.append(tuple(x))
    return out


def brute_rank_one_isometries(m: int) -> int:
    """|O(Z/2m, q = 1/2m)|: units u mod 2m with u^2 = 1 mod 4m."""
    N = 2 * m
    return sum(1 for u in range(N) if gcd(u, N) == 1 and (u * u - 1) % (2 * N) == 0)


def omega(m: int) -> int:
    return len(factorize(m))


def check_picard_engine(ns: Iterable[int]) -> Tuple[bool, str]:
    bad = []
    for n in ns:
        for d in admissible_d(n):
            got = count_fm(rank_one(2 * n), d, HodgeGroupSpec.plus_minus()).total
            if got != closed_count(n, d):
                bad.append((n, d, got))
    return not bad, f"mismatches {bad}" if bad else "generic engine = closed formula"


def check_isotropic(ns: Iterable[int]) -> Tuple[bool, str]:
    forms = [discriminant_form(rank_one(2 * n))[0] for n in ns]
    forms.append(discriminant_form(rescale(named("U"), 2))[0])
    forms.append(discriminant_form(direct_sum(rank_one(4), rank_one(-12)))[0])
    for D in forms:
        for d in range(1, max(D.factors, default=1) + 1):
            if isotropic_elements(D, d) != brute_isotropic(D, d):
                return False, f"I^{d} differs on {D}"
    return True, f"{len(forms)} forms agree with exhaustive filter"


def check_orthogonal_orders(ms=(2, 3, 4, 6, 12, 30)) -> Tuple[bool, str]:
    for m in ms:
        D, _ = discriminant_form(rank_one(2 * m))
        got = len(isometry_group(D))
        if got != 2 ** omega(m) or got != brute_rank_one_isometries(m):
            return False, f"|O(D_<{2 * m}>)| = {got}"
    if len(isometry_group(DiscriminantForm.cyclic(2, Fraction(1, 2)))) != 1:
        return False, "|O(Z/2, 1/2)| != 1"
    return True, "orders 2^omega(m) confirmed"


def check_overlattices() -> Tuple[bool, str]:
    lattices = [rank_one(8), rank_one(72), rescale(named("U"), 4),
                direct_sum(named("U"), rank_one(-8)), direct_sum(rank_one(4), rank_one(-4))]
    count = 0
    for L in lattices:
        D, _ = discriminant_form(L)
        for d in range(2, max(D.factors) + 1):
            for x in isotropic_elements(D, d):
                ov = overlattice(L, x)
                if abs(ov.M.det) * d * d != abs(L.det):
                    return False, f"det check failed for {L}, x={x}"
                if is_isometric(discriminant_form(ov.M)[0], perp_mod(D, x)) is None:
                    return False, f"D_M not isometric to x-perp/<x> for {L}, x={x}"
                count += 1
    return True, f"{count} overlattices verified"


def check_partners(ns: Iterable[int]) -> Tuple[bool, str]:
    for n in ns:
        for d in admissible_d(n):
            t = omega(n // (d * d)) or 1
            if len(sigma_set(n, d)) != 2 ** (t - 1):
                return False, f"|Sigma| wrong for n={n}, d={d}"
            parts = list_partners(n, d)
            if len(parts) != closed_count(n, d):
                return False, f"partner count wrong for n={n}, d={d}"
            for p in parts:
                v = p.v
                if mukai_pairing(n, v, v) or gcd(gcd(v[0], v[1]), v[2]) != 1 \
                        or divisibility(n, v) != d:
                    return False, f"bad Mukai vector {v} for n={n}, d={d}"
    return True, "Sigma sizes, partner counts and Mukai invariants hold"


def run_all(ns: List[int]) -> List[Tuple[str, bool, str]]:
    checks: List[Tuple[str, Callable[[], Tuple[bool, str]]]] = [
        ("picard1-engine", lambda: check_picard_engine(ns)),
        ("isotropic-filter", lambda: check_isotropic([n for n in ns if n <= 100])),
        ("orthogonal-orders", check_orthogonal_orders),
        ("overlattice", check_overlattices),
        ("mukai-partners", lambda: check_partners(ns)),
    ]
    out = []
    for name, fn in checks:
        ok, detail = fn()
        out.append((name, ok, detail))
    return out
