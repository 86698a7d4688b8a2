"""Finite quadratic forms (D, q) and brute-force machinery on them.

A :class:`DiscriminantForm` is a finite abelian group ``Z/d1 + ... + Z/dk``
with ``q`` valued in Q/2Z and ``b`` valued in Q/Z, both recorded on the
generators.  Elements are plain tuples of residues (``coeffs[i]`` in
``range(d_i)``); every set-valued result is sorted lexicographically.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, prod
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import accel
from .errors import NotAGroup, NotIsotropic, NotSubgroup, TooLarge
from .linalg import hermite_normal_form, integer_inverse, lcm, smith_normal_form, vecmat

DEFAULT_CAP = 10_000

DiscElement = Tuple[int, ...]

_ONE = Fraction(1)
_TWO = Fraction(2)


def _mod(x: Fraction, m: Fraction) -> Fraction:
    return x - m * (x // m)


@dataclass(frozen=True)
class DiscriminantForm:
    factors: Tuple[int, ...]
    q_gens: Tuple[Fraction, ...]
    b_gens: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        factors = tuple(int(d) for d in self.factors)
        k = len(factors)
        q = tuple(_mod(Fraction(v), _TWO) for v in self.q_gens)
        b = tuple(tuple(_mod(Fraction(v), _ONE) for v in row) for row in self.b_gens)
        if len(q) != k or len(b) != k or any(len(row) != k for row in b):
            raise ValueError("q_gens/b_gens do not match the number of factors")
        for i, d in enumerate(factors):
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
            if (d * q[i]).denominator != 1 or (d * d * q[i]) % 2 != 0:
                raise ValueError(f"q on generator {i} is not defined mod {d}")
            if b[i][i] != _mod(q[i], _ONE):
                raise ValueError(f"b({i},{i}) is not q mod 1 on generator {i}")
            for j in range(k):
                if b[i][j] != b[j][i]:
                    raise ValueError("b_gens is not symmetric")
                if (d * b[i][j]).denominator != 1:
                    raise ValueError(f"b({i},{j}) is not killed by {d}")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "q_gens", q)
        object.__setattr__(self, "b_gens", b)

    # -- constructors -------------------------------------------------------

    @classmethod
    def trivial(cls) -> "DiscriminantForm":
        return cls((), (), ())

    @classmethod
    def cyclic(cls, d: int, q) -> "DiscriminantForm":
        q = Fraction(q)
        return cls((d,), (q,), ((q,),))

    # -- basic data ---------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    def __len__(self):
        return self.order

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    @property
    def zero(self) -> DiscElement:
        return (0,) * self.rank

    @cached_property
    def invariant_factors(self) -> Tuple[int, ...]:
        """The invariant factors of the underlying group (chain d1 | d2 | ...)."""
        k = self.rank
        diag = [[self.factors[i] if i == j else 0 for j in range(k)] for i in range(k)]
        S, _, _ = smith_normal_form(diag)
        return tuple(S[i][i] for i in range(k) if S[i][i] > 1)

    def element(self, coeffs: Iterable[int]) -> DiscElement:
        coeffs = tuple(coeffs)
        if len(coeffs) != self.rank:
            raise ValueError("wrong number of coefficients")
        return tuple(c % d for c, d in zip(coeffs, self.factors))

    def add(self, x: DiscElement, y: DiscElement) -> DiscElement:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def neg(self, x: DiscElement) -> DiscElement:
        return tuple(-a % d for a, d in zip(x, self.factors))

    def mul(self, t: int, x: DiscElement) -> DiscElement:
        return tuple(t * a % d for a, d in zip(x, self.factors))

    def q(self, x: DiscElement) -> Fraction:
        total = Fraction(0)
        for i, ci in enumerate(x):
            if ci:
                total += ci * ci * self.q_gens[i]
                for j in range(i + 1, self.rank):
                    if x[j]:
                        total += 2 * ci * x[j] * self.b_gens[i][j]
        return _mod(total, _TWO)

    def b(self, x: DiscElement, y: DiscElement) -> Fraction:
        total = Fraction(0)
        for i, ci in enumerate(x):
            if ci:
                row = self.b_gens[i]
                for j, cj in enumerate(y):
                    if cj:
                        total += ci * cj * row[j]
        return _mod(total, _ONE)

    def order_of(self, x: DiscElement) -> int:
        out = 1
        for c, d in zip(x, self.factors):
            out = lcm(out, d // gcd(c, d))
        return out

    def is_isotropic(self, x: DiscElement) -> bool:
        return self.q(x) == 0

    # -- element tables -----------------------------------------------------

    @cached_property
    def scale(self) -> int:
        """Common denominator for q and b over the generators."""
        return 2 * max(self.factors, default=1)

    def scaled_tables(self, scale: Optional[int] = None):
        """(Qn, Bn) int64 arrays: q_i*scale mod 2*scale, b_ij*scale mod scale."""
        scale = self.scale if scale is None else scale
        Qn = np.array([int(v * scale) % (2 * scale) for v in self.q_gens], dtype=np.int64)
        Bn = np.array([[int(v * scale) % scale for v in row] for row in self.b_gens],
                      dtype=np.int64).reshape(self.rank, self.rank)
        return Qn, Bn

    def _grid(self, counts, steps, cap: int) -> np.ndarray:
        size = prod(counts)
        if size > cap:
            raise TooLarge(f"enumeration of {size} elements exceeds cap {cap}")
        return accel.grid(np.array(counts, dtype=np.int64), np.array(steps, dtype=np.int64))

    def element_array(self, cap: int = DEFAULT_CAP) -> np.ndarray:
        return self._grid(self.factors, [1] * self.rank, cap)

    def torsion_array(self, d: int, cap: int = DEFAULT_CAP) -> np.ndarray:
        """All x with d*x = 0, lexicographically ordered."""
        counts = [gcd(d, f) for f in self.factors]
        steps = [f // c for f, c in zip(self.factors, counts)]
        return self._grid(counts, steps, cap)

    def elements(self, cap: int = DEFAULT_CAP) -> List[DiscElement]:
        return [tuple(int(c) for c in row) for row in self.element_array(cap)]

    def q_array(self, E: np.ndarray, scale: Optional[int] = None) -> np.ndarray:
        scale = self.scale if scale is None else scale
        if scale <= accel.MAX_SCALE:
            Qn, Bn = self.scaled_tables(scale)
            return accel.q_table(E, Qn, Bn, scale)
        return np.array([int(self.q(tuple(int(c) for c in row)) * scale) for row in E],
                        dtype=object)

    def order_array(self, E: np.ndarray) -> np.ndarray:
        if not self.rank:
            return np.ones(E.shape[0], dtype=np.int64)
        return accel.order_table(E, np.array(self.factors, dtype=np.int64))

    @cached_property
    def _radical_trivial(self) -> Optional[bool]:
        if self.order > DEFAULT_CAP or self.scale > accel.MAX_SCALE:
            return None
        E = self.element_array()
        _, Bn = self.scaled_tables()
        mask = np.ones(E.shape[0], dtype=np.bool_)
        for i in range(self.rank):
            e = np.zeros(self.rank, dtype=np.int64)
            e[i] = 1
            mask &= accel.pair_table(E, e, Bn, self.scale) == 0
        return int(mask.sum()) == 1

    def is_nondegenerate(self) -> bool:
        flag = self._radical_trivial
        if flag is None:
            raise TooLarge("form too large for the nondegeneracy check")
        return flag

    def __str__(self):
        if self.is_trivial:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.factors)


# -- module-level operations on forms ------------------------------------------

def q_value(D: DiscriminantForm, x: DiscElement) -> Fraction:
    return D.q(x)


def b_value(D: DiscriminantForm, x: DiscElement, y: DiscElement) -> Fraction:
    return D.b(x, y)


def element_order(D: DiscriminantForm, x: DiscElement) -> int:
    return D.order_of(x)


def negate_form(D: DiscriminantForm) -> DiscriminantForm:
    """(D, -q): same group, q and b negated."""
    return DiscriminantForm(D.factors, tuple(-v for v in D.q_gens),
                            tuple(tuple(-v for v in row) for row in D.b_gens))


def isotropic_elements(D: DiscriminantForm, d: int, cap: int = DEFAULT_CAP) -> List[DiscElement]:
    """I^d(D): elements of exact order d with q = 0 mod 2Z, sorted."""
    if d < 1:
        raise ValueError("d must be >= 1")
    E = D.torsion_array(d, cap)
    keep = (D.order_array(E) == d) & (D.q_array(E) == 0)
    return [tuple(int(c) for c in row) for row in E[keep]]


# -- isometries ---------------------------------------------------------------

@dataclass(frozen=True, order=True)
class FiniteIsometry:
    """Automorphism of a finite form, given by the images of its generators."""

    factors: Tuple[int, ...]
    images: Tuple[DiscElement, ...]

    @classmethod
    def identity(cls, factors) -> "FiniteIsometry":
        k = len(factors)
        return cls(tuple(factors), tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    @classmethod
    def negation(cls, factors) -> "FiniteIsometry":
        k = len(factors)
        return cls(tuple(factors),
                   tuple(tuple((-int(i == j)) % factors[j] for j in range(k)) for i in range(k)))

    @classmethod
    def scalar(cls, factors, u: int) -> "FiniteIsometry":
        k = len(factors)
        return cls(tuple(factors),
                   tuple(tuple((u * int(i == j)) % factors[j] for j in range(k)) for i in range(k)))

    def __call__(self, x: DiscElement) -> DiscElement:
        out = [0] * len(self.factors)
        for c, img in zip(x, self.images):
            if c:
                for j, v in enumerate(img):
                    out[j] += c * v
        return tuple(v % d for v, d in zip(out, self.factors))

    def compose(self, other: "FiniteIsometry") -> "FiniteIsometry":
        """self after other."""
        return FiniteIsometry(self.factors, tuple(self(img) for img in other.images))

    __matmul__ = compose

    @property
    def is_identity(self) -> bool:
        return self == FiniteIsometry.identity(self.factors)

    def inverse(self) -> "FiniteIsometry":
        prev, cur = FiniteIsometry.identity(self.factors), self
        while not cur.is_identity:
            prev, cur = cur, self @ cur
        return prev

    def order(self) -> int:
        n, cur = 1, self
        while not cur.is_identity:
            cur, n = self @ cur, n + 1
        return n

    def preserves(self, D: DiscriminantForm) -> bool:
        """True iff this is an automorphism of D preserving q."""
        if tuple(self.factors) != D.factors:
            return False
        k = D.rank
        for i in range(k):
            y = self.images[i]
            if D.order_of(y) != D.factors[i] or D.q(y) != D.q_gens[i]:
                return False
            for j in range(i + 1, k):
                if D.b(y, self.images[j]) != D.b_gens[i][j]:
                    return False
        return _is_bijective(D, D, self.images)

    def as_json(self):
        return [list(img) for img in self.images]


def _is_bijective(D1: DiscriminantForm, D2: DiscriminantForm, images) -> bool:
    flag = D1._radical_trivial
    if flag:
        return True  # preserving a nondegenerate b forces injectivity
    E = D1.element_array(cap=max(DEFAULT_CAP, D1.order))
    Y = np.array(images, dtype=np.int64).reshape(D1.rank, D2.rank)
    img = (E @ Y) % np.array(D2.factors, dtype=np.int64) if D2.rank else E[:, :0]
    return np.unique(img, axis=0).shape[0] == D1.order


def _isometry_search(D1: DiscriminantForm, D2: DiscriminantForm, first_only: bool,
                     cap: int):
    if D1.order > cap or D2.order > cap:
        raise TooLarge(f"|D| = {max(D1.order, D2.order)} exceeds cap {cap}")
    if D1.invariant_factors != D2.invariant_factors:
        return []
    k = D1.rank
    if k == 0:
        return [()]
    scale = lcm(D1.scale, D2.scale)
    if scale > accel.MAX_SCALE:
        raise TooLarge("q/b denominators too large for the enumeration kernels")
    Q1, B1 = D1.scaled_tables(scale)
    _, B2 = D2.scaled_tables(scale)
    E2 = D2.element_array(cap)
    q2 = D2.q_array(E2, scale)
    o2 = D2.order_array(E2)
    cands = [E2[(o2 == D1.factors[i]) & (q2 == Q1[i])] for i in range(k)]
    if any(c.shape[0] == 0 for c in cands):
        return []

    found = []
    chosen: List[np.ndarray] = []

    def rec(i):
        C = cands[i]
        if i:
            imgs = np.array(chosen, dtype=np.int64)
            targets = np.array([B1[j, i] for j in range(i)], dtype=np.int64)
            C = C[accel.match_pairings(C, imgs, targets, B2, scale)]
        for row in C:
            chosen.append(row)
            if i + 1 == k:
                images = tuple(tuple(int(v) for v in r) for r in chosen)
                if _is_bijective(D1, D2, images):
                    found.append(images)
            else:
                rec(i + 1)
            chosen.pop()
            if first_only and found:
                return

    rec(0)
    return found


def isometry_group(D: DiscriminantForm, cap: int = DEFAULT_CAP) -> List[FiniteIsometry]:
    """O(D, q) by exhaustive search over generator images, sorted."""
    if D.is_trivial:
        return [FiniteIsometry.identity(())]
    return sorted(FiniteIsometry(D.factors, imgs) for imgs in _isometry_search(D, D, False, cap))


def is_isometric(D1: DiscriminantForm, D2: DiscriminantForm,
                 cap: int = DEFAULT_CAP) -> Optional[FiniteIsometry]:
    """Some isometry D1 -> D2 (images of D1's generators in D2), or None.

    The returned object carries D2's factors so that it can be applied to
    D1-elements and yields D2-elements.
    """
    if D1.invariant_factors != D2.invariant_factors:
        return None
    found = _isometry_search(D1, D2, True, cap)
    if not found:
        return None
    return FiniteIsometry(D2.factors, found[0])


# -- group actions ------------------------------------------------------------

def check_group(G: Sequence[FiniteIsometry], exc=NotAGroup) -> None:
    if not G:
        raise exc("empty set of isometries")
    Gset = set(G)
    if FiniteIsometry.identity(G[0].factors) not in Gset:
        raise exc("identity missing")
    for g in G:
        for h in G:
            if g @ h not in Gset:
                raise exc("not closed under composition")


def group_closure(gens: Sequence[FiniteIsometry], factors) -> List[FiniteIsometry]:
    """Smallest group containing ``gens``."""
    ident = FiniteIsometry.identity(tuple(factors))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s @ g
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(seen)


def orbit(G: Sequence[FiniteIsometry], x: DiscElement) -> List[DiscElement]:
    return sorted({g(x) for g in G})


def stabilizer(G: Sequence[FiniteIsometry], x: DiscElement) -> List[FiniteIsometry]:
    return [g for g in G if g(x) == x]


def orbits(G: Sequence[FiniteIsometry], S: Iterable[DiscElement]) -> List[DiscElement]:
    """Lexicographically least representative of every G-orbit in S."""
    G = list(G)
    check_group(G)
    S = sorted(set(S))
    Sset = set(S)
    seen = set()
    reps = []
    for x in S:
        if x in seen:
            continue
        orb = {g(x) for g in G}
        if not orb <= Sset:
            raise ValueError("set is not stable under the group")
        seen |= orb
        reps.append(x)
    return reps


def double_cosets(G: Sequence[FiniteIsometry], A: Sequence[FiniteIsometry],
                  B: Sequence[FiniteIsometry]) -> List[frozenset]:
    """The double cosets A g B partitioning G, in order of first member."""
    G = list(G)
    Gset = set(G)
    for H, name in ((A, "A"), (B, "B")):
        H = list(H)
        if not set(H) <= Gset:
            raise NotSubgroup(f"{name} is not contained in G")
        check_group(H, NotSubgroup)
    seen = set()
    out = []
    for g in sorted(G):
        if g in seen:
            continue
        coset = frozenset(a @ g @ b for a in A for b in B)
        seen |= coset
        out.append(coset)
    return out


def double_coset_count(G, A, B) -> int:
    """#(A \\ G / B)."""
    return len(double_cosets(G, A, B))


# -- subquotients ---------------------------------------------------------------

@dataclass(frozen=True)
class Subquotient:
    """A form presented as (lattice of D-coordinates) / (relations).

    ``gens`` are the new generators as D-elements; :meth:`coords` maps a
    D-element of the sublattice to coordinates in the new form.
    """

    form: DiscriminantForm
    ambient: DiscriminantForm
    gens: Tuple[DiscElement, ...]
    basis_inv: Tuple[Tuple[Fraction, ...], ...]
    V: Tuple[Tuple[int, ...], ...]
    keep: Tuple[int, ...]

    def coords(self, z: DiscElement) -> DiscElement:
        # z is any integer lift of an element of the sublattice
        c = vecmat(list(z), self.basis_inv)
        if any(Fraction(v).denominator != 1 for v in c):
            raise ValueError("element is not in the sublattice")
        cv = vecmat([int(v) for v in c], self.V)
        return tuple(int(cv[i]) % d for i, d in zip(self.keep, self.form.factors))


def subquotient(D: DiscriminantForm, basis: Sequence[Sequence[int]],
                relations: Sequence[Sequence[int]]) -> Subquotient:
    """Quotient of span(basis) by span(relations), both in D-coordinates.

    The relations must lie in span(basis) and must include ``d_i e_i``.
    """
    from .linalg import rational_inverse

    binv = rational_inverse(basis)
    R = []
    for rel in relations:
        row = vecmat(list(rel), binv)
        if any(Fraction(v).denominator != 1 for v in row):
            raise ValueError("relation outside the sublattice")
        R.append([int(v) for v in row])
    S, _, V = smith_normal_form(R)
    k = len(basis)
    diag = [S[i][i] if i < len(S) else 0 for i in range(k)]
    if any(s == 0 for s in diag):
        raise ValueError("relations do not have full rank")
    keep = tuple(i for i, s in enumerate(diag) if s > 1)
    Vinv = integer_inverse(V)
    gens = tuple(D.element(vecmat(Vinv[i], basis)) for i in keep)
    factors = tuple(diag[i] for i in keep)
    form = DiscriminantForm(factors, tuple(D.q(g) for g in gens),
                            tuple(tuple(D.b(g, h) for h in gens) for g in gens))
    return Subquotient(form, D, gens, tuple(tuple(r) for r in binv),
                       tuple(tuple(r) for r in V), keep)


def normalize(D: DiscriminantForm) -> DiscriminantForm:
    """Re-present D on invariant-factor generators d1 | d2 | ..."""
    k = D.rank
    ident = [[int(i == j) for j in range(k)] for i in range(k)]
    rels = [[D.factors[i] if i == j else 0 for j in range(k)] for i in range(k)]
    return subquotient(D, ident, rels).form if k else D


def orthogonal_sum(D1: DiscriminantForm, D2: DiscriminantForm) -> DiscriminantForm:
    k1, k2 = D1.rank, D2.rank
    b = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
    for i in range(k1):
        for j in range(k1):
            b[i][j] = D1.b_gens[i][j]
    for i in range(k2):
        for j in range(k2):
            b[k1 + i][k1 + j] = D2.b_gens[i][j]
    raw = DiscriminantForm(D1.factors + D2.factors, D1.q_gens + D2.q_gens,
                           tuple(tuple(r) for r in b))
    return normalize(raw)


def perp_lattice_basis(D: DiscriminantForm, x: DiscElement) -> List[List[int]]:
    """Basis of {c in Z^k : b(x, c) = 0 mod Z}, the lift of x-perp."""
    k = D.rank
    betas = [D.b(x, tuple(int(i == j) for j in range(k))) for i in range(k)]
    den = 1
    for v in betas:
        den = lcm(den, v.denominator)
    a = [[int(v * den)] for v in betas]
    H, U = hermite_normal_form(a)
    g = H[0][0] if k else 0
    if g == 0:
        return [[int(i == j) for j in range(k)] for i in range(k)]
    m = den // gcd(g, den)
    return [[m * v for v in U[0]]] + [list(r) for r in U[1:]]


def perp_mod_presentation(D: DiscriminantForm, x: DiscElement) -> Subquotient:
    if D.q(x) != 0:
        raise NotIsotropic(f"q({x}) = {D.q(x)} is not 0 mod 2Z")
    k = D.rank
    if k == 0:
        return subquotient(D, [], [])
    rels = [[D.factors[i] if i == j else 0 for j in range(k)] for i in range(k)]
    rels.append(list(x))
    return subquotient(D, perp_lattice_basis(D, x), rels)


def perp_mod(D: DiscriminantForm, x: DiscElement) -> DiscriminantForm:
    """The form on x-perp / <x> for isotropic x."""
    return perp_mod_presentation(D, x).form
