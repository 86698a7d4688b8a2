"""Even overlattices generated by one isotropic discriminant element."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Tuple

from .discform import (
    DEFAULT_CAP,
    DiscElement,
    DiscriminantForm,
    FiniteIsometry,
    Subquotient,
    perp_mod,
    perp_mod_presentation,
)
from .errors import InvariantViolation, NotIsotropic
from .lattice import EvenLattice, disc_coordinates, disc_lift, discriminant_form, make_lattice
from .linalg import common_denominator, hermite_normal_form, matmul, transpose

__all__ = ["OverlatticeResult", "overlattice", "perp_mod"]


@dataclass(frozen=True)
class OverlatticeResult:
    """M = <x, L> together with how L and D_M sit relative to it.

    ``basis`` holds M's basis rows in L-coordinates; ``embed`` holds L's
    basis rows in M-coordinates.  The twist datum is the pair
    (``d``, ``x``): the map M -> M/L = <x> = Z/d sending the lift of x to 1.
    """

    L: EvenLattice
    x: DiscElement
    M: EvenLattice
    basis: Tuple[Tuple[Fraction, ...], ...]
    embed: Tuple[Tuple[int, ...], ...]
    d: int
    induced_form: DiscriminantForm

    @property
    def index(self) -> int:
        return self.d

    @property
    def twist_order(self) -> int:
        return self.d

    def twist(self, v) -> int:
        """alpha_x(v) in Z/d for v in M (M-coordinates); alpha_x(lift of x) = 1."""
        w = [sum(v[i] * self.basis[i][j] for i in range(len(v))) for j in range(self.L.rank)]
        D_L, _ = discriminant_form(self.L)
        z = disc_coordinates(self.L, w)
        for t in range(self.d):
            if D_L.mul(t, self.x) == z:
                return t
        raise ValueError("vector is not in the overlattice")

    @cached_property
    def _presentation(self) -> Subquotient:
        return perp_mod_presentation(discriminant_form(self.L)[0], self.x)

    def to_ambient(self, y: DiscElement) -> DiscElement:
        """Image of y in D_M inside x-perp of D_L (M-dual sits in L-dual)."""
        D_M, gens = discriminant_form(self.M)
        w = [Fraction(0)] * self.L.rank
        for c, g in zip(y, gens):
            if c:
                for i in range(self.M.rank):
                    if g[i]:
                        for j in range(self.L.rank):
                            w[j] += c * g[i] * self.basis[i][j]
        return disc_coordinates(self.L, w)

    def to_perp_mod(self, y: DiscElement) -> DiscElement:
        """The natural map D_M -> x-perp/<x>, in the coordinates of ``induced_form``."""
        return self._presentation.coords(self.to_ambient(y))

    def natural_isometry(self) -> FiniteIsometry:
        """D_M -> induced_form as images of D_M's generators."""
        D_M, _ = discriminant_form(self.M)
        k = D_M.rank
        images = tuple(self.to_perp_mod(tuple(int(i == j) for j in range(k))) for i in range(k))
        return FiniteIsometry(self.induced_form.factors, images)

    @cached_property
    def _inverse_table(self) -> Dict[DiscElement, DiscElement]:
        D_M, _ = discriminant_form(self.M)
        phi = self.natural_isometry()
        return {phi(y): y for y in D_M.elements(cap=max(DEFAULT_CAP, D_M.order))}

    def transfer(self, g: FiniteIsometry) -> FiniteIsometry:
        """Push an isometry of D_L fixing x down to an isometry of D_M."""
        if g(self.x) != self.x:
            raise ValueError("isometry does not fix x")
        D_M, _ = discriminant_form(self.M)
        pres = self._presentation
        table = self._inverse_table
        k = D_M.rank
        images = []
        for i in range(k):
            z = self.to_ambient(tuple(int(i == j) for j in range(k)))
            images.append(table[pres.coords(g(z))])
        return FiniteIsometry(D_M.factors, tuple(images))


def overlattice(L: EvenLattice, x: DiscElement) -> OverlatticeResult:
    """The even overlattice M_x spanned by L and the stored lift of x."""
    D_L, _ = discriminant_form(L)
    x = D_L.element(x)
    if D_L.q(x) != 0:
        raise NotIsotropic(f"q({x}) = {D_L.q(x)} is not 0 mod 2Z")
    d = D_L.order_of(x)
    r = L.rank
    lift = disc_lift(L, x)
    den = common_denominator(lift)
    rows = [[den * int(i == j) for j in range(r)] for i in range(r)]
    rows.append([int(v * den) for v in lift])
    H, _ = hermite_normal_form(rows)
    basis = [[Fraction(v, den) for v in row] for row in H[:r]]
    if any(v for v in H[r]):
        raise InvariantViolation("HNF left a nonzero extra row")
    G = [list(row) for row in L.gram]
    gram_q = matmul(matmul(basis, G), transpose(basis))
    if any(v.denominator != 1 for row in gram_q for v in row):
        raise InvariantViolation("overlattice Gram matrix is not integral")
    M = make_lattice([[int(v) for v in row] for row in gram_q])
    # L-basis in M-coordinates: identity = embed * basis
    embed = integer_inverse_scaled(H, den)
    res = OverlatticeResult(
        L=L, x=x, M=M,
        basis=tuple(tuple(row) for row in basis),
        embed=tuple(tuple(row) for row in embed),
        d=d,
        induced_form=perp_mod(D_L, x),
    )
    if abs(M.det) * d * d != abs(L.det) or M.signature != L.signature:
        raise InvariantViolation("overlattice determinant/signature check failed")
    return res


def integer_inverse_scaled(H: List[List[int]], den: int) -> List[List[int]]:
    """Inverse of H/den, which must be an integer matrix."""
    from .linalg import rational_inverse

    inv = rational_inverse(H[: len(H[0])])
    out = [[v * den for v in row] for row in inv]
    if any(v.denominator != 1 for row in out for v in row):
        raise InvariantViolation("L is not contained in the overlattice")
    return [[int(v) for v in row] for row in out]
