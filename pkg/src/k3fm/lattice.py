"""Even nondegenerate lattices, their construction expressions and discriminant forms."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .discform import DiscElement, DiscriminantForm
from .errors import Degenerate, NotSymmetric, OddDiagonal, ParseError, UnknownName
from .linalg import (
    block_diagonal,
    determinant,
    is_symmetric,
    signature as _signature,
    smith_normal_form,
    vecmat,
)

Gram = Tuple[Tuple[int, ...], ...]

U_GRAM = ((0, 1), (1, 0))

# Cartan matrix of E8 (Bourbaki numbering), negated below
_E8_CARTAN = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, -1),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, -1, 0, 0, 0, 0, 2),
)
E8_GRAM = tuple(tuple(-v for v in row) for row in _E8_CARTAN)


# -- construction expressions -------------------------------------------------

@dataclass(frozen=True)
class Atom:
    """U, E8, a rank-one lattice <2m>, or a raw Gram block."""

    kind: str  # "U" | "E8" | "RankOne" | "Gram"
    gram: Gram

    def __str__(self):
        if self.kind in ("U", "E8"):
            return self.kind
        if self.kind == "RankOne":
            return f"<{self.gram[0][0]}>"
        return "gram" + json.dumps([list(r) for r in self.gram], separators=(",", ":"))


@dataclass(frozen=True)
class DirectSum:
    parts: Tuple["LatticeExpr", ...]

    def __str__(self):
        return " + ".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class Rescale:
    inner: "LatticeExpr"
    t: int

    def __str__(self):
        inner = str(self.inner)
        if isinstance(self.inner, DirectSum):
            inner = f"({inner})"
        return f"{inner}({self.t})"


LatticeExpr = Union[Atom, DirectSum, Rescale]


def elaborate(expr: LatticeExpr) -> List[List[int]]:
    if isinstance(expr, Atom):
        return [list(r) for r in expr.gram]
    if isinstance(expr, DirectSum):
        return block_diagonal(*(elaborate(p) for p in expr.parts))
    return [[expr.t * v for v in row] for row in elaborate(expr.inner)]


def flatten(expr: LatticeExpr) -> List[LatticeExpr]:
    """Top-level direct summands, with nested direct sums flattened."""
    if isinstance(expr, DirectSum):
        out = []
        for p in expr.parts:
            out.extend(flatten(p))
        return out
    return [expr]


# -- lattices -------------------------------------------------------------------

@dataclass(frozen=True)
class EvenLattice:
    gram: Gram
    expr: Optional[LatticeExpr] = field(default=None, compare=False)
    signature: Tuple[int, int] = field(default=(0, 0), compare=False)

    def __post_init__(self):
        g = tuple(tuple(int(v) for v in row) for row in self.gram)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square and nonempty")
        if not is_symmetric(g):
            raise NotSymmetric("Gram matrix is not symmetric")
        if any(g[i][i] % 2 for i in range(n)):
            raise OddDiagonal("lattice is not even (odd diagonal entry)")
        if determinant(g) == 0:
            raise Degenerate("Gram matrix is degenerate")
        object.__setattr__(self, "gram", g)
        if self.expr is None:
            object.__setattr__(self, "expr", Atom("Gram", g))
        object.__setattr__(self, "signature", _signature(g))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return determinant(self.gram)

    @property
    def is_definite(self) -> bool:
        return 0 in self.signature

    def pair(self, u, v):
        return sum(u[i] * self.gram[i][j] * v[j]
                   for i in range(self.rank) for j in range(self.rank) if u[i] and v[j])

    def __str__(self):
        return str(self.expr)


def make_lattice(gram, expr: Optional[LatticeExpr] = None) -> EvenLattice:
    return EvenLattice(tuple(tuple(r) for r in gram), expr)


def _from_expr(expr: LatticeExpr) -> EvenLattice:
    return EvenLattice(tuple(tuple(r) for r in elaborate(expr)), expr)


def rank_one(square: int) -> EvenLattice:
    return _from_expr(Atom("RankOne", ((int(square),),)))


def direct_sum(*lattices: EvenLattice) -> EvenLattice:
    parts = []
    for L in lattices:
        parts.extend(flatten(L.expr))
    return _from_expr(DirectSum(tuple(parts)))


def rescale(L: EvenLattice, t: int) -> EvenLattice:
    if t == 0:
        raise Degenerate("rescaling by 0")
    if t == 1:
        return L
    return _from_expr(Rescale(L.expr, int(t)))


def named(name: str) -> EvenLattice:
    key = name.strip()
    if key == "U":
        return _from_expr(Atom("U", U_GRAM))
    if key == "E8":
        return _from_expr(Atom("E8", E8_GRAM))
    if key in ("Lambda_K3", "LK3"):
        return direct_sum(*[named("U")] * 3, *[named("E8")] * 2)
    if key in ("Lambda_tilde_K3", "LK3t"):
        return direct_sum(named("U"), named("Lambda_K3"))
    raise UnknownName(f"unknown lattice name {name!r}")


# -- discriminant forms ---------------------------------------------------------

@dataclass(frozen=True)
class _DiscData:
    form: DiscriminantForm
    gens: Tuple[Tuple[Fraction, ...], ...]
    V: Tuple[Tuple[int, ...], ...]
    keep: Tuple[int, ...]


@lru_cache(maxsize=512)
def _disc_data(gram: Gram) -> _DiscData:
    S, U, V = smith_normal_form([list(r) for r in gram])
    n = len(gram)
    keep = tuple(i for i in range(n) if S[i][i] > 1)
    gens = tuple(tuple(Fraction(u, S[i][i]) for u in U[i]) for i in keep)

    def pairing(u, v):
        return sum(u[a] * gram[a][b] * v[b] for a in range(n) for b in range(n))

    form = DiscriminantForm(
        tuple(S[i][i] for i in keep),
        tuple(pairing(g, g) for g in gens),
        tuple(tuple(pairing(g, h) for h in gens) for g in gens),
    )
    return _DiscData(form, gens, tuple(tuple(r) for r in V), keep)


def discriminant_form(L: EvenLattice):
    """(D_L, gens) where gens[i] is the i-th generator as a rational vector in L-coordinates."""
    data = _disc_data(L.gram)
    return data.form, [list(g) for g in data.gens]


def disc_coordinates(L: EvenLattice, v) -> DiscElement:
    """Class in D_L of a vector v of L^dual, given in L-coordinates."""
    data = _disc_data(L.gram)
    y = vecmat(list(v), L.gram)
    if any(Fraction(c).denominator != 1 for c in y):
        raise ValueError("vector is not in the dual lattice")
    yv = vecmat([int(c) for c in y], data.V)
    return tuple(int(yv[i]) % d for i, d in zip(data.keep, data.form.factors))


def disc_lift(L: EvenLattice, x: DiscElement) -> List[Fraction]:
    """The stored rational lift of x in L tensor Q."""
    data = _disc_data(L.gram)
    out = [Fraction(0)] * L.rank
    for c, g in zip(x, data.gens):
        if c:
            for j in range(L.rank):
                out[j] += c * g[j]
    return out


def is_two_elementary(L: EvenLattice) -> bool:
    return all(d == 2 for d in discriminant_form(L)[0].factors)


def min_generators(D: DiscriminantForm) -> int:
    """l(D): number of nontrivial invariant factors."""
    return len(D.invariant_factors)


def nikulin_singleton(L: EvenLattice) -> bool:
    """Indefinite and rank >= l(D_L) + 2 (genus is {L}, r_L surjective)."""
    p, n = L.signature
    return p > 0 and n > 0 and L.rank >= min_generators(discriminant_form(L)[0]) + 2


def contains_u_summand(L: EvenLattice) -> bool:
    return any(isinstance(p, Atom) and p.kind == "U" for p in flatten(L.expr))


def u_summand_count(L: EvenLattice) -> int:
    return sum(1 for p in flatten(L.expr) if isinstance(p, Atom) and p.kind == "U")


# -- expression grammar -------------------------------------------------------
#   expr := term ('+' term)* ; term := atom | atom '(' int ')'
#   atom := 'U' | 'E8' | 'LK3' | '<' int '>' | 'gram:' path

_INT = re.compile(r"[+-]?\d+")


class _Parser:
    def __init__(self, text: str, base_dir: Optional[Path] = None):
        self.text = text
        self.pos = 0
        self.base_dir = base_dir

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self, s: str) -> bool:
        self._skip()
        return self.text.startswith(s, self.pos)

    def _expect(self, s: str):
        if not self._peek(s):
            raise ParseError(f"expected {s!r}", self.pos)
        self.pos += len(s)

    def _int(self) -> int:
        self._skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise ParseError("expected an integer", self.pos)
        self.pos = m.end()
        return int(m.group())

    def parse(self) -> EvenLattice:
        L = self._expr()
        self._skip()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return L

    def _expr(self) -> EvenLattice:
        terms = [self._term()]
        while self._peek("+"):
            self.pos += 1
            terms.append(self._term())
        return terms[0] if len(terms) == 1 else direct_sum(*terms)

    def _term(self) -> EvenLattice:
        L = self._atom()
        if self._peek("("):
            self.pos += 1
            t = self._int()
            self._expect(")")
            if t == 0:
                raise ParseError("rescale factor must be nonzero", self.pos - 1)
            L = rescale(L, t)
        return L

    def _atom(self) -> EvenLattice:
        self._skip()
        start = self.pos
        if self._peek("<"):
            self.pos += 1
            m = self._int()
            self._expect(">")
            if m == 0 or m % 2:
                raise ParseError(f"<{m}> is not an even nondegenerate rank-one lattice", start)
            return rank_one(m)
        if self._peek("gram:"):
            self.pos += len("gram:")
            end = self.pos
            while end < len(self.text) and not self.text[end].isspace() and self.text[end] not in "+(":
                end += 1
            path = self.text[self.pos:end]
            if not path:
                raise ParseError("expected a file path after 'gram:'", self.pos)
            self.pos = end
            return load_gram_file(path, self.base_dir)
        for name in ("LK3", "E8", "U"):
            if self._peek(name):
                self.pos += len(name)
                return named(name)
        raise ParseError("expected U, E8, LK3, <int> or gram:<path>", start)


def parse_lattice(text: str, base_dir: Optional[Path] = None) -> EvenLattice:
    return _Parser(text, base_dir).parse()


def load_gram_file(path, base_dir: Optional[Path] = None) -> EvenLattice:
    p = Path(path)
    if base_dir is not None and not p.is_absolute():
        p = base_dir / p
    try:
        data = json.loads(p.read_text())
    except OSError as exc:
        raise ParseError(f"cannot read Gram file {str(p)!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"Gram file {str(p)!r} is not valid JSON: {exc.msg}", exc.pos) from None
    gram = data.get("gram") if isinstance(data, dict) else None
    if not isinstance(gram, list) or not all(
            isinstance(r, list) and all(isinstance(v, int) for v in r) for r in gram):
        raise ParseError(f"Gram file {str(p)!r} must hold {{\"gram\": [[int, ...], ...]}}")
    return make_lattice(gram)
