import json
import random
from fractions import Fraction

import pytest

from k3fm.discform import DiscriminantForm
from k3fm.errors import Degenerate, NotSymmetric, OddDiagonal, ParseError, UnknownName
from k3fm.lattice import (
    contains_u_summand,
    direct_sum,
    disc_coordinates,
    disc_lift,
    discriminant_form,
    is_two_elementary,
    make_lattice,
    named,
    nikulin_singleton,
    parse_lattice,
    rank_one,
    rescale,
    u_summand_count,
)

from lattice_gen import random_lattice


def test_named_lattices():
    E8 = named("E8")
    assert E8.det == 1 and E8.signature == (0, 8)
    LK3 = named("LK3")
    assert LK3.rank == 22 and LK3.signature == (3, 19) and LK3.det == -1
    assert named("Lambda_tilde_K3").signature == (4, 20)
    assert discriminant_form(LK3)[0].is_trivial
    with pytest.raises(UnknownName):
        named("E7")


def test_validation():
    with pytest.raises(NotSymmetric):
        make_lattice([[2, 1], [0, 2]])
    with pytest.raises(OddDiagonal):
        make_lattice([[1]])
    with pytest.raises(Degenerate):
        make_lattice([[2, 2], [2, 2]])
    with pytest.raises(Degenerate):
        rescale(named("U"), 0)


def test_disc_examples():
    D, gens = discriminant_form(rank_one(6))
    assert D.factors == (6,) and D.q_gens == (Fraction(1, 6),)
    assert gens == [[Fraction(1, 6)]]
    D, _ = discriminant_form(rescale(named("U"), 2))
    assert D.factors == (2, 2)
    assert D.q_gens == (0, 0) and D.b_gens[0][1] == Fraction(1, 2)
    assert is_two_elementary(rescale(named("U"), 2))
    assert not is_two_elementary(rank_one(8))


def test_parser():
    L = parse_lattice("U + <-8>")
    assert L.gram == ((0, 1, 0), (1, 0, 0), (0, 0, -8))
    assert contains_u_summand(L) and u_summand_count(L) == 1
    assert not contains_u_summand(parse_lattice("U(2)"))
    assert parse_lattice("U(2)").gram == ((0, 2), (2, 0))
    assert parse_lattice("E8(-1)").signature == (8, 0)
    assert u_summand_count(parse_lattice("U+U+E8")) == 2
    assert parse_lattice("LK3") == named("LK3")


@pytest.mark.parametrize("text,pos", [("U+", 2), ("<3>", 0), ("U(0)", 3), ("X", 0), ("U V", 2)])
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_lattice(text)
    assert exc.value.position == pos


def test_gram_file(tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"gram": [[2, 1], [1, 2]]}))
    L = parse_lattice(f"gram:{f.name} + U", base_dir=tmp_path)
    assert L.rank == 4 and L.det == -3
    (tmp_path / "bad.json").write_text("{")
    with pytest.raises(ParseError):
        parse_lattice("gram:bad.json", base_dir=tmp_path)
    with pytest.raises(ParseError):
        parse_lattice("gram:missing.json", base_dir=tmp_path)


def test_unimodular_trivial():
    for text in ("U", "E8", "U+E8", "U+U+E8(-1)"):
        assert discriminant_form(parse_lattice(text))[0].is_trivial


def test_q_under_lifts():
    rng = random.Random(11)
    for _ in range(60):
        L = random_lattice(rng)
        D, _ = discriminant_form(L)
        x = tuple(rng.randrange(f) for f in D.factors)
        v = [c + rng.randint(-3, 3) for c in disc_lift(L, x)]
        assert disc_coordinates(L, v) == x
        assert (L.pair(v, v) - D.q(x)) % 2 == 0


def test_direct_sum_form():
    rng = random.Random(5)
    for _ in range(30):
        A, B = random_lattice(rng, max_det=40), random_lattice(rng, max_det=40)
        DA, DB = discriminant_form(A)[0], discriminant_form(B)[0]
        DS = discriminant_form(direct_sum(A, B))[0]
        assert DS.order == DA.order * DB.order
        assert sorted(DS.q_array(DS.element_array())) == sorted(
            (a + b) % (2 * DS.scale) for a in _scaled(DA, DS.scale) for b in _scaled(DB, DS.scale))


def _scaled(D: DiscriminantForm, scale):
    return [int(D.q(x) * scale) for x in D.elements()]


def test_nikulin_singleton():
    assert nikulin_singleton(parse_lattice("U+<-8>"))
    assert not nikulin_singleton(rank_one(8))
    assert not nikulin_singleton(parse_lattice("U(2)"))
