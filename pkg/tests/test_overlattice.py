import random

import pytest

from k3fm.discform import FiniteIsometry, is_isometric, isometry_group, isotropic_elements
from k3fm.errors import NotIsotropic
from k3fm.lattice import discriminant_form, parse_lattice, rank_one
from k3fm.linalg import determinant, matmul
from k3fm.overlattice import overlattice

from lattice_gen import random_lattice


def test_rank_one_example():
    ov = overlattice(rank_one(8), (4,))
    assert ov.M.gram == ((2,),)
    assert ov.index == 2 and ov.twist_order == 2
    assert ov.induced_form.factors == (2,)
    with pytest.raises(NotIsotropic):
        overlattice(rank_one(8), (2,))


def test_zero_element_gives_L():
    L = parse_lattice("<4>+<-12>")
    ov = overlattice(L, (0, 0))
    assert ov.d == 1 and abs(ov.M.det) == abs(L.det)


def test_basis_and_embed_are_inverse():
    L = parse_lattice("U(4)")
    for x in isotropic_elements(discriminant_form(L)[0], 4):
        ov = overlattice(L, x)
        prod_ = matmul([list(r) for r in ov.embed], [list(r) for r in ov.basis])
        assert prod_ == [[1, 0], [0, 1]]
        assert abs(determinant([list(r) for r in ov.embed])) == 4


def test_twist_map():
    L = parse_lattice("U+<-8>")
    ov = overlattice(L, (4,))
    # L maps to 0; every basis vector of M has twist in Z/2
    for row in ov.embed:
        assert ov.twist(row) == 0
    assert {ov.twist([int(i == j) for j in range(3)]) for i in range(3)} == {0, 1}


def test_natural_map_is_isometry():
    rng = random.Random(21)
    done = 0
    while done < 25:
        L = random_lattice(rng)
        D = discriminant_form(L)[0]
        xs = [x for d in range(2, max(D.factors) + 1) for x in isotropic_elements(D, d)]
        if not xs:
            continue
        x = rng.choice(xs)
        ov = overlattice(L, x)
        DM = discriminant_form(ov.M)[0]
        phi = ov.natural_isometry()
        images = {phi(y) for y in DM.elements()}
        assert len(images) == DM.order == ov.induced_form.order
        for y in DM.elements():
            assert ov.induced_form.q(phi(y)) == DM.q(y)
        done += 1


def test_transfer_of_stabilizer():
    L = rank_one(72)
    D = discriminant_form(L)[0]
    G = isometry_group(D)
    for x in isotropic_elements(D, 3) + isotropic_elements(D, 2):
        ov = overlattice(L, x)
        DM = discriminant_form(ov.M)[0]
        for g in G:
            if g(x) == x:
                h = ov.transfer(g)
                assert h.preserves(DM)
        assert ov.transfer(FiniteIsometry.identity(D.factors)).is_identity
        assert is_isometric(DM, ov.induced_form) is not None
