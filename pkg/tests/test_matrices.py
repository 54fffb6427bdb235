import random
from fractions import Fraction

import pytest

from cocenter.exactnum import ResourceGuardError
from cocenter.matrices import (
    FFMatrix,
    PrimeContext,
    QMat,
    congruence_equiv,
    coset_canonical_rep,
    enumerate_gln_fq,
    enumerate_transversal_K0_mod_Km,
    gln_fq_order,
    gln_zp_membership,
    hermite_padic,
    in_level_subgroup,
)


def random_invertible(n, rng, denominators=(1, 2, 3)):
    while True:
        m = QMat(
            [
                [Fraction(rng.randint(-6, 6), rng.choice(denominators)) for _ in range(n)]
                for _ in range(n)
            ]
        )
        if m.is_invertible():
            return m


def test_gln_zp_membership_examples():
    assert gln_zp_membership(QMat.identity(2), 2)
    assert not gln_zp_membership(QMat.diagonal([2, 1]), 2)
    assert not gln_zp_membership(QMat([[1, Fraction(1, 2)], [0, 1]]), 2)


def test_congruence_examples():
    ctx = PrimeContext(3, 2)
    g = QMat([[1, 2], [5, 2]])
    assert congruence_equiv(g, g, ctx)
    bumped = g * QMat([[1, 9], [0, 1]])
    assert congruence_equiv(g, bumped, ctx)
    assert not congruence_equiv(QMat.diagonal([3, 1]), QMat.identity(2), ctx)


def test_congruence_is_equivalence_and_right_invariant():
    ctx = PrimeContext(2, 1)
    rng = random.Random(1)
    mats = [random_invertible(2, rng) for _ in range(6)]
    for x in mats:
        assert congruence_equiv(x, x, ctx)
    for x in mats:
        for y in mats:
            assert congruence_equiv(x, y, ctx) == congruence_equiv(y, x, ctx)
            for z in mats:
                if congruence_equiv(x, y, ctx) and congruence_equiv(y, z, ctx):
                    assert congruence_equiv(x, z, ctx)
    # right multiplication by level elements
    k = QMat([[3, 2], [4, 1]])
    assert in_level_subgroup(k, ctx)
    for x in mats:
        assert congruence_equiv(x, x * k, ctx)


def test_hermite_postconditions():
    rng = random.Random(7)
    for p in (2, 3):
        for _ in range(25):
            g = random_invertible(2, rng)
            h, k = hermite_padic(g, p)
            assert h * k == g
            assert gln_zp_membership(k, p)
            for i in range(2):
                for j in range(2):
                    if i > j:
                        assert h[i, j] == 0


def test_canonical_rep_idempotent_and_constant_on_cosets():
    ctx = PrimeContext(2, 2)
    rng = random.Random(3)
    for _ in range(15):
        g = random_invertible(2, rng)
        rep = coset_canonical_rep(g, ctx)
        assert congruence_equiv(g, rep, ctx)
        assert coset_canonical_rep(rep, ctx) == rep
        k = QMat([[5, 4], [8, 1]])
        assert in_level_subgroup(k, ctx)
        assert coset_canonical_rep(g * k, ctx) == rep


def test_transversal_sizes():
    assert len(enumerate_transversal_K0_mod_Km(2, PrimeContext(2, 1))) == 6
    assert len(enumerate_transversal_K0_mod_Km(2, PrimeContext(3, 1))) == 48
    assert len(enumerate_transversal_K0_mod_Km(1, PrimeContext(2, 1))) == 1


def test_transversal_complete_and_pairwise_inequivalent():
    ctx = PrimeContext(2, 1)
    transversal = enumerate_transversal_K0_mod_Km(2, ctx)
    for i, a in enumerate(transversal):
        for b in transversal[i + 1 :]:
            assert not congruence_equiv(a, b, ctx)
    rng = random.Random(11)
    for _ in range(10):
        # random integral matrices with unit determinant
        while True:
            g = QMat([[rng.randint(-9, 9) for _ in range(2)] for _ in range(2)])
            if g.det() != 0 and gln_zp_membership(g, 2):
                break
        hits = [t for t in transversal if congruence_equiv(g, t, ctx)]
        assert len(hits) == 1


def test_enumerate_gln_fq_counts():
    assert len(enumerate_gln_fq(2, 2)) == 6
    assert len(enumerate_gln_fq(3, 2)) == 168
    assert len(enumerate_gln_fq(1, 3)) == 2
    assert gln_fq_order(3, 2) == (8 - 1) * (8 - 2) * (8 - 4)


def test_enumeration_guard():
    with pytest.raises(ResourceGuardError):
        enumerate_gln_fq(3, 3, guard=100)
    with pytest.raises(ResourceGuardError):
        enumerate_transversal_K0_mod_Km(2, PrimeContext(2, 3), guard=10)


def test_ffmatrix_rank_and_inverse():
    m = FFMatrix([[1, 2], [2, 4]], 5)
    assert m.rank() == 1
    g = FFMatrix([[1, 2], [3, 4]], 5)
    assert g.is_invertible()
    assert g * g.inverse() == FFMatrix.identity(2, 5)
