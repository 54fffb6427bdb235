import random
from fractions import Fraction

import pytest

from cocenter.exactnum import DomainError, RootP
from cocenter.groups import BlockParabolic, chevalley_map
from cocenter.matrices import PrimeContext, QMat
from cocenter.measures import (
    Ambient,
    HeckeMeasure,
    ad_pullback,
    double_coset_measure,
    res_normalized,
    unit_measure,
)
from cocenter.orbital import (
    RegularElement,
    descent_check,
    gamma_grid,
    joint_kernel_dimension,
    orbital_integral,
    orbital_single_coset_gl2,
    separation_rank,
    stable_orbital,
)

from tests.oracles import grid_scan_orbital_gl2


def test_regular_element_validation():
    with pytest.raises(DomainError):
        RegularElement((2, 2))
    with pytest.raises(DomainError):
        RegularElement((0, 1))
    g = RegularElement((Fraction(1, 2), 3))
    assert g.valuations(2) == (-1, 0)


def test_unit_orbital_value(unit_gl2):
    """Frozen from the independent lattice count: the adjusted density of
    the unit at diag(1,3) is |Delta| * (two unit-volume orbit pieces)."""
    got = orbital_integral(unit_gl2, RegularElement((1, 3)))
    assert got.value == Fraction(1, 2)
    assert got.orbit_count == 1
    assert "mass 1" in got.normalization


def test_unit_orbital_matches_grid_scan(unit_gl2):
    for gamma in (RegularElement((1, 3)), RegularElement((3, 5)), RegularElement((1, 7))):
        assert orbital_integral(unit_gl2, gamma).value == grid_scan_orbital_gl2(
            unit_gl2, gamma
        )


def test_orbital_zero_on_determinant_mismatch(unit_gl2):
    assert orbital_integral(unit_gl2, RegularElement((2, 3))).value == 0
    assert orbital_integral(unit_gl2, RegularElement((Fraction(1, 2), 3))).value == 0


def test_orbital_matches_grid_scan_on_basis(level_basis_gl2):
    grid = gamma_grid(2, 2, (-1, 1))
    for h in level_basis_gl2:
        for gamma in grid:
            assert orbital_integral(h, gamma).value == grid_scan_orbital_gl2(h, gamma)


def test_fast_path_equals_quotient_sum(ctx2, level_basis_gl2):
    for h in level_basis_gl2:
        plain = HeckeMeasure(h.ambient, ctx2, h.support, biinvariant=False)
        for gamma in gamma_grid(2, 2, (-1, 1))[::4]:
            fast = orbital_integral(h, gamma).value
            slow = orbital_integral(plain, gamma).value
            assert fast == slow


def test_orbital_conjugation_invariance(level_basis_gl2):
    k = QMat([[1, 1], [0, 1]])
    w = QMat([[0, 1], [1, 0]])
    for h in level_basis_gl2:
        for gamma in (RegularElement((1, 3)), RegularElement((2, 1))):
            base = orbital_integral(h, gamma).value
            assert orbital_integral(ad_pullback(h, k), gamma).value == base
            assert orbital_integral(ad_pullback(h, w), gamma).value == base


def test_weyl_symmetry(level_basis_gl2):
    a, b = Fraction(3), Fraction(10)
    for h in level_basis_gl2:
        assert (
            orbital_integral(h, RegularElement((a, b))).value
            == orbital_integral(h, RegularElement((b, a))).value
        )


def test_support_locality(ctx2, level_basis_gl2):
    """Vanishing whenever the conjugation invariants of gamma avoid the
    invariant windows of every support coset."""
    for h in level_basis_gl2:
        dets = {padic_det_valuation(rep) for rep, _ in h.items()}
        for gamma in gamma_grid(2, 2, (-2, 2)):
            gdet = sum(gamma.valuations(2))
            if gdet not in dets:
                assert orbital_integral(h, gamma).value == 0


def padic_det_valuation(rep):
    from cocenter.exactnum import padic_valuation

    return padic_valuation(rep.det(), 2)


def test_stable_orbital_collapses(level_basis_gl2):
    gamma = RegularElement((1, 3))
    for h in level_basis_gl2:
        plain = orbital_integral(h, gamma)
        stab = stable_orbital(h, gamma)
        assert stab.value == plain.value
        assert stab.orbit_count == 1


def test_single_rational_orbit_fact():
    """Matrices over Q with the characteristic polynomial of a split
    regular gamma are conjugate to it over Q: rational eigenvectors give
    the conjugator directly."""
    gamma = QMat.diagonal([1, 3])
    target = chevalley_map(gamma)
    found = 0
    for a in range(-4, 9):
        d = 4 - a
        need = a * d - 3  # b * c
        for b in range(-6, 7):
            if b == 0 or need % b:
                continue
            x = QMat([[a, b], [need // b, d]])
            if chevalley_map_or_none(x) != target:
                continue
            found += 1
            conj = eigenvector_conjugator(x, (Fraction(1), Fraction(3)))
            assert conj.inverse() * x * conj == gamma
    assert found > 20


def chevalley_map_or_none(x):
    try:
        return chevalley_map(x)
    except DomainError:
        return None


def eigenvector_conjugator(x, eigenvalues):
    cols = []
    for lam in eigenvalues:
        shifted = x - QMat.identity(2).scale(lam)
        a, b = shifted[0, 0], shifted[0, 1]
        if a == 0 and b == 0:
            a, b = shifted[1, 0], shifted[1, 1]
        cols.append((b, -a))
    return QMat([[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]])


def test_descent_both_orientations(ctx2, borel2, level_basis_gl2):
    grid = gamma_grid(2, 2, (-1, 1))
    low = borel2.opposite()
    mutation_caught = False
    for h in level_basis_gl2:
        for parab in (borel2, low):
            rm = res_normalized(h, parab)
            for gamma in grid:
                ok, lhs, rhs = descent_check(h, gamma, parab, rm)
                assert ok, (parab.orientation, gamma.entries, str(lhs), str(rhs))
                bad, _, _ = descent_check(h, gamma, parab, rm, mutate_normalization=True)
                if not bad:
                    mutation_caught = True
    assert mutation_caught


def test_levi_orbital_on_gl3_blocks():
    """Orbital integrals on a (2,1) Levi factor through the blocks."""
    ctx = PrimeContext(2, 1)
    parab = BlockParabolic(3, (2, 1), "upper")
    levi = Ambient.levi(parab)
    m_rep = QMat([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    h = HeckeMeasure.delta(levi, ctx, m_rep)
    gamma = RegularElement((1, 3, 5))
    got = orbital_integral(h, gamma).value
    block = QMat([[1, 1], [0, 1]])
    expected = orbital_single_coset_gl2(block, (Fraction(1), Fraction(3)), ctx)
    g1, g2 = Fraction(1), Fraction(3)
    from cocenter.exactnum import padic_valuation

    jac = Fraction(2) ** (-padic_valuation((g1 / g2 - 1) * (g2 / g1 - 1), 2))
    assert got == expected * jac
    # third eigenvalue in the wrong unit class kills the integral
    gamma_off = RegularElement((1, 3, 2))
    assert orbital_integral(h, gamma_off).value == 0


def test_vanishing_on_window_persists_under_refinement(level_basis_gl2):
    """Density restatement: when the orbital integrals vanish on a whole
    valuation window of the grid, they vanish at every refinement point of
    that window (other unit multipliers), since the restricted density is
    locally constant."""
    refinement_units = [
        (Fraction(1), Fraction(5)),
        (Fraction(3), Fraction(7)),
        (Fraction(1, 3), Fraction(5)),
        (Fraction(7), Fraction(1, 5)),
    ]
    for h in level_basis_gl2:
        for v1 in range(-1, 2):
            for v2 in range(-1, 2):
                base = RegularElement((Fraction(2) ** v1, 3 * Fraction(2) ** v2))
                if orbital_integral(h, base).value != 0:
                    continue
                for u1, u2 in refinement_units:
                    refined = RegularElement((u1 * Fraction(2) ** v1, u2 * Fraction(2) ** v2))
                    assert orbital_integral(h, refined).value == 0


def test_separation_rank_basics(unit_gl2, level_basis_gl2):
    grid = gamma_grid(2, 2, (-1, 1))
    row = [[orbital_integral(unit_gl2, g).value for g in grid]]
    assert separation_rank(row) == 1
    double = [row[0], [x * 2 for x in row[0]]]
    assert separation_rank(double) == 1
    omat = [[orbital_integral(h, g).value for g in grid] for h in level_basis_gl2]
    assert separation_rank(omat) == 2
    assert joint_kernel_dimension([omat]) == len(level_basis_gl2) - 2
