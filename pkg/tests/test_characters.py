from fractions import Fraction

import pytest

from cocenter.characters import (
    InducedModel,
    UnramifiedCharacter,
    character_pairing,
    hecke_action_matrix,
    trace_induced,
    verify_induced_character_identity,
)
from cocenter.exactnum import DomainError, RootP
from cocenter.groups import BlockParabolic
from cocenter.matrices import PrimeContext, QMat
from cocenter.measures import (
    Ambient,
    HeckeMeasure,
    ParabolicTransversal,
    double_coset_measure,
    res_unnormalized,
    unit_measure,
)

CHAR_PARAMS = [(1, 1), (2, 1), (Fraction(1, 2), 3), (3, 5)]


@pytest.fixture(scope="module")
def model2(borel2, ctx2, transversal_gl2):
    return InducedModel(borel2, ctx2, transversal_gl2)


def test_character_pairing_examples(ctx2, borel2):
    levi = Ambient.levi(borel2)
    unit_t = unit_measure(levi, ctx2)
    trivial = UnramifiedCharacter((1, 1), (1, 1))
    assert character_pairing(trivial, unit_t) == 1
    chi = UnramifiedCharacter((1, 1), (5, 7))
    delta = HeckeMeasure.delta(levi, ctx2, QMat.diagonal([2, 1]))
    assert character_pairing(chi, delta) == 5
    assert character_pairing(chi, unit_t) == unit_t.total_mass()
    with pytest.raises(DomainError):
        character_pairing(UnramifiedCharacter((2,), (3,)), unit_t)


def test_action_matrix_of_unit_is_stochastic(ctx2, unit_gl2, model2):
    trivial = UnramifiedCharacter((1, 1), (1, 1))
    mat = hecke_action_matrix(unit_gl2, trivial, model2)
    for row in mat:
        assert sum((x.a for x in row), Fraction(0)) == 1
        assert all(x.b == 0 for x in row)


def test_zero_measure_zero_trace(ctx2, model2):
    zero = HeckeMeasure(Ambient.general_linear(2), ctx2, {}, biinvariant=True)
    chi = UnramifiedCharacter((1, 1), (2, 3))
    assert trace_induced(zero, chi, model2) == 0


def test_dimension_matches_double_coset_count(ctx2, model2, transversal_gl2):
    assert model2.dim == len(transversal_gl2) == 3


def test_trace_identity_on_basis(ctx2, borel2, model2, level_basis_gl2, transversal_gl2):
    for h in level_basis_gl2:
        res_plain = res_unnormalized(h, borel2, transversal_gl2)
        for params in CHAR_PARAMS:
            chi = UnramifiedCharacter((1, 1), params)
            ok, details = verify_induced_character_identity(
                h, chi, borel2, model2, res_plain
            )
            assert ok, details


def test_trace_identity_diag_double_coset_both_routes(ctx2, borel2, model2):
    h = double_coset_measure(2, ctx2, (1, 0))
    chi = UnramifiedCharacter((1, 1), (2, 7))
    lhs = trace_induced(h, chi, model2)
    rhs = character_pairing(chi, res_unnormalized(h, borel2))
    assert lhs == rhs
    assert lhs != 0


def test_corrupted_restriction_detected(ctx2, borel2, model2, level_basis_gl2):
    h = max(level_basis_gl2, key=len)
    res_plain = res_unnormalized(h, borel2)
    key = next(iter(res_plain.support))
    support = dict(res_plain.support)
    rep, c = support[key]
    support[key] = (rep, c * 2)
    corrupted = HeckeMeasure(res_plain.ambient, ctx2, support)
    chi = UnramifiedCharacter((1, 1), (2, 1))
    ok, _ = verify_induced_character_identity(h, chi, borel2, model2, corrupted)
    assert not ok


def test_trace_linear_in_the_measure(ctx2, model2, level_basis_gl2):
    h1, h2 = level_basis_gl2[0], level_basis_gl2[-1]
    combo = h1.scale(Fraction(2, 3)) + h2.scale(-5)
    combo = HeckeMeasure(combo.ambient, ctx2, combo.support, biinvariant=True)
    chi = UnramifiedCharacter((1, 1), (3, Fraction(1, 2)))
    lhs = trace_induced(combo, chi, model2)
    rhs = trace_induced(h1, chi, model2) * Fraction(2, 3) + trace_induced(
        h2, chi, model2
    ) * (-5)
    assert lhs == rhs


def test_normalized_trace_independent_of_parabolic(ctx2, borel2, model2, level_basis_gl2):
    low = borel2.opposite()
    model_low = InducedModel(low, ctx2, ParabolicTransversal(low, ctx2))
    for h in level_basis_gl2:
        for params in CHAR_PARAMS[1:]:
            chi = UnramifiedCharacter((1, 1), params)
            assert trace_induced(h, chi, model2, normalized=True) == trace_induced(
                h, chi, model_low, normalized=True
            )


def test_unnormalized_trace_depends_on_parabolic(ctx2, borel2):
    h = double_coset_measure(2, ctx2, (1, 0))
    low = borel2.opposite()
    model_up = InducedModel(borel2, ctx2)
    model_low = InducedModel(low, ctx2)
    chi = UnramifiedCharacter((1, 1), (2, 1))
    assert trace_induced(h, chi, model_up) != trace_induced(h, chi, model_low)


def test_gl3_levi_unit_smoke():
    ctx = PrimeContext(2, 1)
    parab = BlockParabolic(3, (2, 1), "upper")
    u3 = unit_measure(Ambient.general_linear(3), ctx)
    model = InducedModel(parab, ctx)
    chi = UnramifiedCharacter((2, 1), (3, Fraction(1, 2)))
    ok, details = verify_induced_character_identity(u3, chi, parab, model)
    assert ok, details
