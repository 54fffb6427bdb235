"""Characters of parabolically induced representations at finite level.

A measure supported at level m acts on the level invariants of the module
induced from an unramified character; the trace of that action equals the
pairing of the character with the parabolic restriction of the measure.
Both sides are computed along independent code paths and printed as exact
elements of Q(sqrt 2).
"""

from fractions import Fraction

from cocenter.characters import (
    InducedModel,
    UnramifiedCharacter,
    character_pairing,
    trace_induced,
)
from cocenter.groups import BlockParabolic
from cocenter.matrices import PrimeContext
from cocenter.measures import (
    Ambient,
    ad_symmetrized_basis,
    double_coset_labels,
    double_coset_measure,
    res_normalized,
    res_unnormalized,
    unit_measure,
)

ctx = PrimeContext(2, 1)
borel = BlockParabolic(2, (1, 1), "upper")
model = InducedModel(borel, ctx)
print("dim of the level invariants:", model.dim, "(= number of double cosets)")

h = double_coset_measure(2, ctx, (1, 0))
for z in [(1, 1), (2, 1), (Fraction(1, 2), 3)]:
    chi = UnramifiedCharacter((1, 1), z)
    lhs = trace_induced(h, chi, model)
    rhs = character_pairing(chi, res_unnormalized(h, borel))
    print(f"z = {z}: trace {lhs}  pairing {rhs}  equal: {lhs == rhs}")

# the normalized trace does not depend on the parabolic
low_model = InducedModel(borel.opposite(), ctx)
chi = UnramifiedCharacter((1, 1), (3, 5))
up = trace_induced(h, chi, model, normalized=True)
low = trace_induced(h, chi, low_model, normalized=True)
print("\nnormalized trace, upper vs lower Borel:", up, "|", low, "equal:", up == low)

# the whole conjugation-symmetrized level basis satisfies the identity
unit = unit_measure(Ambient.general_linear(2), ctx)
labels = [rep for rep, _ in unit.items()]
basis = ad_symmetrized_basis(labels, ctx) + ad_symmetrized_basis(
    double_coset_labels(2, ctx, (1, 0)), ctx
)
good = 0
for hh in basis:
    r = res_normalized(hh, borel)
    for z in [(1, 1), (2, 1)]:
        chi = UnramifiedCharacter((1, 1), z)
        good += trace_induced(hh, chi, model, normalized=True) == character_pairing(chi, r)
print(f"identity verified on {good}/{2 * len(basis)} basis-character pairs")
