"""Split orbital integrals and descent to the Levi.

The orbital integral of a level measure at a regular diagonal element is a
finite exact computation (ball volumes in the unipotent coordinate).  Its
value on the group equals the discriminant half power times the orbital
integral of the normalized restriction on the torus: the descent identity,
checked here point by point on a valuation grid, together with the failure
of the deliberately corrupted normalization.
"""

from cocenter.groups import BlockParabolic
from cocenter.matrices import PrimeContext
from cocenter.measures import (
    Ambient,
    ad_symmetrized_basis,
    double_coset_labels,
    res_normalized,
    unit_measure,
)
from cocenter.orbital import (
    RegularElement,
    descent_check,
    gamma_grid,
    orbital_integral,
    separation_rank,
)

ctx = PrimeContext(2, 1)
borel = BlockParabolic(2, (1, 1), "upper")
unit = unit_measure(Ambient.general_linear(2), ctx)

gamma = RegularElement((1, 3))
value = orbital_integral(unit, gamma)
print("O_gamma(unit) at gamma = diag(1,3):", value.value)
print("normalization:", value.normalization)

print("\nvanishing off the determinant window:",
      orbital_integral(unit, RegularElement((2, 3))).value)

# descent across the full grid
labels = [rep for rep, _ in unit.items()]
basis = ad_symmetrized_basis(labels, ctx) + ad_symmetrized_basis(
    double_coset_labels(2, ctx, (1, 0)), ctx
)
grid = gamma_grid(2, 2, (-2, 2))
holds = broken = 0
for h in basis:
    rm = res_normalized(h, borel)
    for gam in grid:
        ok, _, _ = descent_check(h, gam, borel, rm)
        holds += ok
        bad, _, _ = descent_check(h, gam, borel, rm, mutate_normalization=True)
        broken += not bad
print(f"\ndescent identity: {holds}/{len(basis) * len(grid)} grid points hold")
print(f"corrupted normalization fails on {broken} grid points (must be > 0)")

# the separation probe: orbital data vs character data
from cocenter.characters import InducedModel, UnramifiedCharacter, trace_induced

model = InducedModel(borel, ctx)
chars = [UnramifiedCharacter((1, 1), z) for z in [(1, 1), (2, 1), (1, 2), (3, 5)]]
omat = [[orbital_integral(h, gam).value for gam in grid] for h in basis]
xmat = [[trace_induced(h, chi, model, normalized=True) for chi in chars] for h in basis]
print("\nrank under orbital pairings:  ", separation_rank(omat))
print("rank under character pairings:", separation_rank(xmat))
print("(the common kernel is the span of the measures supported on cosets")
print(" that are elliptic mod p: invisible to split orbits and unramified")
print(" characters alike)")
