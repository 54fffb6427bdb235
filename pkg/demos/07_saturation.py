"""Saturation of constructible sets by certified curve witnesses.

A point enters the saturation of a set when a punctured polynomial curve
through it lies in the set; the package searches a bounded curve universe
and certifies every hit with an independently verified witness.  Absence of
a witness is never treated as a proof of non-membership.
"""

from fractions import Fraction

from cocenter.saturation import (
    ConstructibleSet,
    MPoly,
    product_rule_check,
    sat_fixpoint,
    sat_prime_member,
    verify_witness,
)

x = MPoly.variable(1, 0)

print("A = A^1 minus {0}: the puncture is certified by the identity curve")
punctured = ConstructibleSet.inequation(x)
w = sat_prime_member(punctured, (0,))
print("   witness:", w.to_jsonable(), "verified:", verify_witness(w, punctured))

print("\nA = {0}: a finite set is saturated, nothing outside is certified")
finite = ConstructibleSet.equation(x)
print("   search at degree 2, height 2:", sat_prime_member(finite, (1,)))

print("\nA = complement of the axes in the plane: a line through the origin")
x1, x2 = MPoly.variable(2, 0), MPoly.variable(2, 1)
axes = ConstructibleSet.inequation(x1 * x2)
w = sat_prime_member(axes, (0, 0), 1, 2)
print("   witness components:", w.to_jsonable()["components"])

print("\npunctured parabola: the missing point needs a degree-two witness")
parabola = ConstructibleSet.equation(x2 - x1 * x1) & ConstructibleSet.inequation(
    x1 - MPoly.constant(2, 1)
)
print("   degree 1 search:", sat_prime_member(parabola, (1, 1), 1, 3))
w = sat_prime_member(parabola, (1, 1), 2, 2)
print("   degree 2 search:", w.to_jsonable())

print("\nproduct rule: factor witnesses splice into a product witness")
ok, combined = product_rule_check(punctured, punctured, (0,), (0,))
print("   verified both ways:", ok, "combined:", combined.to_jsonable())

print("\nfixpoint over a point cloud (doubly punctured line)")
both = punctured & ConstructibleSet.inequation(x - MPoly.constant(1, 1))
certified, rounds = sat_fixpoint(both, [(0,), (1,), (Fraction(1, 2),)])
print("   certified:", sorted(str(p[0]) for p in certified), "rounds:", rounds)
