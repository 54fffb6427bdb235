import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cocenter.exactnum import (
    DomainError,
    RootP,
    padic_norm_halfpower,
    padic_valuation,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)
nonzero_rationals = rationals.filter(lambda x: x != 0)
small_primes = st.sampled_from([2, 3, 5, 7])


def test_valuation_examples():
    assert padic_valuation(Fraction(3, 4), 2) == -2
    assert padic_valuation(1, 7) == 0
    assert padic_valuation(0, 5) == math.inf


def test_valuation_requires_prime():
    with pytest.raises(DomainError):
        padic_valuation(1, 6)


@given(nonzero_rationals, nonzero_rationals, small_primes)
def test_valuation_multiplicative(x, y, p):
    assert padic_valuation(x * y, p) == padic_valuation(x, p) + padic_valuation(y, p)


@given(nonzero_rationals, small_primes)
def test_unit_part_decomposition(x, p):
    from cocenter.exactnum import padic_unit_part

    v = padic_valuation(x, p)
    u = padic_unit_part(x, p)
    assert x == Fraction(p) ** v * u
    assert padic_valuation(u, p) == 0


def test_norm_halfpower_examples():
    assert padic_norm_halfpower(2, 2, 1) == RootP(0, Fraction(1, 2), 2)
    assert padic_norm_halfpower(1, 3, 11) == 1
    assert padic_norm_halfpower(Fraction(3, 4), 2, 2) == 4


def test_norm_halfpower_rejects_zero():
    with pytest.raises(DomainError):
        padic_norm_halfpower(0, 2, 1)


@given(nonzero_rationals, small_primes, st.integers(-4, 4))
def test_norm_halfpower_square(x, p, k):
    # squaring a half power gives the plain norm power
    half = padic_norm_halfpower(x, p, k)
    assert half * half == padic_norm_halfpower(x, p, 2 * k)


root_elements = st.builds(
    lambda a, b: RootP(a, b, 2),
    st.fractions(min_value=-100, max_value=100, max_denominator=50),
    st.fractions(min_value=-100, max_value=100, max_denominator=50),
)


@given(root_elements, root_elements, root_elements)
def test_rootp_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x


@given(root_elements)
def test_rootp_conjugate_norm(x):
    conj = RootP(x.a, -x.b, x.p)
    assert x * conj == x.a * x.a - 2 * x.b * x.b


@given(root_elements.filter(lambda x: bool(x)))
def test_rootp_inverse(x):
    assert x * x.inverse() == 1


@given(root_elements)
def test_rootp_string_round_trip(x):
    assert RootP.parse(str(x)) == x


def test_rootp_equality_is_componentwise():
    assert RootP(1, 1, 2) != RootP(1, 0, 2)
    assert RootP(Fraction(3, 2), 0, 2) == Fraction(3, 2)
    assert RootP(0, 0, 2) == 0
