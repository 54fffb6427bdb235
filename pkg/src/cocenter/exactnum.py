"""Exact scalar arithmetic: Q, Q(sqrt p), p-adic valuations and norms.

All p-adic numbers handled by this package are rational, so valuations and
norms are exact integer computations.  Normalized quantities (half powers of
the p-adic norm) live in Q(sqrt p), represented as `RootP` pairs.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction


class DomainError(ValueError):
    """Input outside an operation's mathematical domain."""


class ResourceGuardError(RuntimeError):
    """A finite enumeration would exceed its configured size guard."""


class LevelError(ValueError):
    """An operation would leave the fixed congruence level."""


#: default ceiling for finite group enumerations
DEFAULT_GROUP_ORDER_GUARD = 10**6

INFINITY = math.inf


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def padic_valuation(x, p: int):
    """v_p(x) for rational x; +inf for x = 0.

    Satisfies x = p**v * u with u a p-adic unit.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INFINITY
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def padic_unit_part(x, p: int) -> Fraction:
    """u with x = p**v_p(x) * u.  Requires x != 0."""
    x = Fraction(x)
    if x == 0:
        raise DomainError("0 has no unit part")
    return x / Fraction(p) ** padic_valuation(x, p)


class RootP:
    """Element a + b*sqrt(p) of Q(sqrt p), p prime.

    Since sqrt(p) is irrational the representation is unique, so equality is
    componentwise.  Pure rationals are the b = 0 elements; binary operations
    accept int/Fraction on either side.
    """

    __slots__ = ("a", "b", "p")

    def __init__(self, a, b, p: int):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.p = p

    @classmethod
    def rational(cls, a, p: int) -> "RootP":
        return cls(a, 0, p)

    @classmethod
    def sqrt_p(cls, p: int) -> "RootP":
        return cls(0, 1, p)

    def _coerce(self, other):
        if isinstance(other, RootP):
            if other.p != self.p and other.b != 0 and self.b != 0:
                raise DomainError("mixed sqrt fields")
            return other
        if isinstance(other, (int, Fraction)):
            return RootP(other, 0, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RootP(self.a + o.a, self.b + o.b, self.p)

    __radd__ = __add__

    def __neg__(self):
        return RootP(-self.a, -self.b, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RootP(self.a - o.a, self.b - o.b, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = Fraction(self.p)
        return RootP(self.a * o.a + p * self.b * o.b, self.a * o.b + self.b * o.a, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "RootP":
        # (a + b sqrt p)(a - b sqrt p) = a^2 - p b^2, nonzero unless a = b = 0
        norm = self.a * self.a - self.p * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt p)")
        return RootP(self.a / norm, -self.b / norm, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RootP(1, 0, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, RootP):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.p == other.p and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.p))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self):
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}√{self.p}"

    def __repr__(self):
        return f"RootP({self.a!r}, {self.b!r}, {self.p})"

    @classmethod
    def parse(cls, s: str, p: int | None = None) -> "RootP":
        """Inverse of str(); accepts 'a+b√p' and plain rationals."""
        m = re.fullmatch(r"(-?\d+(?:/\d+)?)([+-])(\d+(?:/\d+)?)√(\d+)", s)
        if m:
            a = Fraction(m.group(1))
            b = Fraction(m.group(3))
            if m.group(2) == "-":
                b = -b
            q = int(m.group(4))
            if p is not None and q != p:
                raise DomainError(f"expected sqrt({p}), got sqrt({q})")
            return cls(a, b, q)
        if p is None:
            raise DomainError(f"cannot parse {s!r} without a prime")
        return cls(Fraction(s), 0, p)


def padic_norm_halfpower(x, p: int, k: int) -> RootP:
    """|x|_p^(k/2) = p**(-k*v_p(x)/2) as an exact element of Q(sqrt p).

    Pure rational when k*v_p(x) is even, a rational multiple of sqrt(p)
    when odd.  Rejects x = 0.
    """
    x = Fraction(x)
    if x == 0:
        raise DomainError("|0| has no nonzero power")
    e = -k * padic_valuation(x, p)
    if e % 2 == 0:
        return RootP(Fraction(p) ** (e // 2), 0, p)
    return RootP(0, Fraction(p) ** ((e - 1) // 2), p)
