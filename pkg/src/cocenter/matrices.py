"""Exact matrices over Q and F_q, p-adic integrality, finite enumerations.

`QMat` is an immutable matrix with Fraction entries; group elements are the
invertible ones.  Rational matrices stand in for p-adic ones: every element
this package constructs is rational, and p-adic valuations are exact on Q.

The p-adic column Hermite form computed here is the workhorse behind coset
canonicalization and Iwasawa decomposition: for invertible rational g there
is a unique upper triangular H with p-power diagonal and reduced entries
above it such that g = H * k with k integral of unit determinant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from cocenter.exactnum import (
    DEFAULT_GROUP_ORDER_GUARD,
    DomainError,
    ResourceGuardError,
    is_prime,
    padic_valuation,
)


@dataclass(frozen=True)
class PrimeContext:
    """Prime p and congruence level m >= 1.

    The level subgroup K_m = ker(GL_n(Z_p) -> GL_n(Z/p^m)) is torsion free,
    pro-p and normal in K_0 = GL_n(Z_p); m >= 1 is required throughout.
    """

    p: int
    m: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if self.m < 1:
            raise DomainError("level exponent must be >= 1")

    @property
    def modulus(self) -> int:
        return self.p**self.m


class QMat:
    """Immutable n x n matrix over Q."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DomainError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *a):
        raise AttributeError("QMat is immutable")

    @classmethod
    def identity(cls, n: int) -> "QMat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries) -> "QMat":
        entries = list(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other: "QMat") -> "QMat":
        if self.n != other.n:
            raise DomainError("size mismatch")
        n = self.n
        a, b = self.rows, other.rows
        return QMat(
            [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        )

    def __add__(self, other: "QMat") -> "QMat":
        return QMat(
            [[self.rows[i][j] + other.rows[i][j] for j in range(self.n)] for i in range(self.n)]
        )

    def __sub__(self, other: "QMat") -> "QMat":
        return QMat(
            [[self.rows[i][j] - other.rows[i][j] for j in range(self.n)] for i in range(self.n)]
        )

    def scale(self, c) -> "QMat":
        c = Fraction(c)
        return QMat([[c * x for x in row] for row in self.rows])

    def transpose(self) -> "QMat":
        return QMat(list(zip(*self.rows)))

    def det(self) -> Fraction:
        # fraction Gaussian elimination; n stays tiny here
        n = self.n
        m = [list(row) for row in self.rows]
        det = Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for r in range(c + 1, n):
                if m[r][c] != 0:
                    f = m[r][c] * inv
                    for k in range(c, n):
                        m[r][k] -= f * m[c][k]
        return det

    def inverse(self) -> "QMat":
        n = self.n
        m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.rows)]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c] != 0), None)
            if piv is None:
                raise DomainError("singular matrix")
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
            inv = 1 / m[c][c]
            m[c] = [x * inv for x in m[c]]
            for r in range(n):
                if r != c and m[r][c] != 0:
                    f = m[r][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return QMat([row[n:] for row in m])

    def trace(self) -> Fraction:
        return sum(self.rows[i][i] for i in range(self.n))

    def is_invertible(self) -> bool:
        return self.det() != 0

    def entries(self):
        return tuple(x for row in self.rows for x in row)

    def min_valuation(self, p: int):
        return min(padic_valuation(x, p) for x in self.entries())

    def __eq__(self, other):
        return isinstance(other, QMat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "QMat(%s)" % (list(list(map(str, r)) for r in self.rows),)


def gln_zp_membership(g: QMat, p: int) -> bool:
    """Membership in K_0 = GL_n(Z_p): integral entries, unit determinant."""
    if not g.is_invertible():
        raise DomainError("singular matrix")
    if any(padic_valuation(x, p) < 0 for x in g.entries()):
        return False
    return padic_valuation(g.det(), p) == 0


def in_level_subgroup(g: QMat, ctx: PrimeContext) -> bool:
    """g in K_m, i.e. every entry of g - 1 has valuation >= m."""
    n = g.n
    for i in range(n):
        for j in range(n):
            x = g[i, j] - (1 if i == j else 0)
            if x != 0 and padic_valuation(x, ctx.p) < ctx.m:
                return False
    return True


def congruence_equiv(x: QMat, y: QMat, ctx: PrimeContext) -> bool:
    """Same left K_m coset: x^-1 y in K_m."""
    return in_level_subgroup(x.inverse() * y, ctx)


# ---------------------------------------------------------------------------
# p-adic Hermite form


def _reduce_mod_ppower(t: Fraction, a: int, p: int):
    """Canonical representative of t modulo p^a Z_(p).

    Returns r = p^w * (unit-part mod p^(a-w)) with w = v_p(t), an element of
    p^w * {0, ..., p^(a-w)-1}; r = 0 when v_p(t) >= a.
    """
    if t == 0:
        return Fraction(0)
    w = padic_valuation(t, p)
    if w >= a:
        return Fraction(0)
    u = t / Fraction(p) ** w  # unit: numerator and denominator prime to p
    mod = p ** (a - w)
    num = u.numerator % mod
    den_inv = pow(u.denominator, -1, mod)
    return Fraction(p) ** w * ((num * den_inv) % mod)


def hermite_padic(g: QMat, p: int):
    """Column Hermite form of g over Z_(p).

    Returns (H, k) with g = H * k, k in GL_n(Z_(p)) (integral at p, unit
    determinant), H upper triangular with H[i][i] = p^(a_i) and H[i][j]
    (j > i) reduced modulo p^(a_i) Z_(p).  H is the canonical basis of the
    column lattice of g, so it depends only on the coset g * GL_n(Z_p).
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    n = g.n
    h = [list(row) for row in g.rows]
    # k accumulates the inverse of the column operations: g = H * k throughout
    k = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def swap_cols(a, b):
        for r in range(n):
            h[r][a], h[r][b] = h[r][b], h[r][a]
        k[a], k[b] = k[b], k[a]  # inverse op: swap rows of k

    def add_col(dst, src, f):
        # col_dst += f * col_src  ==>  row_src of k -= f * row_dst
        for r in range(n):
            h[r][dst] += f * h[r][src]
        k[src] = [x - f * y for x, y in zip(k[src], k[dst])]

    def scale_col(c, f):
        for r in range(n):
            h[r][c] *= f
        k[c] = [x / f for x in k[c]]

    for i in range(n - 1, -1, -1):
        piv, piv_v = None, None
        for c in range(i + 1):
            x = h[i][c]
            if x == 0:
                continue
            v = padic_valuation(x, p)
            if piv_v is None or v < piv_v:
                piv, piv_v = c, v
        if piv is None:
            raise DomainError("singular matrix")
        if piv != i:
            swap_cols(piv, i)
        for c in range(i):
            if h[i][c] != 0:
                add_col(c, i, -h[i][c] / h[i][i])
        scale_col(i, Fraction(p) ** piv_v / h[i][i])

    # reduce above-diagonal entries, bottom pivot rows first
    for i in range(n - 1, -1, -1):
        a_i = padic_valuation(h[i][i], p)
        for j in range(i + 1, n):
            r = _reduce_mod_ppower(h[i][j], a_i, p)
            if r != h[i][j]:
                add_col(j, i, (r - h[i][j]) / h[i][i])
    return QMat(h), QMat(k)


def coset_canonical_rep(g: QMat, ctx: PrimeContext) -> QMat:
    """Canonical representative of the left coset g K_m.

    Composes the Hermite form (canonical in g K_0) with entrywise reduction
    of the unit part modulo p^m; idempotent, and constant exactly on K_m
    cosets.
    """
    h, k = hermite_padic(g, ctx.p)
    mod = ctx.modulus
    lifted = QMat(
        [[_reduce_mod_ppower(k[i, j], ctx.m, ctx.p) for j in range(g.n)] for i in range(g.n)]
    )
    # entries of k are p-integral, so the reduction is an integer lift mod p^m
    assert all(x.denominator == 1 and 0 <= x < mod for x in lifted.entries())
    return h * lifted


# ---------------------------------------------------------------------------
# matrices over Z/N and over F_q


def mat_mod(g: QMat, modulus: int, p: int):
    """Entrywise reduction to Z/modulus; requires p-integral entries."""
    out = []
    for row in g.rows:
        r = []
        for x in row:
            if x.denominator % p == 0:
                raise DomainError("entry not p-integral")
            r.append((x.numerator * pow(x.denominator, -1, modulus)) % modulus)
        out.append(tuple(r))
    return tuple(out)


def lift_mod(rows, n: int) -> QMat:
    return QMat([[rows[i][j] for j in range(n)] for i in range(n)])


def det_mod(rows, modulus: int) -> int:
    n = len(rows)
    m = [list(r) for r in rows]
    det = 1
    for c in range(n):
        piv = None
        for r in range(c, n):
            # need an invertible pivot mod a prime power
            if gcd(m[r][c], modulus) == 1:
                piv = r
                break
        if piv is None:
            # no unit pivot: determinant is a non-unit; exact value unneeded
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = (det * m[c][c]) % modulus
        inv = pow(m[c][c], -1, modulus)
        for r in range(c + 1, n):
            if m[r][c]:
                f = (m[r][c] * inv) % modulus
                for k in range(c, n):
                    m[r][k] = (m[r][k] - f * m[c][k]) % modulus
    return det % modulus


def enumerate_glnzm(n: int, ctx: PrimeContext, guard: int = DEFAULT_GROUP_ORDER_GUARD):
    """All of GL_n(Z/p^m) as integer-entry tuples; guarded."""
    size = glnzm_order(n, ctx.p, ctx.m)
    if size > guard:
        raise ResourceGuardError(f"|GL_{n}(Z/{ctx.modulus})| = {size} exceeds guard {guard}")
    modulus = ctx.modulus
    out = []
    for flat in itertools.product(range(modulus), repeat=n * n):
        rows = tuple(flat[i * n : (i + 1) * n] for i in range(n))
        if det_mod(rows, modulus) % ctx.p != 0:
            out.append(rows)
    assert len(out) == size
    return out


def glnzm_order(n: int, p: int, m: int) -> int:
    return gln_fq_order(n, p) * p ** ((m - 1) * n * n)


def gln_fq_order(n: int, q: int) -> int:
    order = 1
    for i in range(n):
        order *= q**n - q**i
    return order


def enumerate_transversal_K0_mod_Km(
    n: int, ctx: PrimeContext, guard: int = DEFAULT_GROUP_ORDER_GUARD
):
    """Exact transversal of K_0 / K_m, one integral QMat per coset."""
    return [lift_mod(rows, n) for rows in enumerate_glnzm(n, ctx, guard)]


class FFMatrix:
    """Immutable n x n matrix over F_q, q prime."""

    __slots__ = ("n", "q", "rows")

    def __init__(self, rows, q: int):
        if not is_prime(q):
            raise DomainError(f"{q} is not prime")
        rows = tuple(tuple(int(x) % q for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DomainError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *a):
        raise AttributeError("FFMatrix is immutable")

    @classmethod
    def identity(cls, n: int, q: int) -> "FFMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], q)

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def __mul__(self, other: "FFMatrix") -> "FFMatrix":
        n, q = self.n, self.q
        a, b = self.rows, other.rows
        return FFMatrix(
            [[sum(a[i][k] * b[k][j] for k in range(n)) % q for j in range(n)] for i in range(n)],
            q,
        )

    def __sub__(self, other: "FFMatrix") -> "FFMatrix":
        return FFMatrix(
            [[self.rows[i][j] - other.rows[i][j] for j in range(self.n)] for i in range(self.n)],
            self.q,
        )

    def rank(self) -> int:
        n, q = self.n, self.q
        m = [list(r) for r in self.rows]
        rank, row = 0, 0
        for c in range(n):
            piv = next((r for r in range(row, n) if m[r][c] % q != 0), None)
            if piv is None:
                continue
            m[row], m[piv] = m[piv], m[row]
            inv = pow(m[row][c], -1, q)
            m[row] = [(x * inv) % q for x in m[row]]
            for r in range(n):
                if r != row and m[r][c]:
                    f = m[r][c]
                    m[r] = [(x - f * y) % q for x, y in zip(m[r], m[row])]
            rank += 1
            row += 1
        return rank

    def inverse(self) -> "FFMatrix":
        n, q = self.n, self.q
        m = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c] % q != 0), None)
            if piv is None:
                raise DomainError("singular matrix")
            m[c], m[piv] = m[piv], m[c]
            inv = pow(m[c][c], -1, q)
            m[c] = [(x * inv) % q for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [(x - f * y) % q for x, y in zip(m[r], m[c])]
        return FFMatrix([row[n:] for row in m], q)

    def is_invertible(self) -> bool:
        return self.rank() == self.n

    def __eq__(self, other):
        return (
            isinstance(other, FFMatrix)
            and self.q == other.q
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.q, self.rows))

    def __repr__(self):
        return f"FFMatrix({[list(r) for r in self.rows]}, q={self.q})"


def enumerate_gln_fq(n: int, q: int, guard: int = DEFAULT_GROUP_ORDER_GUARD):
    """All invertible n x n matrices over F_q, each exactly once; guarded."""
    size = gln_fq_order(n, q)
    if size > guard:
        raise ResourceGuardError(f"|GL_{n}(F_{q})| = {size} exceeds guard {guard}")
    out = []
    for flat in itertools.product(range(q), repeat=n * n):
        m = FFMatrix([flat[i * n : (i + 1) * n] for i in range(n)], q)
        if m.is_invertible():
            out.append(m)
    assert len(out) == size
    return out
