"""Split-torus orbital integrals on GL_2 and on Levi subgroups, exactly.

The orbital integral of a level coset measure against a regular diagonal
gamma is a finite sum of volumes of balls in the unipotent coordinate: in
the Iwasawa frame T U K_0, the conjugate u(x)^-1 gamma u(x) is upper
triangular with off entry x (gamma_1 - gamma_2), and membership in a level
coset is an intersection of balls in that entry, computed exactly from
valuations.  Conjugation by K_0 is folded in by summing over the finite
quotient through which it acts on level cosets, so no truncation and no
sampling occur anywhere: every value carries a complete enumeration.

Normalizations, recorded on every value: Haar on each ambient group gives
its level subgroup mass 1; Haar on the diagonal torus gives its level
subgroup mass 1.  Only split diagonal tori are implemented; for GL_n these
see a single rational orbit per stable class, so the stable version equals
the plain one and records that fact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from cocenter.exactnum import (
    DomainError,
    RootP,
    padic_norm_halfpower,
    padic_valuation,
)
from cocenter.groups import BlockParabolic, SubgroupSpec, discriminant_delta
from cocenter.matrices import PrimeContext, QMat, enumerate_glnzm, glnzm_order, lift_mod
from cocenter.measures import HeckeMeasure, label_spread


@dataclass(frozen=True)
class RegularElement:
    """Diagonal element with pairwise distinct nonzero rational eigenvalues."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(Fraction(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if any(x == 0 for x in entries):
            raise DomainError("eigenvalues must be nonzero")
        if len(set(entries)) != len(entries):
            raise DomainError("eigenvalues must be pairwise distinct (regular)")

    @property
    def n(self):
        return len(self.entries)

    def matrix(self) -> QMat:
        return QMat.diagonal(self.entries)

    def valuations(self, p: int):
        return tuple(padic_valuation(x, p) for x in self.entries)


@dataclass(frozen=True)
class OrbitalValue:
    value: RootP
    p: int
    m: int
    #: number of rational orbits summed; 1 for split tori in GL_n
    orbit_count: int = 1

    @property
    def normalization(self):
        return (
            f"Haar(G): K_{self.m} has mass 1; Haar(T): T meet K_{self.m} has mass 1"
        )


def _torus_unit_index(ctx: PrimeContext) -> int:
    """[T meet K_0 : T meet K_m] for the rank two diagonal torus."""
    phi = ctx.p**ctx.m - ctx.p ** (ctx.m - 1)
    return phi * phi


def _ball_volume_gl2(y: QMat, gamma, ctx: PrimeContext) -> Fraction:
    """vol{x in Q_p : u(x)^-1 gamma u(x) in y K_m}, with vol(Z_p) = 1.

    The conjugate is [[g1, e],[0, g2]] with e = x (g1 - g2); each matrix
    entry of y^-1 * conjugate imposes a ball condition on e, and the
    intersection of balls in an ultrametric line is a ball or empty.
    """
    p, m = ctx.p, ctx.m
    g1, g2 = gamma
    yinv = y.inverse()
    # z0 = y^-1 diag(g1, g2); w = y^-1 E_12 (only column 2 is nonzero)
    balls = []  # (center, radius) meaning v(e - center) >= radius
    for i in range(2):
        for j in range(2):
            alpha = yinv[i, 0] * (g1 if j == 0 else 0) + yinv[i, 1] * (0 if j == 0 else g2)
            alpha = alpha - (1 if i == j else 0)
            beta = yinv[i, 0] if j == 1 else Fraction(0)
            if beta == 0:
                if alpha != 0 and padic_valuation(alpha, p) < m:
                    return Fraction(0)
                continue
            center = -alpha / beta
            radius = m - padic_valuation(beta, p)
            balls.append((center, radius))
    assert balls, "an invertible y always constrains the unipotent entry"
    r_star = max(r for _, r in balls)
    c_star = next(c for c, r in balls if r == r_star)
    for c, r in balls:
        diff = c_star - c
        if diff != 0 and padic_valuation(diff, p) < r:
            return Fraction(0)
    # back to the unipotent coordinate x = e / (g1 - g2)
    shift = padic_valuation(g1 - g2, p)
    return Fraction(p) ** (shift - r_star)


_QUOTIENT_CACHE = {}


def _k0_quotient(n: int, p: int, level: int):
    key = (n, p, level)
    if key not in _QUOTIENT_CACHE:
        mats = [lift_mod(rows, n) for rows in enumerate_glnzm(n, PrimeContext(p, level))]
        _QUOTIENT_CACHE[key] = [(g, g.inverse()) for g in mats]
    return _QUOTIENT_CACHE[key]


_SINGLE_COSET_CACHE = {}


def orbital_single_coset_gl2(y: QMat, gamma, ctx: PrimeContext) -> Fraction:
    """Orbital integral of the unit mass coset measure mu|_(y K_m) at gamma.

    Sums the ball volumes over the finite conjugation quotient K_0 / K_m',
    where m' = m + spread(y) is the level at which conjugation acts on the
    coset; exact for arbitrary (not necessarily invariant) cosets.
    """
    key = (y.entries(), tuple(gamma), ctx)
    cached = _SINGLE_COSET_CACHE.get(key)
    if cached is not None:
        return cached
    p, m = ctx.p, ctx.m
    spread = label_spread(y, p)
    level = m + spread
    total = Fraction(0)
    for k, kinv in _k0_quotient(2, p, level):
        total += _ball_volume_gl2(k * y * kinv, gamma, ctx)
    # mass of a K_level coset inside K_0 under the level-m reference measure
    value = total * Fraction(1, p ** (4 * (level - m))) / _torus_unit_index(ctx)
    _SINGLE_COSET_CACHE[key] = value
    return value


def _rank2_jacobian(gamma, p: int) -> Fraction:
    """|Delta_{T, GL_2}(gamma)|_p, the density factor of the etale pullback
    from the conjugation cover; the map this package calls the orbital
    integral is the density of that pullback, not the bare orbit volume."""
    g1, g2 = gamma
    delta = (g1 / g2 - 1) * (g2 / g1 - 1)
    return Fraction(p) ** (-padic_valuation(delta, p))


def _orbital_gl2(h: HeckeMeasure, gamma) -> RootP:
    ctx = h.ctx
    p = ctx.p
    out = RootP.rational(0, p)
    if h.biinvariant:
        # all conjugates contribute equally: one ball volume per coset
        scale = Fraction(glnzm_order(2, p, ctx.m), _torus_unit_index(ctx))
        for rep, c in h.items():
            vol = _ball_volume_gl2(rep, gamma, ctx)
            if vol:
                out = out + c * (scale * vol)
    else:
        for rep, c in h.items():
            vol = orbital_single_coset_gl2(rep, gamma, ctx)
            if vol:
                out = out + c * vol
    return out * _rank2_jacobian(gamma, p)


def _orbital_gl1(rep: QMat, gamma_i: Fraction, ctx: PrimeContext) -> Fraction:
    """Density of the unit coset measure on GL_1 at gamma_i: 1 or 0."""
    ratio = gamma_i / rep[0, 0]
    diff = ratio - 1
    if diff == 0 or padic_valuation(diff, ctx.p) >= ctx.m:
        return Fraction(1)
    return Fraction(0)


def orbital_integral(h: HeckeMeasure, gamma: RegularElement) -> OrbitalValue:
    """Orbital integral of h at a regular diagonal gamma.

    Ambient G is supported for GL_1 and GL_2; Levi ambients factor block by
    block (every block of size <= 2), which covers the Levi subgroups of
    GL_3 needed downstream.  Values are exact elements of Q(sqrt p).
    """
    ctx = h.ctx
    if gamma.n != h.ambient.n:
        raise DomainError("size mismatch")
    if h.ambient.kind == "G":
        if h.ambient.n == 1:
            out = RootP.rational(0, ctx.p)
            for rep, c in h.items():
                out = out + c * _orbital_gl1(rep, gamma.entries[0], ctx)
            return OrbitalValue(out, ctx.p, ctx.m)
        if h.ambient.n == 2:
            return OrbitalValue(_orbital_gl2(h, gamma.entries), ctx.p, ctx.m)
        raise DomainError(
            "ambient GL_n orbital integrals are certified only for n <= 2"
        )
    if h.ambient.kind != "M":
        raise DomainError("orbital integrals live on G or on a Levi")
    parab = h.ambient.parab
    if any(b > 2 for b in parab.blocks):
        raise DomainError("Levi blocks of size > 2 are not certified")
    out = RootP.rational(0, ctx.p)
    for rep, c in h.items():
        factor = Fraction(1)
        for (lo, hi), block in zip(parab.block_ranges, parab.levi_blocks(rep)):
            sub = gamma.entries[lo:hi]
            if len(sub) == 1:
                factor *= _orbital_gl1(block, sub[0], ctx)
            else:
                if sub[0] == sub[1]:
                    raise DomainError("gamma not regular inside a block")
                factor *= orbital_single_coset_gl2(block, sub, ctx) * _rank2_jacobian(
                    sub, ctx.p
                )
            if factor == 0:
                break
        if factor:
            out = out + c * factor
    return OrbitalValue(out, ctx.p, ctx.m)


def stable_orbital(h: HeckeMeasure, gamma: RegularElement) -> OrbitalValue:
    """Stable orbital integral; a single-orbit sum for split tori in GL_n.

    (G/T)(Q_p) carries one G orbit for the split diagonal torus, so the
    stable sum collapses to the plain orbital integral; orbit_count
    records the collapse.
    """
    plain = orbital_integral(h, gamma)
    return OrbitalValue(plain.value, plain.p, plain.m, orbit_count=1)


def descent_check(
    h: HeckeMeasure,
    gamma: RegularElement,
    parab: BlockParabolic,
    res_m: HeckeMeasure,
    mutate_normalization: bool = False,
):
    """O_gamma(h) = |Delta_{M,G}(gamma)|^(1/2) * O_gamma(res_normalized h).

    res_m must be the normalized restriction of h through parab.  The
    mutation flag replaces the half power by the full norm, which must
    break the identity somewhere on a valuation grid.
    """
    lhs = orbital_integral(h, gamma).value
    delta = discriminant_delta(SubgroupSpec.levi(parab), gamma.matrix())
    power = 2 if mutate_normalization else 1
    factor = padic_norm_halfpower(delta, h.ctx.p, power)
    rhs = factor * orbital_integral(res_m, gamma).value
    return lhs == rhs, lhs, rhs


def gamma_grid(p: int, n: int, val_range=(-2, 2)):
    """Regular diagonal grid: eigenvalue i is unit_i * p^(v_i).

    For n = 2 the grid runs over all valuation pairs in the window; for
    n = 3 the third eigenvalue is pinned at a unit so the grid size matches
    the rank two case.  Distinct unit multipliers keep every point regular.
    """
    units = [u for u in (1, 3, 5, 7, 11) if u % p != 0]
    lo, hi = val_range
    out = []
    if n == 2:
        for v1 in range(lo, hi + 1):
            for v2 in range(lo, hi + 1):
                out.append(
                    RegularElement(
                        (Fraction(units[0]) * Fraction(p) ** v1,
                         Fraction(units[1]) * Fraction(p) ** v2)
                    )
                )
    elif n == 3:
        for v1 in range(lo, hi + 1):
            for v2 in range(lo, hi + 1):
                out.append(
                    RegularElement(
                        (Fraction(units[0]) * Fraction(p) ** v1,
                         Fraction(units[1]) * Fraction(p) ** v2,
                         Fraction(units[2]))
                    )
                )
    else:
        raise DomainError("grids are provided for n in {2, 3}")
    return out


def separation_rank(values) -> int:
    """Rank over Q(sqrt p) of a pairing matrix given as nested lists."""
    rows = [list(r) for r in values]
    if not rows:
        return 0
    rank = 0
    ncols = len(rows[0])
    col = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def joint_kernel_dimension(matrices) -> int:
    """Dimension of the common left kernel of stacked pairing matrices."""
    stacked = []
    nrows = len(matrices[0])
    for i in range(nrows):
        row = []
        for m in matrices:
            row.extend(m[i])
        stacked.append(row)
    return nrows - separation_rank(stacked)
