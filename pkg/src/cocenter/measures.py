"""Level-m coset measures on G, P, M and the parabolic restriction maps.

A measure is a finite linear combination of reference-Haar restrictions to
level cosets: h = sum c_x * mu|_{x K}, where K is the principal congruence
subgroup of the ambient group (K_m on G, K_m meet P on P, K_m meet M on M)
and mu gives each level coset mass 1.  The restriction map to a Levi is the
concrete three step recipe: conjugate over a transversal of P\\G/K_m chosen
inside K_0, restrict each conjugate to P coset by coset, push to M along
the block projection.  Its normalized variant twists by |lambda_P|^(1/2).

All transversal elements lie in K_0 and K_m is normal in K_0, so every step
stays at level m and is exactly computable; K_m has the exact factorization
(K_m meet U-)(K_m meet M)(K_m meet U), which makes the block projection
carry level cosets of P to level cosets of M.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from cocenter.exactnum import (
    DEFAULT_GROUP_ORDER_GUARD,
    DomainError,
    LevelError,
    RootP,
    padic_norm_halfpower,
    padic_valuation,
)
from cocenter.groups import BlockParabolic, iwasawa_decompose, modulus_lambda
from cocenter.matrices import (
    PrimeContext,
    QMat,
    coset_canonical_rep,
    enumerate_glnzm,
    gln_zp_membership,
    glnzm_order,
    lift_mod,
    mat_mod,
)


@dataclass(frozen=True)
class Ambient:
    """The group a measure lives on: G = GL_n, or a parabolic P, or its Levi M.

    Upper and lower parabolics with the same blocks share the same Levi, so
    M ambients carry blocks but no orientation.
    """

    kind: str  # "G" | "P" | "M"
    n: int
    parab: BlockParabolic | None = None

    def __post_init__(self):
        if self.kind not in ("G", "P", "M"):
            raise DomainError("ambient kind must be G, P or M")
        if self.kind != "G":
            if self.parab is None:
                raise DomainError("P/M ambients need a BlockParabolic")
            if self.parab.n != self.n:
                raise DomainError("parabolic size mismatch")

    @classmethod
    def general_linear(cls, n: int) -> "Ambient":
        return cls("G", n)

    @classmethod
    def parabolic(cls, parab: BlockParabolic) -> "Ambient":
        return cls("P", parab.n, parab)

    @classmethod
    def levi(cls, parab: BlockParabolic) -> "Ambient":
        # normalize orientation away: the Levi ignores it
        return cls("M", parab.n, BlockParabolic(parab.n, parab.blocks, "upper"))

    def key(self):
        if self.kind == "G":
            return ("G", self.n)
        if self.kind == "P":
            return ("P", self.n, self.parab.blocks, self.parab.orientation)
        return ("M", self.n, self.parab.blocks)

    def __eq__(self, other):
        return isinstance(other, Ambient) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def canonical_rep(ambient: Ambient, g: QMat, ctx: PrimeContext) -> QMat:
    """Canonical representative of the level coset of g inside the ambient.

    For y, y' in the ambient subgroup, y' in y K_m already implies
    y^-1 y' lies in the ambient, so coset equality agrees with equality of
    the ambient-level cosets; canonicalization only has to be deterministic
    and constant on K_m cosets.
    """
    if ambient.kind == "G":
        return coset_canonical_rep(g, ctx)
    if ambient.kind == "M":
        parab = ambient.parab
        if not parab.levi_contains(g):
            raise DomainError("element not in the Levi")
        blocks = [coset_canonical_rep(b, ctx) for b in parab.levi_blocks(g)]
        return BlockParabolic.assemble_from_blocks(blocks, parab)
    parab = ambient.parab
    if not parab.contains(g):
        raise DomainError("element not in the parabolic")
    rep = coset_canonical_rep(g, ctx)
    found = coset_meets_parabolic(rep, parab, ctx)
    assert found is not None
    return found


def coset_meets_parabolic(rep: QMat, parab: BlockParabolic, ctx: PrimeContext):
    """A representative of (rep K_m) meet P, or None when the coset misses P.

    Decision by reduction modulo p^m: after an Iwasawa splitting rep = q k,
    the coset meets P exactly when k mod p^m is block triangular, and then
    q times the integral lift of k mod p^m is such a representative.
    """
    q, k = iwasawa_decompose(rep, parab, ctx.p)
    kbar = mat_mod(k, ctx.modulus, ctx.p)
    n = parab.n
    for i in range(n):
        for j in range(n):
            if not parab.in_parabolic(i, j) and kbar[i][j] != 0:
                return None
    return q * lift_mod(kbar, n)


class HeckeMeasure:
    """Finitely supported level-m coset measure with Q(sqrt p) coefficients.

    support maps the canonical representative (as an entry tuple) to a pair
    (representative, coefficient); zero coefficients are dropped.  The
    biinvariant flag asserts invariance under conjugation pullback by all of
    K_0, which `is_ad_invariant` verifies on quotient generators.
    """

    __slots__ = ("ambient", "ctx", "support", "biinvariant")

    def __init__(self, ambient: Ambient, ctx: PrimeContext, support=None, biinvariant=False):
        self.ambient = ambient
        self.ctx = ctx
        cleaned = {}
        for key, (rep, coeff) in (support or {}).items():
            coeff = _as_rootp(coeff, ctx.p)
            if coeff:
                cleaned[key] = (rep, coeff)
        self.support = cleaned
        self.biinvariant = biinvariant

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, ambient: Ambient, ctx: PrimeContext) -> "HeckeMeasure":
        return cls(ambient, ctx, {})

    @classmethod
    def from_pairs(cls, ambient, ctx, pairs, biinvariant=False) -> "HeckeMeasure":
        acc = {}
        for g, coeff in pairs:
            rep = canonical_rep(ambient, g, ctx)
            key = rep.entries()
            coeff = _as_rootp(coeff, ctx.p)
            if key in acc:
                coeff = acc[key][1] + coeff
            acc[key] = (rep, coeff)
        return cls(ambient, ctx, acc, biinvariant)

    @classmethod
    def delta(cls, ambient, ctx, g, coeff=1) -> "HeckeMeasure":
        return cls.from_pairs(ambient, ctx, [(g, coeff)])

    def items(self):
        return self.support.values()

    def coefficient(self, g: QMat) -> RootP:
        rep = canonical_rep(self.ambient, g, self.ctx)
        entry = self.support.get(rep.entries())
        return entry[1] if entry else RootP.rational(0, self.ctx.p)

    def total_mass(self) -> RootP:
        out = RootP.rational(0, self.ctx.p)
        for _, c in self.items():
            out = out + c
        return out

    def scale(self, factor) -> "HeckeMeasure":
        factor = _as_rootp(factor, self.ctx.p)
        return HeckeMeasure(
            self.ambient,
            self.ctx,
            {k: (rep, c * factor) for k, (rep, c) in self.support.items()},
            self.biinvariant,
        )

    def __add__(self, other: "HeckeMeasure") -> "HeckeMeasure":
        if self.ambient != other.ambient or self.ctx != other.ctx:
            raise DomainError("ambient mismatch")
        acc = dict(self.support)
        for k, (rep, c) in other.support.items():
            if k in acc:
                acc[k] = (rep, acc[k][1] + c)
            else:
                acc[k] = (rep, c)
        return HeckeMeasure(self.ambient, self.ctx, acc, False)

    def __eq__(self, other):
        return (
            isinstance(other, HeckeMeasure)
            and self.ambient == other.ambient
            and self.ctx == other.ctx
            and {k: c for k, (_, c) in self.support.items()}
            == {k: c for k, (_, c) in other.support.items()}
        )

    def __len__(self):
        return len(self.support)

    def __repr__(self):
        return f"HeckeMeasure({self.ambient.key()}, p={self.ctx.p}, m={self.ctx.m}, {len(self)} cosets)"


def _as_rootp(coeff, p: int) -> RootP:
    if isinstance(coeff, RootP):
        return coeff
    return RootP(Fraction(coeff), 0, p)


# ---------------------------------------------------------------------------
# basic constructions


def unit_measure(ambient: Ambient, ctx: PrimeContext, guard=DEFAULT_GROUP_ORDER_GUARD):
    """Unit mass spread uniformly over the K_0 part of the ambient group."""
    n = ambient.n
    elements = enumerate_glnzm(n, ctx, guard)
    if ambient.kind == "P":
        parab = ambient.parab
        elements = [
            rows
            for rows in elements
            if all(
                rows[i][j] == 0
                for i in range(n)
                for j in range(n)
                if not parab.in_parabolic(i, j)
            )
        ]
    elif ambient.kind == "M":
        parab = ambient.parab
        elements = [
            rows
            for rows in elements
            if all(
                rows[i][j] == 0 for i in range(n) for j in range(n) if not parab.in_levi(i, j)
            )
        ]
    coeff = Fraction(1, len(elements))
    return HeckeMeasure.from_pairs(
        ambient, ctx, [(lift_mod(rows, n), coeff) for rows in elements], biinvariant=True
    )


def ad_pullback(h: HeckeMeasure, g: QMat) -> HeckeMeasure:
    """Conjugation pullback: mass c at x K_m moves to (g x g^-1) K_m.

    Only g in K_0 keeps K_m cosets at level m (K_m is normal in K_0);
    other g would silently refine the level, so they are rejected.
    """
    if h.ambient.kind != "G":
        raise DomainError("conjugation pullback acts on measures on G")
    if not gln_zp_membership(g, h.ctx.p):
        raise LevelError("conjugator outside GL_n(Z_p) would change the level")
    ginv = g.inverse()
    return HeckeMeasure.from_pairs(
        h.ambient, h.ctx, [(g * rep * ginv, c) for rep, c in h.items()], h.biinvariant
    )


def restrict_to_parabolic(h: HeckeMeasure, parab: BlockParabolic) -> HeckeMeasure:
    """Coset-by-coset restriction H(G) -> H(P).

    A level coset x K_m either misses P or meets it in a single level coset
    x'(K_m meet P); in the latter case the coefficient moves unchanged.
    """
    if h.ambient.kind != "G":
        raise DomainError("restriction starts from measures on G")
    ambient_p = Ambient.parabolic(parab)
    pairs = []
    for rep, c in h.items():
        found = coset_meets_parabolic(rep, parab, h.ctx)
        if found is not None:
            pairs.append((found, c))
    return HeckeMeasure.from_pairs(ambient_p, h.ctx, pairs)


def pushforward_to_levi(h: HeckeMeasure, parab: BlockParabolic) -> HeckeMeasure:
    """Mass-preserving pushforward H(P) -> H(M) along the block projection."""
    if h.ambient.kind != "P":
        raise DomainError("pushforward starts from measures on P")
    ambient_m = Ambient.levi(parab)
    pairs = [(parab.levi_project(rep), c) for rep, c in h.items()]
    return HeckeMeasure.from_pairs(ambient_m, h.ctx, pairs)


# ---------------------------------------------------------------------------
# transversal of P \ G / K_m


class ParabolicTransversal:
    """Representatives of P\\G/K_m chosen inside K_0.

    Since G = P K_0, double cosets biject with orbits of the mod p^m
    parabolic acting on GL_n(Z/p^m) by left multiplication; the orbit
    partition is computed exhaustively, which is also the covering proof.
    """

    def __init__(self, parab: BlockParabolic, ctx: PrimeContext, guard=DEFAULT_GROUP_ORDER_GUARD):
        self.parab = parab
        self.ctx = ctx
        n = parab.n
        all_elements = enumerate_glnzm(n, ctx, guard)
        pbar = [
            rows
            for rows in all_elements
            if all(
                rows[i][j] == 0
                for i in range(n)
                for j in range(n)
                if not parab.in_parabolic(i, j)
            )
        ]
        modulus = ctx.modulus
        lookup = {}
        reps = []
        for rows in all_elements:
            if rows in lookup:
                continue
            mat = lift_mod(rows, n)
            orbit = set()
            for q in pbar:
                prod = tuple(
                    tuple(
                        sum(q[i][k] * rows[k][j] for k in range(n)) % modulus
                        for j in range(n)
                    )
                    for i in range(n)
                )
                orbit.add(prod)
            idx = len(reps)
            reps.append(mat)
            for member in orbit:
                assert member not in lookup
                lookup[member] = idx
        assert len(lookup) == len(all_elements)  # orbits cover GL_n(Z/p^m)
        self.reps = reps
        self.lookup = lookup
        self.parabolic_order_mod = len(pbar)

    def __len__(self):
        return len(self.reps)

    def locate(self, k: QMat) -> int:
        """Index of the double coset containing k in K_0."""
        return self.lookup[mat_mod(k, self.ctx.modulus, self.ctx.p)]

    def perturbed_reps(self):
        """A different valid transversal of the same double cosets.

        Each representative g is replaced by q g kappa with q a unipotent of
        P meet K_0 and kappa in K_m, staying inside K_0 and inside the same
        double coset.
        """
        n = self.parab.n
        radical = self.parab.positions("U")
        q_rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        if radical:
            q_rows[radical[0][0]][radical[0][1]] = Fraction(1)
        q = QMat(q_rows)
        bump_rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        bump_rows[n - 1][0] += self.ctx.modulus
        if n == 1:
            bump_rows[0][0] = Fraction(1 + self.ctx.modulus)
        kappa = QMat(bump_rows)
        return [q * g * kappa for g in self.reps]


def res_unnormalized(
    h: HeckeMeasure, parab: BlockParabolic, transversal: ParabolicTransversal | None = None,
    reps=None,
) -> HeckeMeasure:
    """Parabolic restriction to the Levi: conjugate, restrict, push, sum.

    Requires the conjugation-invariance flag: the per-term decomposition is
    only level-exact for measures fixed by conjugation pullback from K_0.
    """
    if not h.biinvariant:
        raise DomainError("restriction needs a conjugation-invariant measure")
    if transversal is None:
        transversal = ParabolicTransversal(parab, h.ctx)
    if reps is None:
        reps = transversal.reps
    out = HeckeMeasure.zero(Ambient.levi(parab), h.ctx)
    for g in reps:
        out = out + pushforward_to_levi(restrict_to_parabolic(ad_pullback(h, g), parab), parab)
    return out


def normalize_on_levi(h_m: HeckeMeasure, parab: BlockParabolic) -> HeckeMeasure:
    """Twist an M-measure by |lambda_P|^(1/2) coset by coset.

    Well defined because lambda_P is a character whose p-adic norm is 1 on
    the level subgroup of M.
    """
    ctx = h_m.ctx
    out = {}
    for key, (rep, c) in h_m.support.items():
        factor = padic_norm_halfpower(modulus_lambda(parab, rep), ctx.p, 1)
        out[key] = (rep, c * factor)
    return HeckeMeasure(h_m.ambient, ctx, out, h_m.biinvariant)


def res_normalized(
    h: HeckeMeasure, parab: BlockParabolic, transversal: ParabolicTransversal | None = None,
    reps=None,
) -> HeckeMeasure:
    """Normalized restriction: res followed by the |lambda_P|^(1/2) twist."""
    return normalize_on_levi(res_unnormalized(h, parab, transversal, reps), parab)


class RestrictionTable:
    """Precomputed coset-level action of the restriction map.

    res is linear in the measure, and its effect on the indicator of a
    single G coset depends only on the coset; tabulating that once makes
    sweeps over a basis of measures cheap.  Rows are built lazily.
    """

    def __init__(self, parab: BlockParabolic, ctx: PrimeContext, transversal=None):
        self.parab = parab
        self.ctx = ctx
        self.transversal = transversal or ParabolicTransversal(parab, ctx)
        self.ambient_m = Ambient.levi(parab)
        self._rows = {}

    def _row(self, rep: QMat):
        key = rep.entries()
        row = self._rows.get(key)
        if row is None:
            row = []
            for g in self.transversal.reps:
                found = coset_meets_parabolic(
                    canonical_rep(Ambient.general_linear(rep.n), g * rep * g.inverse(), self.ctx),
                    self.parab,
                    self.ctx,
                )
                if found is not None:
                    m_rep = canonical_rep(self.ambient_m, self.parab.levi_project(found), self.ctx)
                    row.append(m_rep)
            self._rows[key] = row
        return row

    def apply(self, h: HeckeMeasure, normalized=False) -> HeckeMeasure:
        if not h.biinvariant:
            raise DomainError("restriction needs a conjugation-invariant measure")
        acc = {}
        for rep, c in h.items():
            for m_rep in self._row(rep):
                key = m_rep.entries()
                if key in acc:
                    acc[key] = (m_rep, acc[key][1] + c)
                else:
                    acc[key] = (m_rep, c)
        out = HeckeMeasure(self.ambient_m, self.ctx, acc)
        if normalized:
            out = normalize_on_levi(out, self.parab)
        return out


# ---------------------------------------------------------------------------
# conjugation invariance and symmetrized bases


def unit_group_generators(p: int, k: int):
    """Generators of (Z/p^k)^*."""
    if k == 1 and p == 2:
        return []
    if p == 2:
        return [3, p**k - 1] if k >= 3 else [3]
    # (Z/p^k)^* is cyclic for odd p; search a generator of the mod p part
    # lifted to a generator mod p^k
    order = (p - 1) * p ** (k - 1)
    for g in range(2, p**k):
        if g % p == 0:
            continue
        ok = True
        for prime in _prime_factors(order):
            if pow(g, order // prime, p**k) == 1:
                ok = False
                break
        if ok:
            return [g]
    raise AssertionError("no generator found")


def _prime_factors(x: int):
    out = set()
    d = 2
    while d * d <= x:
        while x % d == 0:
            out.add(d)
            x //= d
        d += 1
    if x > 1:
        out.add(x)
    return out


def k0_quotient_generators(n: int, p: int, k: int):
    """Integral matrices generating GL_n(Z_p) modulo the level-k subgroup.

    Elementary transvections generate SL_n over the local ring Z/p^k, and
    the unit generators in the top corner complete to GL_n.
    """
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                rows = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
                rows[i][j] = Fraction(1)
                gens.append(QMat(rows))
    for u in unit_group_generators(p, k):
        gens.append(QMat.diagonal([u] + [1] * (n - 1)))
    return gens


def measure_spread(h: HeckeMeasure) -> int:
    """max over the support of -(v_min(x) + v_min(x^-1)); 0 for integral
    cosets.  Conjugation by the level-(m + spread) subgroup fixes every
    support coset, so the K_0 conjugation action factors through a finite
    quotient at that level."""
    p = h.ctx.p
    spread = 0
    for rep, _ in h.items():
        s = -(rep.min_valuation(p) + rep.inverse().min_valuation(p))
        spread = max(spread, int(s))
    return spread


def is_ad_invariant(h: HeckeMeasure, gens=None) -> bool:
    """Exact conjugation invariance under K_0, decided on generators of the
    finite quotient through which the action factors."""
    if h.ambient.kind != "G":
        raise DomainError("invariance check applies to measures on G")
    level = h.ctx.m + measure_spread(h)
    if gens is None:
        gens = k0_quotient_generators(h.ambient.n, h.ctx.p, level)
    return all(ad_pullback(h, g) == h for g in gens)


def label_spread(rep: QMat, p: int) -> int:
    return int(-(rep.min_valuation(p) + rep.inverse().min_valuation(p)))


def ad_orbits(reps, ctx: PrimeContext):
    """Orbits of level cosets on G under conjugation by K_0.

    BFS with quotient generators at the level where the action factors
    through a finite group; exact, no sampling.
    """
    if not reps:
        return []
    n = reps[0].n
    level = ctx.m + max(label_spread(r, ctx.p) for r in reps)
    gens = k0_quotient_generators(n, ctx.p, level)
    gens = gens + [g.inverse() for g in gens]
    ambient = Ambient.general_linear(n)
    key_of = {}
    rep_of = {}
    for r in reps:
        rc = canonical_rep(ambient, r, ctx)
        key_of[rc.entries()] = None
        rep_of[rc.entries()] = rc
    orbits = []
    seen = set()
    for key, rc in rep_of.items():
        if key in seen:
            continue
        orbit = {key}
        frontier = [rc]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = canonical_rep(ambient, g * cur * g.inverse(), ctx)
                nk = nxt.entries()
                assert nk in rep_of, "conjugation left the support universe"
                if nk not in orbit:
                    orbit.add(nk)
                    frontier.append(nxt)
        seen |= orbit
        orbits.append(sorted(orbit))
    return [[rep_of[k] for k in orbit] for orbit in orbits]


def ad_symmetrized_basis(reps, ctx: PrimeContext):
    """Indicator measures of the conjugation orbits of the given cosets."""
    ambient = Ambient.general_linear(reps[0].n)
    out = []
    for orbit in ad_orbits(reps, ctx):
        h = HeckeMeasure.from_pairs(ambient, ctx, [(r, 1) for r in orbit], biinvariant=True)
        out.append(h)
    return out


# ---------------------------------------------------------------------------
# double cosets K_0 d K_0


def smith_valuations(g: QMat, p: int):
    """Elementary divisor valuations of the column lattice of g.

    v_k(minors of size k) is the valuation of the k-th determinantal
    divisor; successive differences give the Smith form exponents.
    """
    import itertools as _it

    n = g.n
    minors_val = [0]
    for k in range(1, n + 1):
        best = None
        for rows in _it.combinations(range(n), k):
            for cols in _it.combinations(range(n), k):
                sub = QMat([[g[i, j] for j in cols] for i in rows])
                d = sub.det()
                if d == 0:
                    continue
                v = padic_valuation(d, p)
                if best is None or v < best:
                    best = v
        if best is None:
            raise DomainError("singular matrix")
        minors_val.append(best)
    return tuple(
        minors_val[k] - minors_val[k - 1] for k in range(1, n + 1)
    )


def hermite_reps_with_divisors(n: int, p: int, divisors):
    """All Hermite forms whose lattice has the given elementary divisors.

    These are exactly the representatives of the left K_0 cosets inside the
    double coset K_0 diag(p^divisors) K_0.
    """
    import itertools as _it

    divisors = tuple(sorted(divisors, reverse=True))
    if any(d < 0 for d in divisors):
        raise DomainError("only nonnegative divisor exponents are enumerated")
    target = tuple(sorted(divisors))
    out = []
    for diag in set(_it.permutations(divisors)):
        # row i entries right of the pivot are reduced mod p^(a_i)
        ranges = [list(range(p ** diag[i])) for i in range(n)]
        uppers = _it.product(*[
            _it.product(ranges[i], repeat=n - 1 - i) for i in range(n)
        ])
        for rows_choice in uppers:
            mat = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                mat[i][i] = Fraction(p) ** diag[i]
                for idx, j in enumerate(range(i + 1, n)):
                    mat[i][j] = Fraction(rows_choice[i][idx])
            h = QMat(mat)
            if smith_valuations(h, p) == target:
                out.append(h)
    return out


def double_coset_measure(n: int, ctx: PrimeContext, divisors, guard=DEFAULT_GROUP_ORDER_GUARD):
    """Indicator (coefficient 1 per level coset) of K_0 diag(p^divisors) K_0."""
    hermites = hermite_reps_with_divisors(n, ctx.p, divisors)
    kappas = [lift_mod(rows, n) for rows in enumerate_glnzm(n, ctx, guard)]
    ambient = Ambient.general_linear(n)
    pairs = [(h * k, 1) for h in hermites for k in kappas]
    out = HeckeMeasure.from_pairs(ambient, ctx, pairs, biinvariant=True)
    assert len(out) == len(hermites) * glnzm_order(n, ctx.p, ctx.m)
    return out


def double_coset_labels(n: int, ctx: PrimeContext, divisors, guard=DEFAULT_GROUP_ORDER_GUARD):
    return [rep for rep, _ in double_coset_measure(n, ctx, divisors, guard).items()]


# ---------------------------------------------------------------------------
# serialization


def measure_to_jsonable(h: HeckeMeasure) -> dict:
    amb = {"group": h.ambient.kind, "n": h.ambient.n}
    if h.ambient.kind == "P":
        amb["blocks"] = list(h.ambient.parab.blocks)
        amb["orientation"] = h.ambient.parab.orientation
    elif h.ambient.kind == "M":
        amb["blocks"] = list(h.ambient.parab.blocks)
    rows = []
    for rep, c in h.items():
        rows.append({"rep": [str(x) for x in rep.entries()], "coeff": str(c)})
    rows.sort(key=lambda r: r["rep"])
    return {
        "ambient": amb,
        "level": {"p": h.ctx.p, "m": h.ctx.m},
        "biinvariant": h.biinvariant,
        "support": rows,
    }


def measure_from_jsonable(data: dict) -> HeckeMeasure:
    amb = data["ambient"]
    n = amb["n"]
    if amb["group"] == "G":
        ambient = Ambient.general_linear(n)
    elif amb["group"] == "P":
        ambient = Ambient.parabolic(BlockParabolic(n, tuple(amb["blocks"]), amb["orientation"]))
    else:
        ambient = Ambient.levi(BlockParabolic(n, tuple(amb["blocks"])))
    ctx = PrimeContext(data["level"]["p"], data["level"]["m"])
    pairs = []
    for row in data["support"]:
        entries = [Fraction(x) for x in row["rep"]]
        mat = QMat([entries[i * n : (i + 1) * n] for i in range(n)])
        pairs.append((mat, RootP.parse(row["coeff"], ctx.p)))
    return HeckeMeasure.from_pairs(ambient, ctx, pairs, data.get("biinvariant", False))
