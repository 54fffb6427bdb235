"""Induced unipotent classes over F_q, by exhaustive conjugation.

For a unipotent class C of a Levi M of GL_n(F_q), the induced set is the
union of all G conjugates of C * U.  The ground field here is finite (the
natural setting is an infinite field), so Zariski density in the closure is
replaced by dominance maximality of the Jordan type: nilpotent orbit
closures of GL_n are governed by the dominance order on partitions.
Output carries that bridge explicitly, and every number is the result of a
finite enumeration, never of a formula taken on faith.
"""

from __future__ import annotations

from dataclasses import dataclass

from cocenter.exactnum import (
    DEFAULT_GROUP_ORDER_GUARD,
    DomainError,
    ResourceGuardError,
)
from cocenter.groups import BlockParabolic, jordan_type
from cocenter.matrices import FFMatrix, gln_fq_order


def dominates(lam, mu) -> bool:
    """Dominance order: partial sums of lam bound those of mu."""
    if sum(lam) != sum(mu):
        raise DomainError("dominance compares partitions of the same n")
    total_l = total_m = 0
    for k in range(max(len(lam), len(mu))):
        total_l += lam[k] if k < len(lam) else 0
        total_m += mu[k] if k < len(mu) else 0
        if total_l < total_m:
            return False
    return True


def conjugate_partition(lam):
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > k) for k in range(lam[0]))


def partitions_of(n: int):
    """All partitions of n, descending parts."""
    if n == 0:
        yield ()
        return
    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest
    yield from rec(n, n)


def jordan_block_matrix(partition, q: int) -> FFMatrix:
    """Block diagonal unipotent with upper Jordan blocks of the given sizes."""
    n = sum(partition)
    rows = [[0] * n for _ in range(n)]
    pos = 0
    for part in partition:
        for i in range(part):
            rows[pos + i][pos + i] = 1
            if i + 1 < part:
                rows[pos + i][pos + i + 1] = 1
        pos += part
    return FFMatrix(rows, q)


def gl_generators(n: int, q: int):
    """Transvections and a unit scaling; they generate GL_n(F_q)."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                rows = [[int(a == b) for b in range(n)] for a in range(n)]
                rows[i][j] = 1
                gens.append(FFMatrix(rows, q))
    for u in range(2, q):
        rows = [[int(a == b) for b in range(n)] for a in range(n)]
        rows[0][0] = u
        gens.append(FFMatrix(rows, q))
        break
    return gens


def levi_generators(parab: BlockParabolic, q: int):
    """Generators of M(F_q) = product of block general linear groups."""
    n = parab.n
    gens = []
    for lo, hi in parab.block_ranges:
        size = hi - lo
        for g in gl_generators(size, q):
            rows = [[int(a == b) for b in range(n)] for a in range(n)]
            for i in range(size):
                for j in range(size):
                    rows[lo + i][lo + j] = g[i, j]
            gens.append(FFMatrix(rows, q))
    return gens


def conjugation_closure(seeds, gens, guard=DEFAULT_GROUP_ORDER_GUARD):
    """Closure of a set of matrices under conjugation by the given
    generators (and hence by the group they generate)."""
    gens = gens + [g.inverse() for g in gens]
    seen = set(seeds)
    frontier = list(seen)
    while frontier:
        if len(seen) > guard:
            raise ResourceGuardError("conjugation closure exceeds guard")
        cur = frontier.pop()
        for g in gens:
            nxt = g * cur * g.inverse()
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def build_class(parab: BlockParabolic, block_partitions, q: int,
                guard=DEFAULT_GROUP_ORDER_GUARD):
    """The M(F_q) conjugacy class of the block Jordan representative."""
    if len(block_partitions) != len(parab.blocks):
        raise DomainError("one partition per Levi block")
    for size, partition in zip(parab.blocks, block_partitions):
        if sum(partition) != size:
            raise DomainError(f"partition {partition} does not fit block of size {size}")
    order = 1
    for size in parab.blocks:
        order *= gln_fq_order(size, q)
    if order > guard:
        raise ResourceGuardError(f"|M(F_{q})| = {order} exceeds guard {guard}")
    n = parab.n
    rows = [[0] * n for _ in range(n)]
    for (lo, hi), partition in zip(parab.block_ranges, block_partitions):
        block = jordan_block_matrix(partition, q)
        for i in range(hi - lo):
            for j in range(hi - lo):
                rows[lo + i][lo + j] = block[i, j]
    rep = FFMatrix(rows, q)
    return conjugation_closure([rep], levi_generators(parab, q), guard)


def radical_elements(parab: BlockParabolic, q: int):
    """All of U(F_q): free entries on the radical positions."""
    import itertools

    n = parab.n
    positions = parab.positions("U")
    out = []
    for values in itertools.product(range(q), repeat=len(positions)):
        rows = [[int(a == b) for b in range(n)] for a in range(n)]
        for (i, j), v in zip(positions, values):
            rows[i][j] = v
        out.append(FFMatrix(rows, q))
    return out


@dataclass(frozen=True)
class InducedSet:
    """G(F_q) sweep of C * U: Jordan class histogram plus provenance.

    finite_field_bridge documents the identification used downstream:
    dominance-maximal Jordan type in place of Zariski density of a class in
    the closure of the induced set.
    """

    n: int
    q: int
    blocks: tuple
    block_partitions: tuple
    orientation: str
    classes: tuple  # sorted ((partition, count), ...)
    total: int
    finite_field_bridge: str = (
        "finite-field analog: 'dense class' read as dominance-maximal Jordan type"
    )

    def class_counts(self):
        return dict(self.classes)

    def partitions_present(self):
        return tuple(partition for partition, _ in self.classes)


def induced_set(parab: BlockParabolic, block_partitions, q: int,
                guard=DEFAULT_GROUP_ORDER_GUARD) -> InducedSet:
    """Exhaustive union of G conjugates of C * U, tallied by Jordan type."""
    if gln_fq_order(parab.n, q) > guard:
        raise ResourceGuardError("|GL_n(F_q)| exceeds guard")
    levi_class = build_class(parab, block_partitions, q, guard)
    seeds = set()
    for c in levi_class:
        for urad in radical_elements(parab, q):
            seeds.add(c * urad)
    swept = conjugation_closure(seeds, gl_generators(parab.n, q), guard)
    histogram = {}
    for element in swept:
        lam = jordan_type(element)
        histogram[lam] = histogram.get(lam, 0) + 1
    classes = tuple(sorted(histogram.items()))
    return InducedSet(
        parab.n,
        q,
        parab.blocks,
        tuple(tuple(partition) for partition in block_partitions),
        parab.orientation,
        classes,
        len(swept),
    )


def heart(induced: InducedSet):
    """Classes whose Jordan type dominates every type present; possibly empty.

    Never guesses: when the types present have no common dominating member,
    the result is the empty set.
    """
    present = induced.partitions_present()
    return tuple(
        lam for lam in present if all(dominates(lam, mu) for mu in present)
    )


def check_heart_independence(n: int, blocks, block_partitions, q: int,
                             guard=DEFAULT_GROUP_ORDER_GUARD):
    """Upper and lower inductions from the same Levi class compared whole.

    Returns (ok, upper_set, lower_set); ok demands the full class histogram
    and the heart to coincide.
    """
    upper = induced_set(BlockParabolic(n, blocks, "upper"), block_partitions, q, guard)
    lower = induced_set(BlockParabolic(n, blocks, "lower"), block_partitions, q, guard)
    ok = (
        upper.classes == lower.classes
        and upper.total == lower.total
        and heart(upper) == heart(lower)
    )
    return ok, upper, lower


def count_unipotent_elements(n: int, q: int, guard=DEFAULT_GROUP_ORDER_GUARD) -> int:
    """Exhaustive count of unipotent elements of GL_n(F_q)."""
    from cocenter.matrices import enumerate_gln_fq

    count = 0
    for g in enumerate_gln_fq(n, q, guard):
        try:
            jordan_type(g)
        except DomainError:
            continue
        count += 1
    return count


def richardson_prediction(blocks):
    """Transpose of the sorted block sizes; regression data only, asserted
    against the exhaustive computation, never trusted on its own."""
    return conjugate_partition(tuple(sorted(blocks, reverse=True)))
