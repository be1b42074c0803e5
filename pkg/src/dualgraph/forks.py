"""Forks that contract to quotient singularities, organised by determinant.

A fork with branch weight ``-h`` and twigs of determinants ``r1 <= r2 <= r3``
contracts to a quotient singularity exactly when ``1/r1 + 1/r2 + 1/r3 > 1``
and it is negative definite. Its determinant is

    a = r1 r2 r3 h - rb1 r2 r3 - r1 rb2 r3 - r1 r2 rb3

where ``rb_i`` is the determinant of twig ``i`` without its first component.
The dihedral type (2, 2, n) with ``h = 2`` comes in infinite families:
prepending a (-2)-curve to the long twig keeps ``n - rb3`` fixed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction as Q
from math import gcd

from .det import det, det_oracle, twig_data
from .graph import Chain, Fork, canonical_degree
from .hj import chain_from_pair, enumerate_chains
from .peeling import bark_fork, fork_bark_square, fork_type

DIHEDRAL = "(2,2,n)"
TETRAHEDRAL = "(2,3,3)"
OCTAHEDRAL = "(2,3,4)"
ICOSAHEDRAL = "(2,3,5)"
FORK_TYPES = (DIHEDRAL, TETRAHEDRAL, OCTAHEDRAL, ICOSAHEDRAL)
NOT_QUOTIENT = "not-quotient"


def type_label(triple: tuple[int, int, int]) -> str:
    r1, r2, r3 = sorted(triple)
    if (r1, r2) == (2, 2):
        return DIHEDRAL
    label = f"({r1},{r2},{r3})"
    if label in FORK_TYPES:
        return label
    return NOT_QUOTIENT


def classify_fork(f: Fork) -> str:
    """Type label, or ``not-quotient`` when the fork does not contract to a quotient point."""
    triple = fork_type(f)
    if triple is None or f.h < 2:
        return NOT_QUOTIENT
    return type_label(triple)


def fork_determinant(triple: tuple[int, int, int], h: int, bars: tuple[int, int, int]) -> int:
    r1, r2, r3 = triple
    b1, b2, b3 = bars
    return r1 * r2 * r3 * h - b1 * r2 * r3 - r1 * b2 * r3 - r1 * r2 * b3


@dataclass(frozen=True)
class ForkRecord:
    fork: Fork
    type: str
    triple: tuple[int, int, int]
    h: int
    a: int
    twig_pairs: tuple[tuple[int, int], ...]
    bark_square: Q
    k_degree: int
    size: int
    family_base: Chain | None = None
    family_k: int | None = None

    @property
    def group_order_lower_bound(self) -> int:
        return 2 * self.a

    @property
    def square(self) -> int:
        # sum of weights plus twice the edges; equals -K.E - 2 for a tree
        return -self.k_degree - 2


def make_record(f: Fork, base: Chain | None = None, k: int | None = None) -> ForkRecord:
    label = classify_fork(f)
    if label == NOT_QUOTIENT:
        raise ValueError("fork does not contract to a quotient singularity")
    data = [twig_data(t) for t in f.twigs]
    bark = fork_bark_square(f)
    return ForkRecord(
        fork=f, type=label, triple=tuple(sorted(x.d for x in data)), h=f.h, a=det(f),
        twig_pairs=tuple((x.d, x.d_bar) for x in data), bark_square=bark,
        k_degree=canonical_degree(f), size=len(f), family_base=base, family_k=k)


def _sort_key(rec: ForkRecord) -> tuple:
    return (FORK_TYPES.index(rec.type), rec.h, rec.size,
            tuple(t.weights for t in rec.fork.twigs))


@dataclass(frozen=True)
class ForkFamily:
    """Forks ``h = 2`` with twigs ``[-2], [-2]`` and ``[-2]*k + base``, for ``k >= k_min``."""

    a: int
    base: Chain
    k_min: int = 0

    def member(self, k: int) -> ForkRecord:
        if k < self.k_min:
            raise ValueError(f"family starts at k = {self.k_min}")
        twig = Chain((-2,) * k + self.base.weights)
        return make_record(Fork(2, (Chain([-2]), Chain([-2]), twig)), self.base, k)

    @property
    def bark_square(self) -> Q:
        return self.member(self.k_min).bark_square

    @property
    def k_degree(self) -> int:
        return self.member(self.k_min).k_degree

    def size(self, k: int) -> int:
        return 3 + k + len(self.base)


@dataclass(frozen=True)
class ForkCandidates:
    a: int
    sporadic: tuple[ForkRecord, ...]
    families: tuple[ForkFamily, ...] = field(default_factory=tuple)


def _family_bases(m: int) -> list[tuple[Chain, int]]:
    """Chains ``c`` with ``det(c) - det(c minus first) = m`` not starting with -2.

    Such a base has determinant at most ``2m - 1``; for ``m = 1`` the base is
    empty and the family starts at ``k = 1``.
    """
    if m == 1:
        return [(Chain(()), 1)]
    out = []
    for n in range(m + 1, 2 * m):
        if gcd(n, m) == 1:
            c = chain_from_pair((n, n - m))
            if c.weights[0] != -2:
                out.append((c, 0))
    return out


def fork_candidates(a: int) -> ForkCandidates:
    """Every contractible fork with ``h >= 2`` and determinant ``a``, with dihedral families kept symbolic."""
    if a < 1:
        raise ValueError("determinant must be positive")
    sporadic: list[ForkRecord] = []
    families: list[ForkFamily] = []
    if a % 4 == 0:
        m = a // 4
        families = [ForkFamily(a, base, k0) for base, k0 in _family_bases(m)]
        # h >= 3 gives n (h - 1) - nbar = m, so n <= m
        for h in itertools.count(3):
            if 2 * (h - 2) + 1 > m:
                break
            for n in range(2, m + 1):
                nbar = n * (h - 1) - m
                if 0 < nbar < n and gcd(n, nbar) == 1:
                    twig = chain_from_pair((n, nbar))
                    sporadic.append(make_record(Fork(h, (Chain([-2]), Chain([-2]), twig))))
    for r2, r3 in ((3, 3), (3, 4), (3, 5)):
        prod = 2 * r2 * r3
        for h in itertools.count(2):
            # a >= prod (h - 2) + something positive
            if prod * (h - 2) >= a:
                break
            seen = set()
            for c2 in enumerate_chains(r2):
                for c3 in enumerate_chains(r3):
                    key = tuple(sorted((c2.weights, c3.weights)))
                    if r2 == r3 and key in seen:
                        continue
                    seen.add(key)
                    bars = (1, twig_data(c2).d_bar, twig_data(c3).d_bar)
                    if fork_determinant((2, r2, r3), h, bars) == a:
                        sporadic.append(make_record(Fork(h, (Chain([-2]), c2, c3))))
    sporadic.sort(key=_sort_key)
    return ForkCandidates(a, tuple(sporadic), tuple(families))


def enumerate_forks(a: int, size_cap: int = 30) -> list[ForkRecord]:
    """All contractible forks of determinant ``a`` with at most ``size_cap`` vertices."""
    cands = fork_candidates(a)
    out = [r for r in cands.sporadic if r.size <= size_cap]
    for fam in cands.families:
        k = fam.k_min
        while fam.size(k) <= size_cap:
            out.append(fam.member(k))
            k += 1
    out.sort(key=_sort_key)
    return out


def feasible_a(a: int) -> set[str]:
    """Fork types realised at determinant ``a`` (branch weight at least 2)."""
    cands = fork_candidates(a)
    labels = {r.type for r in cands.sporadic}
    if cands.families:
        labels.add(DIHEDRAL)
    return labels


def forks_by_brute_force(a: int, size_cap: int) -> list[Fork]:
    """Search weight vectors directly; only for small caps.

    Twig weights range over ``[-(a + 1), -2]`` and ``h`` over ``[2, a + 1]``.
    The determinant comes from the full matrix, not from the twig formula.
    """
    weights = range(-(a + 1), -1)
    chains = []
    for length in range(1, size_cap - 2):
        for ws in itertools.product(weights, repeat=length):
            chains.append(Chain(ws))
    dets = {c: det(c) for c in chains}
    found = []
    for c1, c2, c3 in itertools.combinations_with_replacement(chains, 3):
        if 1 + len(c1) + len(c2) + len(c3) > size_cap:
            continue
        if Q(1, dets[c1]) + Q(1, dets[c2]) + Q(1, dets[c3]) <= 1:
            continue
        for h in range(2, a + 2):
            f = Fork(h, (c1, c2, c3))
            if det_oracle(f) == a and classify_fork(f) != NOT_QUOTIENT:
                found.append(f)
    return found


def canonical_fork_key(f: Fork) -> tuple:
    return (f.h, tuple(sorted(t.weights for t in f.twigs)))


def check_bark(rec: ForkRecord) -> bool:
    """Closed-form bark square against the linear system."""
    return bark_fork(rec.fork).square == rec.bark_square
