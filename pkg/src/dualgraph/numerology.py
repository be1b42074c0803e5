"""Intersection-number bookkeeping for a boundary tree D and a contractible fork E.

On a smooth rational surface whose Picard group is spanned by the
components of D and E, Noether's formula gives ``b2 = #D + #E`` and
``K^2 = 10 - b2``. The Zariski decomposition of ``K + D + E`` must then
satisfy ``(K + D + E)^2 = P^2 + Bk(D)^2 + Bk(E)^2``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction as Q

from .det import det
from .forks import ForkRecord, make_record
from .graph import Fork, StarBoundary, canonical_degree, self_intersection
from .peeling import PeelingProfile, bark_twig, peeling_profile


@dataclass(frozen=True)
class SurfaceNumerology:
    n_D: int
    n_E: int
    b2: int
    K2: int
    KD: int
    KE: int
    D2: int
    E2: int
    KDE2: int
    bkD2: Q
    bkE2: Q
    P2: Q

    @property
    def residual(self) -> Q:
        return zariski_residual(self)


def boundary_bark_square(s: StarBoundary) -> Q:
    """``Bk(D)^2`` for a star boundary: the sum of its twig bark squares."""
    return sum((bark_twig(z).square for z in s.twigs), Q(0))


def assemble(D: StarBoundary, E: ForkRecord | Fork,
             profile: PeelingProfile | None = None) -> SurfaceNumerology:
    rec = E if isinstance(E, ForkRecord) else make_record(E)
    prof = profile or peeling_profile(D)
    if prof.a != rec.a:
        raise ValueError(f"determinant mismatch: -d(D) = {prof.a} but d(E) = {rec.a}")
    n_D, n_E = len(D), rec.size
    b2 = n_D + n_E
    K2 = 10 - b2
    KD, KE = canonical_degree(D), rec.k_degree
    D2, E2 = self_intersection(D), self_intersection(rec.fork)
    KDE2 = K2 + 2 * KD + D2 + 2 * KE + E2
    return SurfaceNumerology(n_D, n_E, b2, K2, KD, KE, D2, E2, KDE2,
                             boundary_bark_square(D), rec.bark_square, prof.p_squared)


def zariski_residual(n: SurfaceNumerology) -> Q:
    return n.KDE2 - (n.P2 + n.bkD2 + n.bkE2)


def bmy_check(profile: PeelingProfile, gamma_lower: int | None = None) -> bool:
    """``a P^2 <= 3 a / |G|`` with ``|G|`` replaced by a lower bound (default ``2a``)."""
    g = 2 * profile.a if gamma_lower is None else gamma_lower
    if g < 2 * profile.a:
        raise ValueError("group order lower bound must be at least 2a")
    return profile.bmy_value <= Q(3 * profile.a, g)


def langer_check(chi: int, orders: Sequence[int], strict: bool = False) -> bool:
    """Orbifold Euler characteristic test ``chi + sum 1/|G_p| >= 0`` (``> 0`` when strict)."""
    if any(o < 1 for o in orders):
        raise ValueError("group orders must be positive")
    value = chi + sum(Q(1, o) for o in orders)
    return value > 0 if strict else value >= 0


WINDOW_LOW, WINDOW_HIGH = Q(-2), Q(-3, 14)


def in_window(n: SurfaceNumerology) -> bool:
    """Whether the boundary bark square lies in the range that forces ``(K+D+E)^2`` into {-2, -3}."""
    return WINDOW_LOW <= n.bkD2 <= WINDOW_HIGH


def star_determinant(s: StarBoundary) -> int:
    return det(s)
