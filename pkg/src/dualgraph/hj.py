"""Hirzebruch-Jung chains and their coprime pairs.

An admissible chain ``[w1, ..., wk]`` corresponds to the pair ``(d, q)``
with ``d = det(chain)`` and ``q = det(chain without w1)``, so that ``d/q``
is the negative continued fraction ``-w1 - 1/(-w2 - ...)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .det import chain_det
from .graph import Chain


@dataclass(frozen=True, order=True)
class HJPair:
    d: int
    q: int

    def __post_init__(self) -> None:
        if self.d == 1 and self.q == 0:
            return
        if not (0 < self.q < self.d) or gcd(self.d, self.q) != 1:
            raise ValueError(f"({self.d}, {self.q}) is not a coprime pair with 0 < q < d")


def chain_from_pair(pair: HJPair | tuple[int, int]) -> Chain:
    p = pair if isinstance(pair, HJPair) else HJPair(*pair)
    d, q = p.d, p.q
    out = []
    while q:
        w = -(-d // q)
        out.append(-w)
        d, q = q, w * q - d
    return Chain(out)


def pair_from_chain(chain: Chain) -> HJPair:
    if not chain.admissible:
        raise ValueError(f"chain {list(chain.weights)} has a weight above -2")
    if not chain.weights:
        return HJPair(1, 0)
    return HJPair(chain_det(chain.weights), chain_det(chain.weights[1:]))


def enumerate_chains(d: int) -> list[Chain]:
    """All admissible chains of determinant ``d``, ordered by ``q``."""
    if d < 1:
        raise ValueError("determinant must be positive")
    if d == 1:
        return [Chain(())]
    return [chain_from_pair((d, q)) for q in range(1, d) if gcd(d, q) == 1]


def chains_by_brute_force(d: int) -> set[Chain]:
    """Search all weight vectors directly.

    An admissible chain of length k has determinant at least k + 1 and every
    weight ``w`` satisfies ``-w <= d``, which bounds the search.
    """
    found = set()
    if d == 1:
        found.add(Chain(()))
    for k in range(1, d):
        for ws in itertools.product(range(-d, -1), repeat=k):
            if chain_det(ws) == d:
                found.add(Chain(ws))
    return found
