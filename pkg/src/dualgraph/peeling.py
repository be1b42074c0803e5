"""Barks and the numerical positive part of a boundary tree.

For a twig the bark is the rational divisor ``x`` on the twig with
``(-I) x = e_tip``. For a contractible fork the bark solves
``(-I) x = 2 - (branching number)`` over the whole fork. For a star boundary
the positive part is ``P = beta P_0 + sum beta_i P_i``, where ``P_0`` and
``P_i`` are the rational divisors dual to the center and to the first twig
components.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from collections.abc import Sequence

from .det import det, inverse, negated_matrix, solve, twig_data, is_negative_definite
from .graph import Chain, Fork, StarBoundary, WeightedTree


@dataclass(frozen=True)
class BarkData:
    coefficients: dict[int, Q]
    square: Q


def bark_twig(chain: Chain) -> BarkData:
    """Bark of a twig attached to a branching curve at its first component."""
    if len(chain) == 0:
        return BarkData({}, Q(0))
    t = chain.to_tree()
    n = len(chain)
    rhs = [0] * n
    rhs[-1] = 1
    x = solve(negated_matrix(t), rhs)
    return BarkData(dict(zip(t.ids, x)), -x[-1])


def fork_type(f: Fork) -> tuple[int, int, int] | None:
    """Sorted twig determinants if the fork contracts to a quotient singularity, else None."""
    if f.h < 1 or not all(t.admissible for t in f.twigs):
        return None
    rs = tuple(sorted(twig_data(t).d for t in f.twigs))
    if sum(Q(1, r) for r in rs) <= 1:
        return None
    if not is_negative_definite(f):
        return None
    return rs


def bark_fork(f: Fork) -> BarkData:
    """Bark of an admissible rational fork via the linear system."""
    if fork_type(f) is None:
        raise ValueError("bark of a fork is defined only for contractible quotient forks")
    t = f.to_tree()
    rhs = [2 - t.degree(v) for v in t.ids]
    x = solve(negated_matrix(t), rhs)
    return BarkData(dict(zip(t.ids, x)), -sum(a * b for a, b in zip(x, rhs)))


def fork_bark_square(f: Fork) -> Q:
    """Closed form ``-r1 r2 r3 (delta - 1)^2 / a - sum of twig inductances``."""
    data = [twig_data(t) for t in f.twigs]
    prod = data[0].d * data[1].d * data[2].d
    delta = sum(Q(1, x.d) for x in data)
    a = det(f)
    return -prod * (delta - 1) ** 2 / a - sum(x.inductance for x in data)


@dataclass(frozen=True)
class StarCoefficients:
    """Intersection numbers of the dual divisors of a star boundary.

    ``c[0] = P_0^2`` and ``c[i] = P_0 . P_i``; ``pairing[i][j] = P_i . P_j``
    for twigs ``i, j >= 1`` (index 0 of ``pairing`` is unused and equals ``c``).
    """

    a: int
    Pi: int
    c: tuple[Q, ...]
    pairing: tuple[tuple[Q, ...], ...]


def _star_basics(s: StarBoundary) -> tuple[list, int, int]:
    data = [twig_data(z) for z in s.twigs]
    pi = 1
    for x in data:
        pi *= x.d
    dd = det(s)
    if dd >= 0:
        raise ValueError(f"star boundary has determinant {dd} >= 0")
    return data, pi, -dd


def star_coefficients(s: StarBoundary) -> StarCoefficients:
    data, pi, a = _star_basics(s)
    e = [Q(0)] + [x.capacity for x in data]
    r = s.r
    c = tuple(Q(pi, a) * e[i] if i else Q(pi, a) for i in range(r + 1))
    rows = [c]
    for i in range(1, r + 1):
        row = [c[i]]
        for j in range(1, r + 1):
            v = e[i] * e[j] * Q(pi, a)
            if i == j:
                v -= e[i]
            row.append(v)
        rows.append(tuple(row))
    return StarCoefficients(a, pi, c, tuple(rows))


def star_coefficients_oracle(s: StarBoundary) -> StarCoefficients:
    """Same table read off the inverse intersection matrix."""
    data, pi, a = _star_basics(s)
    t = s.to_tree()
    ids = [0] + [z[0] for z in s.twig_ids()]
    inv = inverse(negated_matrix(t))
    pos = {v: i for i, v in enumerate(t.ids)}
    # P_u . P_v is the (u, v) entry of I^{-1} = -(-I)^{-1}
    rows = tuple(tuple(-inv[pos[u]][pos[v]] for v in ids) for u in ids)
    return StarCoefficients(a, pi, rows[0], rows)


@dataclass(frozen=True)
class PeelingProfile:
    beta: Q
    beta_twigs: tuple[Q, ...]
    capacities: tuple[Q, ...]
    Pi: int
    a: int
    p_squared: Q

    @property
    def bmy_value(self) -> Q:
        """``Pi (beta + sum beta_i e_i)^2``, which equals ``a P^2`` when all ``beta_i`` vanish."""
        s = self.beta + sum(b * e for b, e in zip(self.beta_twigs, self.capacities))
        return self.Pi * s * s


def peeling_profile(s: StarBoundary) -> PeelingProfile:
    data, pi, a = _star_basics(s)
    beta = s.r - 2 - sum(Q(1, x.d) for x in data)
    zeros = tuple(Q(0) for _ in data)
    return PeelingProfile(beta, zeros, tuple(x.capacity for x in data), pi, a,
                          Q(pi, a) * beta * beta)


def p_squared_from_coefficients(s: StarBoundary) -> Q:
    """``P^2`` expanded as ``(beta P_0 + sum beta_i P_i)^2`` with the star coefficient table."""
    coeffs = star_coefficients(s)
    t = s.to_tree()
    betas = [positive_part_intersection(t, 0)] + [positive_part_intersection(t, z[0])
                                                   for z in s.twig_ids()]
    n = len(betas)
    return sum(betas[i] * betas[j] * coeffs.pairing[i][j] for i in range(n) for j in range(n))


def beta_twig(s: StarBoundary, i: int) -> Q:
    """Twig parameter for a twig attached at a tip; always zero for a star boundary."""
    return twig_betas(s.to_tree(), 0)[i]


def maximal_twigs(t: WeightedTree) -> list[list[int]]:
    """Maximal twigs of a tree with a branching vertex, each listed from the branch side."""
    if not t.branching():
        raise ValueError("a chain has no twigs in this sense")
    out = []
    for tip in t.tips():
        walk = [tip]
        prev, cur = None, tip
        while True:
            nxt = [u for u in t.adjacency[cur] if u != prev]
            if len(nxt) != 1 or t.degree(nxt[0]) >= 3:
                break
            prev, cur = cur, nxt[0]
            walk.append(cur)
        out.append(walk[::-1])
    return out


def positive_part_intersection(t: WeightedTree, v: int) -> Q:
    """``P . v`` where ``P = K + D - Bk(D)`` and D is a non-fork tree.

    ``(K + D) . v = deg(v) - 2`` by adjunction, twig components are
    orthogonal to ``P`` by construction of the bark, and a non-twig vertex
    meets the bark of an adjacent twig in ``1/det(twig)``.
    """
    twigs = maximal_twigs(t)
    for tw in twigs:
        if v in tw:
            return Q(0)
    value = Q(t.degree(v) - 2)
    for tw in twigs:
        if tw[0] in t.adjacency[v]:
            value -= Q(1, det(t.induced(tw)))
    return value


def bark_vector(t: WeightedTree) -> dict[int, Q]:
    """Coefficients of ``Bk(D)`` for a non-fork tree, one linear solve per maximal twig."""
    out = {v: Q(0) for v in t.ids}
    for tw in maximal_twigs(t):
        rhs = [0] * len(tw)
        rhs[-1] = 1
        x = solve(negated_matrix(t.induced(tw), tw), rhs)
        out.update(zip(tw, x))
    return out


def positive_part_intersection_oracle(t: WeightedTree, v: int) -> Q:
    """Same number as ``positive_part_intersection`` with ``Bk(D) . v`` read off the full matrix."""
    bk = bark_vector(t)
    m = negated_matrix(t)
    pos = {u: i for i, u in enumerate(t.ids)}
    bk_dot = sum(-bk[u] * m[pos[u]][pos[v]] for u in t.ids)
    return Q(t.degree(v) - 2) - bk_dot


def twig_betas(t: WeightedTree, center: int) -> list[Q]:
    """``P . C_i`` for each neighbour ``C_i`` of ``center``, in adjacency order."""
    return [positive_part_intersection(t, u) for u in t.adjacency[center]]


def beta_integrality_check(shape: StarBoundary | WeightedTree, center: int = 0) -> list[bool]:
    """For every branch ``Z_i`` at the center: is ``beta_i * det(Z_i minus C_i)`` an integer?"""
    t = shape.to_tree() if isinstance(shape, StarBoundary) else shape
    out = []
    for u in t.adjacency[center]:
        beta_i = positive_part_intersection(t, u)
        comp = next(c for c in t.components_without([center]) if u in c.weights)
        rest = 1
        for piece in comp.components_without([u]):
            rest *= det(piece)
        out.append((beta_i * rest).denominator == 1)
    return out


@dataclass(frozen=True)
class TwoBranchData:
    b11: Q
    b12: Q
    b22: Q
    beta1: Q
    beta2: Q

    @property
    def p_squared(self) -> Q:
        return (self.b11 * self.beta1 ** 2 + 2 * self.b12 * self.beta1 * self.beta2
                + self.b22 * self.beta2 ** 2)


def two_branch_tree(t1: Chain, t2: Chain, link: Chain, u1: Chain, u2: Chain,
                    b1: int, b2: int) -> tuple[WeightedTree, int, int]:
    """Tree with branch vertices ``-b1`` (twigs t1, t2) and ``-b2`` (twigs u1, u2) joined by ``link``."""
    verts = [(0, -b1), (1, -b2)]
    edges = []
    nxt = 2

    def hang(anchor: int, chain: Chain) -> int:
        nonlocal nxt
        prev = anchor
        for w in chain.weights:
            verts.append((nxt, w))
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        return prev

    hang(0, t1)
    hang(0, t2)
    end = hang(0, link)
    edges.append((end, 1))
    hang(1, u1)
    hang(1, u2)
    return WeightedTree.build(verts, edges), 0, 1


def two_branch_coefficients(t1: Chain, t2: Chain, link: Chain, u1: Chain, u2: Chain,
                            b1: int, b2: int) -> TwoBranchData:
    for c in (t1, t2, u1, u2):
        if len(c) == 0:
            raise ValueError("each branch vertex needs two nonempty twigs")
    tree, v1, v2 = two_branch_tree(t1, t2, link, u1, u2, b1, b2)
    a = -det(tree)
    if a <= 0:
        raise ValueError("two-branch boundary must have negative determinant")
    left_side, right_side = _sides(tree, v1, v2)
    d1, d2, e1, e2 = (det(c) for c in (t1, t2, u1, u2))
    b11 = Q(d1 * d2 * det(right_side), a)
    b12 = Q(d1 * d2 * e1 * e2, a)
    b22 = Q(e1 * e2 * det(left_side), a)
    beta1 = 1 - Q(1, d1) - Q(1, d2)
    beta2 = 1 - Q(1, e1) - Q(1, e2)
    return TwoBranchData(b11, b12, b22, beta1, beta2)


def _sides(tree: WeightedTree, v1: int, v2: int) -> tuple[WeightedTree, WeightedTree]:
    # component of tree - v2 containing v1, and of tree - v1 containing v2
    left = next(c for c in tree.components_without([v2]) if v1 in c.weights)
    right = next(c for c in tree.components_without([v1]) if v2 in c.weights)
    return left, right


def two_branch_oracle(t1: Chain, t2: Chain, link: Chain, u1: Chain, u2: Chain,
                      b1: int, b2: int) -> TwoBranchData:
    tree, v1, v2 = two_branch_tree(t1, t2, link, u1, u2, b1, b2)
    inv = inverse(negated_matrix(tree))
    pos = {v: i for i, v in enumerate(tree.ids)}
    p = lambda u, v: -inv[pos[u]][pos[v]]
    beta1 = 1 - Q(1, det(t1)) - Q(1, det(t2))
    beta2 = 1 - Q(1, det(u1)) - Q(1, det(u2))
    return TwoBranchData(p(v1, v1), p(v1, v2), p(v2, v2), beta1, beta2)


def positive_part_square_oracle(s: StarBoundary) -> Q:
    """``P^2`` with ``P = sum_u (P . u) P_u`` and the full inverse matrix."""
    t = s.to_tree()
    inv = inverse(negated_matrix(t))
    pairs = [positive_part_intersection_oracle(t, v) for v in t.ids]
    n = len(pairs)
    return sum(-inv[i][j] * pairs[i] * pairs[j] for i in range(n) for j in range(n))
