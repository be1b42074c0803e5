"""Exact determinants and linear solves for weighted trees.

The determinant of a tree is that of the negated intersection matrix, so a
negative definite tree has positive determinant and the empty tree has
determinant 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from collections.abc import Sequence

from .graph import Chain, Shape, WeightedTree, to_tree


def chain_det(weights: Sequence[int]) -> int:
    """Continuant recurrence ``d_k = -w_k d_{k-1} - d_{k-2}``."""
    prev, cur = 0, 1
    for w in weights:
        prev, cur = cur, -w * cur - prev
    return cur


def det(shape: Shape) -> int:
    """Determinant by leaf elimination; works on any forest of ``WeightedTree`` type."""
    t = to_tree(shape)
    if isinstance(shape, Chain):
        return chain_det(shape.weights)
    total = 1
    for comp in t.components_without(()):
        total *= _tree_det(comp)
    return total


def _tree_det(t: WeightedTree) -> int:
    # full[v]: det of the subtree hanging at v; cut[v]: same with v removed
    order = t.dfs_order()
    parent = {order[0]: None}
    for v in order:
        for u in t.adjacency[v]:
            if u not in parent:
                parent[u] = v
    full: dict[int, int] = {}
    cut: dict[int, int] = {}
    for v in reversed(order):
        kids = [u for u in t.adjacency[v] if parent.get(u) == v]
        prod = 1
        for u in kids:
            prod *= full[u]
        value = -t.weight(v) * prod
        for u in kids:
            rest = 1
            for x in kids:
                if x != u:
                    rest *= full[x]
            value -= cut[u] * rest
        full[v] = value
        cut[v] = prod
    return full[order[0]]


def negated_matrix(t: WeightedTree, order: Sequence[int] | None = None) -> list[list[int]]:
    """The matrix ``-I`` of the tree in the given vertex order."""
    order = list(order if order is not None else t.ids)
    pos = {v: i for i, v in enumerate(order)}
    m = [[0] * len(order) for _ in order]
    for v in order:
        m[pos[v]][pos[v]] = -t.weight(v)
    for e in t.edges:
        u, v = tuple(e)
        if u in pos and v in pos:
            m[pos[u]][pos[v]] = m[pos[v]][pos[u]] = -1
    return m


def bareiss(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination with row pivoting."""
    a = [list(row) for row in matrix]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def det_oracle(shape: Shape) -> int:
    """Independent determinant: build the full matrix and run Bareiss."""
    return bareiss(negated_matrix(to_tree(shape)))


def is_negative_definite(shape: Shape) -> bool:
    """Sylvester's criterion on the leading minors of a depth-first order.

    Every prefix of a depth-first order spans a subtree, so each leading
    minor is itself a tree determinant.
    """
    t = to_tree(shape)
    order = t.dfs_order()
    return all(_tree_det(t.induced(order[:k])) > 0 for k in range(1, len(order) + 1))


def leading_minors(shape: Shape) -> list[int]:
    t = to_tree(shape)
    order = t.dfs_order()
    return [_tree_det(t.induced(order[:k])) for k in range(1, len(order) + 1)]


@dataclass(frozen=True)
class TwigData:
    """Determinants of a chain and of the chain with one end removed.

    ``d_bar`` drops the first component (the one next to the branch),
    ``d_tilde`` drops the tip.
    """

    d: int
    d_bar: int
    d_tilde: int

    @property
    def capacity(self) -> Q:
        return Q(self.d_bar, self.d)

    @property
    def inductance(self) -> Q:
        return Q(self.d_tilde, self.d)


def twig_data(chain: Chain) -> TwigData:
    if len(chain) == 0:
        raise ValueError("twig data needs a nonempty chain")
    w = chain.weights
    d = chain_det(w)
    if d == 0:
        raise ValueError(f"chain {list(w)} is degenerate")
    return TwigData(d, chain_det(w[1:]), chain_det(w[:-1]))


def solve(matrix: Sequence[Sequence[int | Q]], rhs: Sequence[int | Q]) -> list[Q]:
    """Gauss-Jordan over the rationals; raises on a singular system."""
    n = len(matrix)
    a = [[Q(x) for x in row] + [Q(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n] for row in a]


def inverse(matrix: Sequence[Sequence[int | Q]]) -> list[list[Q]]:
    n = len(matrix)
    cols = [solve(matrix, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]
