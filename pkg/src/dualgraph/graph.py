"""Weighted dual trees of rational curves.

Vertices carry self-intersection numbers (negative for the curves we care
about) and edges record transversal intersections. Chains, forks and star
boundaries are thin shape wrappers that all lower to a ``WeightedTree``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property


@dataclass(frozen=True)
class WeightedTree:
    """A finite weighted tree (or the empty graph).

    ``vertices`` is a tuple of ``(id, weight)`` pairs. Ids are opaque
    integers that stay unique for the lifetime of a tree and its
    descendants under ``blow_down``.
    """

    vertices: tuple[tuple[int, int], ...]
    edges: frozenset[frozenset[int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate vertex id")
        known = set(ids)
        for e in self.edges:
            if len(e) != 2 or not e <= known:
                raise ValueError(f"bad edge {sorted(e)}")
        if ids and len(self.edges) != len(ids) - 1:
            raise ValueError("a tree on n vertices needs n - 1 edges")
        if ids and len(self._component(ids[0], known)) != len(ids):
            raise ValueError("graph is not connected")

    @classmethod
    def build(cls, weights: dict[int, int] | Sequence[tuple[int, int]],
              edges: Iterable[tuple[int, int]] = ()) -> WeightedTree:
        items = tuple(weights.items()) if isinstance(weights, dict) else tuple(weights)
        return cls(tuple((int(v), int(w)) for v, w in items),
                   frozenset(frozenset(e) for e in edges))

    @cached_property
    def ids(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.vertices)

    @cached_property
    def weights(self) -> dict[int, int]:
        return dict(self.vertices)

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.ids}
        for e in self.edges:
            u, v = sorted(e)
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(nb)) for v, nb in adj.items()}

    def __len__(self) -> int:
        return len(self.vertices)

    def weight(self, v: int) -> int:
        return self.weights[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def tips(self) -> list[int]:
        return [v for v in self.ids if self.degree(v) <= 1]

    def branching(self) -> list[int]:
        return [v for v in self.ids if self.degree(v) >= 3]

    def _component(self, start: int, allowed: set[int]) -> list[int]:
        seen = [start]
        stack = [start]
        marked = {start}
        adj: dict[int, set[int]] = {v: set() for v in allowed}
        for e in self.edges:
            u, v = tuple(e)
            if u in allowed and v in allowed:
                adj[u].add(v)
                adj[v].add(u)
        while stack:
            u = stack.pop()
            for w in sorted(adj[u]):
                if w not in marked:
                    marked.add(w)
                    seen.append(w)
                    stack.append(w)
        return seen

    def induced(self, keep: Iterable[int]) -> WeightedTree:
        """Induced subgraph on ``keep``; it must be connected."""
        keep = set(keep)
        verts = tuple((v, w) for v, w in self.vertices if v in keep)
        edges = frozenset(e for e in self.edges if e <= keep)
        return WeightedTree(verts, edges)

    def components_without(self, removed: Iterable[int]) -> list[WeightedTree]:
        """Connected components left after deleting ``removed``."""
        left = [v for v in self.ids if v not in set(removed)]
        remaining = set(left)
        out = []
        for v in left:
            if v in remaining:
                comp = self._component(v, remaining)
                remaining -= set(comp)
                out.append(self.induced(comp))
        return out

    def path(self, u: int, v: int) -> list[int]:
        """Vertices on the unique path from ``u`` to ``v``."""
        parent = {u: u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in self.adjacency[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        return out[::-1]

    def dfs_order(self) -> list[int]:
        if not self.ids:
            return []
        return self._component(self.ids[0], set(self.ids))


@dataclass(frozen=True)
class Chain:
    """A linear chain; ``weights[0]`` is the first component, ``weights[-1]`` the tip."""

    weights: tuple[int, ...]

    def __init__(self, weights: Iterable[int]) -> None:
        object.__setattr__(self, "weights", tuple(int(w) for w in weights))

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    @property
    def admissible(self) -> bool:
        return all(w <= -2 for w in self.weights)

    def reversed(self) -> Chain:
        return Chain(self.weights[::-1])

    def to_tree(self) -> WeightedTree:
        n = len(self.weights)
        return WeightedTree.build(list(enumerate(self.weights)),
                                  [(i, i + 1) for i in range(n - 1)])


def _hang_twigs(center_weight: int, twigs: Sequence[Chain]
                ) -> tuple[WeightedTree, list[list[int]]]:
    verts = [(0, center_weight)]
    edges = []
    twig_ids = []
    nxt = 1
    for twig in twigs:
        ids = []
        prev = 0
        for w in twig.weights:
            verts.append((nxt, w))
            edges.append((prev, nxt))
            ids.append(nxt)
            prev = nxt
            nxt += 1
        twig_ids.append(ids)
    return WeightedTree.build(verts, edges), twig_ids


@dataclass(frozen=True)
class Fork:
    """A branching vertex of weight ``-h`` with three nonempty twigs."""

    h: int
    twigs: tuple[Chain, Chain, Chain]

    def __post_init__(self) -> None:
        if len(self.twigs) != 3 or any(len(t) == 0 for t in self.twigs):
            raise ValueError("a fork has exactly three nonempty twigs")
        object.__setattr__(self, "twigs", tuple(Chain(t) for t in self.twigs))

    @property
    def branch_weight(self) -> int:
        return -self.h

    def __len__(self) -> int:
        return 1 + sum(len(t) for t in self.twigs)

    def to_tree(self) -> WeightedTree:
        return _hang_twigs(-self.h, self.twigs)[0]

    def twig_ids(self) -> list[list[int]]:
        return _hang_twigs(-self.h, self.twigs)[1]


@dataclass(frozen=True)
class StarBoundary:
    """A center of weight ``-b`` with ``r >= 3`` nonempty twigs attached at their first components."""

    b: int
    twigs: tuple[Chain, ...]

    def __post_init__(self) -> None:
        if len(self.twigs) < 3 or any(len(t) == 0 for t in self.twigs):
            raise ValueError("a star boundary needs at least three nonempty twigs")
        object.__setattr__(self, "twigs", tuple(Chain(t) for t in self.twigs))

    @property
    def center_weight(self) -> int:
        return -self.b

    @property
    def r(self) -> int:
        return len(self.twigs)

    def __len__(self) -> int:
        return 1 + sum(len(t) for t in self.twigs)

    def to_tree(self) -> WeightedTree:
        return _hang_twigs(-self.b, self.twigs)[0]

    def twig_ids(self) -> list[list[int]]:
        return _hang_twigs(-self.b, self.twigs)[1]


Shape = WeightedTree | Chain | Fork | StarBoundary


def to_tree(shape: Shape) -> WeightedTree:
    if isinstance(shape, WeightedTree):
        return shape
    return shape.to_tree()


def canonical_degree(shape: Shape) -> int:
    """Intersection of the canonical class with the reduced divisor: sum of ``-2 - w``."""
    t = to_tree(shape)
    return sum(-2 - w for _, w in t.vertices)


def self_intersection(shape: Shape) -> int:
    """Square of the reduced divisor: sum of weights plus twice the edge count."""
    t = to_tree(shape)
    return sum(w for _, w in t.vertices) + 2 * len(t.edges)


def blow_down(t: WeightedTree, v: int) -> WeightedTree:
    """Contract the (-1)-vertex ``v``, which must have at most two neighbours.

    Each neighbour's weight goes up by one; two neighbours become adjacent.
    Remaining ids are kept, so ids are never reused.
    """
    if v not in t.weights:
        raise ValueError(f"no vertex {v}")
    if t.weight(v) != -1:
        raise ValueError(f"vertex {v} has weight {t.weight(v)}, not -1")
    nbrs = t.adjacency[v]
    if len(nbrs) > 2:
        raise ValueError(f"vertex {v} is a branching vertex")
    verts = tuple((u, w + 1 if u in nbrs else w) for u, w in t.vertices if u != v)
    edges = {e for e in t.edges if v not in e}
    if len(nbrs) == 2:
        edges.add(frozenset(nbrs))
    return WeightedTree(verts, frozenset(edges))


def chain_of(t: WeightedTree) -> Chain:
    """Read a path-shaped tree as a chain, starting from its smallest-id tip."""
    if not t.ids:
        return Chain(())
    if t.branching():
        raise ValueError("tree is not a chain")
    ends = sorted(t.tips())
    return Chain(t.weight(v) for v in t.path(ends[0], ends[-1]))
