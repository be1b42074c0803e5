import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from dualgraph.det import (bareiss, chain_det, det, det_oracle, inverse, is_negative_definite,
                           leading_minors, negated_matrix, solve, twig_data)
from dualgraph.graph import Chain, Fork, StarBoundary, WeightedTree


@st.composite
def trees(draw, max_size=10, weights=(-6, 0)):
    n = draw(st.integers(1, max_size))
    ws = [draw(st.integers(*weights)) for _ in range(n)]
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    return WeightedTree.build(list(enumerate(ws)), [(p, i) for i, p in zip(range(1, n), parents)])


def test_known_determinants():
    assert chain_det([]) == 1
    assert chain_det([-2] * 5 + [-3]) == 13
    assert det(Chain([-2, -2, -2])) == 4
    assert det(Fork(2, (Chain([-2]), Chain([-3]), Chain([-2, -2, -2])))) == 10
    # E8 is unimodular, E7 and E6 are not
    assert det(Fork(2, (Chain([-2]), Chain([-2, -2]), Chain([-2] * 4)))) == 1
    assert det(Fork(2, (Chain([-2]), Chain([-2, -2]), Chain([-2] * 3)))) == 2
    assert det(Fork(2, (Chain([-2]), Chain([-2, -2]), Chain([-2, -2])))) == 3
    assert det(StarBoundary(1, (Chain([-2]), Chain([-3]), Chain([-3, -3])))) == -10


def test_empty_tree_has_determinant_one():
    assert det(WeightedTree(())) == 1


def test_bareiss_small():
    assert bareiss([[2, 1], [1, 2]]) == 3
    assert bareiss([[0, 1], [1, 0]]) == -1
    assert bareiss([[1, 2], [2, 4]]) == 0


@settings(max_examples=200, deadline=None)
@given(trees())
def test_det_matches_bareiss(t):
    assert det(t) == det_oracle(t)


@settings(max_examples=100, deadline=None)
@given(trees(weights=(-6, -1)))
def test_negative_definite_matches_minors(t):
    minors = leading_minors(t)
    assert is_negative_definite(t) == all(m > 0 for m in minors)


def test_negative_definite_examples():
    assert is_negative_definite(Chain([-2] * 7))
    assert not is_negative_definite(Chain([-1, -1]))
    assert not is_negative_definite(Fork(1, (Chain([-2]), Chain([-3]), Chain([-3]))))


def test_twig_data():
    td = twig_data(Chain([-3, -4]))
    assert (td.d, td.d_bar, td.d_tilde) == (11, 4, 3)
    assert td.capacity == Q(4, 11)
    assert td.inductance == Q(3, 11)
    with pytest.raises(ValueError):
        twig_data(Chain([]))
    with pytest.raises(ValueError):
        twig_data(Chain([-1, -1]))


def test_solve_and_inverse():
    m = negated_matrix(Chain([-2, -3]).to_tree())
    assert m == [[2, -1], [-1, 3]]
    assert solve(m, [1, 0]) == [Q(3, 5), Q(1, 5)]
    inv = inverse(m)
    for i in range(2):
        for j in range(2):
            assert sum(m[i][k] * inv[k][j] for k in range(2)) == (i == j)
    with pytest.raises(ValueError):
        solve([[1, 1], [1, 1]], [0, 1])


def test_forest_determinant_is_product_over_components():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(2, 8)
        t = WeightedTree.build([(i, rng.randint(-5, -1)) for i in range(n)],
                               [(rng.randrange(i), i) for i in range(1, n)])
        removed = [v for v in t.ids if rng.random() < 0.3]
        keep = [v for v in t.ids if v not in removed]
        parts = t.components_without(removed)
        prod = 1
        for p in parts:
            prod *= det(p)
        full = negated_matrix(t)
        sub = [[full[i][j] for j in keep] for i in keep]
        assert prod == (bareiss(sub) if keep else 1)
