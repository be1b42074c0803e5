from fractions import Fraction as Q

import pytest

from dualgraph.det import negated_matrix, solve
from dualgraph.forks import fork_candidates, make_record
from dualgraph.graph import Chain, Fork, StarBoundary, WeightedTree
from dualgraph.numerology import (assemble, bmy_check, in_window, langer_check, star_determinant,
                                  zariski_residual)
from dualgraph.peeling import peeling_profile


def star(b, *twigs):
    return StarBoundary(b, tuple(Chain(t) for t in twigs))


def lattice_residual(D: StarBoundary, E: Fork) -> Q:
    """``K^2`` from Noether minus ``K^2`` read off the lattice spanned by D and E."""
    t1, t2 = D.to_tree(), E.to_tree()
    off = len(t1)
    verts = list(t1.vertices) + [(v + off, w) for v, w in t2.vertices]
    edges = [tuple(e) for e in t1.edges] + [tuple(x + off for x in e) for e in t2.edges]
    # D and E are disjoint; the block-diagonal form is all we need
    m = negated_matrix(WeightedTree.build(verts[:off], edges[:len(t1.edges)]))
    m2 = negated_matrix(t2)
    n1, n2 = len(m), len(m2)
    big = [row + [0] * n2 for row in m] + [[0] * n1 + row for row in m2]
    # K . C = -2 - C^2 for every smooth rational curve C
    rhs = [-(-2 - w) for _, w in verts]
    k = solve(big, rhs)
    k2_lattice = -sum(x * y for x, y in zip(k, rhs))
    b2 = n1 + n2
    return Q(10 - b2) - k2_lattice


def test_row_three_three():
    D = star(1, [-2], [-3], [-3, -3])
    (rec,) = [r for r in fork_candidates(10).sporadic]
    n = assemble(D, rec)
    assert (n.b2, n.K2, n.KD, n.KE, n.D2, n.E2, n.KDE2) == (11, -1, 2, 1, -4, -3, -2)
    assert (n.bkD2, n.bkE2, n.P2) == (Q(-29, 24), Q(-8, 5), Q(1, 120))
    assert n.residual == Q(4, 5)
    assert in_window(n)


def test_table_two_row_satisfies_the_equality():
    D = star(1, [-2], [-4], [-3, -2, -2])
    (rec,) = fork_candidates(10).sporadic
    n = assemble(D, rec)
    assert (n.b2, n.KDE2) == (12, -3)
    assert (n.bkD2, n.bkE2, n.P2) == (Q(-41, 28), Q(-8, 5), Q(9, 140))
    assert zariski_residual(n) == 0


def test_residual_equals_lattice_computation():
    checked = 0
    for D in (star(1, [-2], [-3], [-3, -3]), star(1, [-2], [-4], [-3, -2, -2]),
              star(1, [-2], [-3], [-2, -3]), star(1, [-2], [-3], [-3, -2, -2, -2, -2]),
              star(1, [-3], [-4], [-2, -2, -2]), star(1, [-3], [-3], [-2, -2, -2])):
        a = -star_determinant(D)
        c = fork_candidates(a)
        recs = list(c.sporadic) + [f.member(k) for f in c.families for k in range(f.k_min, f.k_min + 3)]
        for rec in recs:
            assert assemble(D, rec).residual == lattice_residual(D, rec.fork)
            checked += 1
    assert checked >= 6


def test_assemble_rejects_mismatched_determinants():
    with pytest.raises(ValueError):
        assemble(star(1, [-2], [-3], [-3, -3]), make_record(Fork(2, (Chain([-2]), Chain([-2]), Chain([-3])))))


def test_bmy_check():
    prof = peeling_profile(star(1, [-2], [-3], [-3, -3]))
    assert prof.bmy_value == Q(1, 12)
    assert bmy_check(prof)
    with pytest.raises(ValueError):
        bmy_check(prof, gamma_lower=prof.a)
    big = peeling_profile(star(1, [-2], [-2] * 6, [-2] * 6))
    assert big.bmy_value == Q(9, 2)
    assert not bmy_check(big)


def test_langer_check():
    assert langer_check(-1, [2, 2])
    assert not langer_check(-1, [2, 3])
    assert not langer_check(0, [], strict=True)
    with pytest.raises(ValueError):
        langer_check(0, [0])
