from fractions import Fraction as Q

import pytest

from dualgraph.casegen import (RULES, ConstraintSet, boundary_rule, enumerate_r4, enumerate_triples,
                               fiber_multiplicities, fiber_obstruction, generate_cases,
                               r4_star_determinant, tuple_bmy_value)
from dualgraph.det import det
from dualgraph.graph import Chain, StarBoundary


def star(b, *twigs):
    return StarBoundary(b, tuple(Chain(t) for t in twigs))


@pytest.fixture(scope="module")
def default_report():
    return generate_cases()


def test_constraint_json_round_trip():
    c = ConstraintSet(a_min=9).disable("window")
    back = ConstraintSet.from_json(c.to_json())
    assert back == c
    assert back.digest() == c.digest()
    assert ConstraintSet().digest() != c.digest()


def test_unknown_rules_are_rejected():
    with pytest.raises(KeyError):
        ConstraintSet().disable("nonsense")
    with pytest.raises(KeyError):
        ConstraintSet.from_json({"nonsense": 1})


def test_triples_with_smallest_determinant_three():
    got = [(t, flat) for t, flat in enumerate_triples(19) if t[0] == 3]
    assert got == [((3, 3, 3), True), ((3, 3, 4), False), ((3, 3, 5), False),
                   ((3, 3, 6), False), ((3, 4, 4), False)]


def test_triples_bound_is_not_an_artifact_of_the_cap():
    assert enumerate_triples(19) == enumerate_triples(60)


def test_four_twigs():
    assert enumerate_r4(25) == [((2, 2, 2, 2), True), ((2, 2, 2, 3), False)]
    assert tuple_bmy_value((2, 2, 2, 3)) == Q(2, 3)
    for b in range(0, 4):
        for z4, dbar in ((Chain([-3]), 1), (Chain([-2, -2]), 2)):
            assert r4_star_determinant(b, z4) == 24 * b - 36 - 8 * dbar


def test_fibre_multiplicities():
    s = star(1, [-3], [-4], [-2, -2, -2])
    t = s.to_tree()
    mult = fiber_multiplicities(t.induced([0, 2, 3, 4, 5]))
    assert mult == {0: 4, 2: 1, 3: 3, 4: 2, 5: 1}
    assert fiber_multiplicities(t.induced([0, 1])) is None
    # [-2] - (-1) - [-2] is the fibre 1, 2, 1
    assert fiber_multiplicities(star(1, [-2], [-2], [-2]).to_tree().induced([0, 1, 2])) == {0: 2, 1: 1, 2: 1}


def test_fibre_obstruction():
    assert fiber_obstruction(star(1, [-3], [-4], [-2, -2, -2])) is not None
    assert fiber_obstruction(star(1, [-2], [-2], [-2], [-3])) is not None
    assert fiber_obstruction(star(1, [-2], [-3], [-3, -3])) is None


def test_boundary_rules():
    c = ConstraintSet()
    assert boundary_rule(star(1, [-2], [-3], [-7]), c) == "dD_negative"
    assert boundary_rule(star(1, [-2], [-3], [-5]), c) == "a_min"
    assert boundary_rule(star(1, [-2], [-2, -2], [-5]), c) == "minus_two_neighbours"
    assert boundary_rule(star(1, [-2], [-3], [-3, -3]), c) is None
    assert boundary_rule(star(1, [-2], [-3], [-3, -3]), c.disable("dD_negative")) is None


def test_default_run_counts(default_report):
    r = default_report
    verdicts = {}
    for case in r.cases:
        verdicts[case.verdict] = verdicts.get(case.verdict, 0) + 1
    rules = {}
    for rej in r.rejections:
        rules[rej.rule] = rules.get(rej.rule, 0) + 1
    assert len(r.cases) == 202
    assert verdicts["eliminated-by:window"] == 172
    assert verdicts["eliminated-by:residual"] == 24
    assert rules == {"dD_negative": 308, "minus_two_neighbours": 208, "a_min": 30,
                     "a_excluded": 18, "minus_two_center": 13, "p2_positive": 3,
                     "fiber_sections": 1}
    assert set(rules) <= set(RULES)


def test_every_case_pairs_equal_determinants(default_report):
    for case in default_report.cases:
        assert -det(case.D) == case.E.a


def test_disabling_rules_only_adds_cases(default_report):
    more = generate_cases(ConstraintSet().disable("minus_two_neighbours"))
    assert len(more.cases) > len(default_report.cases)
    loose = generate_cases(ConstraintSet().disable("window", "residual"))
    assert all(c.verdict == "SURVIVOR" for c in loose.cases)
