from fractions import Fraction as Q

import pytest

from dualgraph.graph import Chain
from dualgraph.tables import (Affine, check_table, load_fixture, parse_cell, parse_weights_label,
                              reproduce_table, weights_label, window_rows)


@pytest.mark.parametrize("text, value", [
    ("7", Affine(Q(0), Q(7))), ("-29/24", Affine(Q(0), Q(-29, 24))), ("k+4", Affine(Q(1), Q(4))),
    ("3-k", Affine(Q(-1), Q(3))), ("-k+3", Affine(Q(-1), Q(3))), ("-1-k", Affine(Q(-1), Q(-1))),
    ("2*k", Affine(Q(2), Q(0))),
])
def test_parse_cell(text, value):
    assert parse_cell(text) == value


def test_parse_cell_errors():
    for bad in ("", "x", "k+", "1/"):
        with pytest.raises(ValueError):
            parse_cell(bad)


def test_affine_text_round_trip():
    for a in (Affine(Q(1), Q(4)), Affine(Q(-1), Q(-2)), Affine(Q(0), Q(5, 3)), Affine(Q(-1), Q(0))):
        assert parse_cell(str(a)) == a


def test_weights_labels():
    c = Chain([-3, -3, -2, -2])
    assert weights_label(c) == "(3^2,2^2)"
    assert parse_weights_label("(3^2,2^2)") == c
    assert parse_weights_label("(3,3)") == Chain([-3, -3])


def test_fixtures_load():
    assert len(load_fixture("1").rows) == 31
    assert len(load_fixture("1bis").rows) == 14
    assert len(load_fixture("2").rows) == 3
    assert load_fixture("1").k_range == (0, 2)


def test_table_two_reproduces():
    res = check_table("2")
    assert res.ok
    assert reproduce_table("2")[2] == ["(3,2^2)", "7", "10", "12", "-41/28", "-8/5", "9/140", "-3"]


def test_table_one_differences_are_the_known_ones():
    res = check_table("1")
    assert not res.missing and not res.extra
    got = {(d.row, d.column, d.expected, d.computed) for d in res.diffs}
    assert got == {
        ("(3,4) 6", "KDE2", "-2", "-1"),
        ("(3,5) k+4", "KDE2", "3-k", "-k+4"),
        ("(3,5) k+6", "KDE2", "-1-k", "-k"),
        ("(3^2,2^2) k+4", "KDE2", "-k-2", "-k+2"),
    }


def test_table_one_bis_difference_is_the_known_one():
    res = check_table("1bis")
    assert not res.missing
    assert [(d.row, d.column, d.expected, d.computed) for d in res.diffs] == [
        ("(5,2^3) 6", "P2", "11/714", "121/714")]


def test_window_rows():
    rows = window_rows()
    assert "(3^2) 6" in rows
    assert len(rows) == 12
