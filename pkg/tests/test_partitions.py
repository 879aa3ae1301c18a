import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quivercount.partitions import (
    Rectangle,
    complement,
    conjugate,
    contains,
    count_in_rectangle,
    fits,
    format_partition,
    parse_partition,
    partition,
    partitions_in_rectangle,
    size,
)

R33 = Rectangle(3, 3)


def test_partition_normalizes_and_validates():
    assert partition([3, 2, 0, 0]) == (3, 2)
    assert partition(()) == ()
    with pytest.raises(ValueError):
        partition((1, 2))
    with pytest.raises(ValueError):
        partition((2, -1))


def test_conjugate_pins():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(()) == ()
    assert conjugate((4,)) == (1, 1, 1, 1)


def test_complement_pins():
    # complement of (2,1) in 2x3: rows (3-1, 3-2) reversed
    assert complement((2, 1), Rectangle(2, 3)) == (2, 1)
    assert complement((), Rectangle(2, 2)) == (2, 2)
    assert complement((2, 2), Rectangle(2, 2)) == ()
    assert complement((3,), Rectangle(2, 3)) == (3,)


def test_complement_requires_fit():
    with pytest.raises(ValueError):
        complement((4,), R33)
    with pytest.raises(ValueError):
        complement((1, 1, 1, 1), R33)


def test_graded_lex_enumeration_order():
    got = partitions_in_rectangle(Rectangle(2, 2))
    assert got == [(), (1,), (1, 1), (2,), (2, 1), (2, 2)]


def test_enumeration_matches_count():
    for rows in range(5):
        for cols in range(5):
            rect = Rectangle(rows, cols)
            listed = partitions_in_rectangle(rect)
            assert len(listed) == count_in_rectangle(rect)
            assert len(set(listed)) == len(listed)
            assert all(fits(lam, rect) for lam in listed)


def test_degenerate_rectangles_hold_only_empty():
    assert partitions_in_rectangle(Rectangle(0, 5)) == [()]
    assert partitions_in_rectangle(Rectangle(5, 0)) == [()]
    assert count_in_rectangle(Rectangle(0, 0)) == 1


def test_contains():
    assert contains((3, 2), (2, 2))
    assert not contains((3, 2), (2, 3))
    assert contains((1,), ())


def test_format_parse_round_trip():
    for lam in [(), (1,), (3, 2, 2), (5, 1)]:
        assert parse_partition(format_partition(lam)) == lam
    assert format_partition(()) == "()"
    assert parse_partition("( 2 , 1 )") == (2, 1)


def test_parse_rejects_bad_text():
    for text in ["", "2,1", "(1,2)", "(a)", "(1,", "(-1)"]:
        with pytest.raises(ValueError):
            parse_partition(text)


@settings(max_examples=200, derandomize=True)
@given(st.lists(st.integers(min_value=0, max_value=5), max_size=5))
def test_conjugate_is_an_involution(parts):
    lam = partition(sorted(parts, reverse=True))
    assert conjugate(conjugate(lam)) == lam
    assert size(conjugate(lam)) == size(lam)


@settings(max_examples=200, derandomize=True)
@given(st.data())
def test_complement_is_an_involution(data):
    rows = data.draw(st.integers(0, 4))
    cols = data.draw(st.integers(0, 4))
    rect = Rectangle(rows, cols)
    options = partitions_in_rectangle(rect)
    lam = data.draw(st.sampled_from(options))
    comp = complement(lam, rect)
    assert fits(comp, rect)
    assert size(lam) + size(comp) == rows * cols
    assert complement(comp, rect) == lam


def test_conjugate_commutes_with_complement():
    # cell-set identity: conjugating the complement equals complementing
    # the conjugate in the transposed rectangle
    for rect in [Rectangle(2, 3), Rectangle(3, 3), Rectangle(4, 2)]:
        for lam in partitions_in_rectangle(rect):
            lhs = conjugate(complement(lam, rect))
            rhs = complement(conjugate(lam), Rectangle(rect.cols, rect.rows))
            assert lhs == rhs
