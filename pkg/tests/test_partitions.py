from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from domain.errors import ShapeError
from domain.partitions import (
    Partition,
    StandardTableau,
    enumerate_partitions,
    enumerate_standard_tableaux,
    hook_product,
    num_standard_tableaux,
    partition_order,
)


@st.composite
def partitions(draw, max_size=8):
    r = draw(st.integers(min_value=0, max_value=max_size))
    return draw(st.sampled_from(enumerate_partitions(r)))


def P(*parts):
    return Partition(parts)


def test_enumerate_small():
    assert enumerate_partitions(0) == [P()]
    assert enumerate_partitions(2) == [P(2), P(1, 1)]
    assert enumerate_partitions(4) == [P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)]


def test_enumerate_negative():
    with pytest.raises(ShapeError):
        enumerate_partitions(-1)


@pytest.mark.parametrize("r, count", [(1, 1), (3, 3), (5, 7), (6, 11), (8, 22)])
def test_partition_counts(r, count):
    shapes = enumerate_partitions(r)
    assert len(shapes) == count
    assert len(set(shapes)) == count
    assert sorted(shapes, key=partition_order) == shapes


def test_invalid_parts():
    with pytest.raises(ShapeError):
        P(1, 2)
    with pytest.raises(ShapeError):
        P(2, 0)


def test_parse_and_str():
    assert Partition.parse("2,1,1") == P(2, 1, 1)
    assert Partition.parse("") == P()
    assert Partition.parse("(3, 1)") == P(3, 1)
    assert str(P(2, 1, 1)) == "2,1,1"
    assert str(P()) == ""
    with pytest.raises(ShapeError):
        Partition.parse("a,b")


@pytest.mark.parametrize(
    "shape, hooks, f",
    [((), 1, 1), ((2, 1), 3, 2), ((3, 1), 8, 3), ((4,), 24, 1), ((2, 2), 12, 2), ((2, 1, 1), 8, 3)],
)
def test_hook_product_and_f(shape, hooks, f):
    assert hook_product(P(*shape)) == hooks
    assert num_standard_tableaux(P(*shape)) == f


def test_conjugate():
    assert P(3, 1).conjugate() == P(2, 1, 1)
    assert P().conjugate() == P()


@given(partitions())
def test_conjugate_is_involution(p):
    assert p.conjugate().conjugate() == p
    assert p.conjugate().size == p.size
    assert num_standard_tableaux(p.conjugate()) == num_standard_tableaux(p)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=7))
def test_sum_of_squares_is_factorial(r):
    assert sum(num_standard_tableaux(p) ** 2 for p in enumerate_partitions(r)) == factorial(r)


@settings(max_examples=30, deadline=None)
@given(partitions(max_size=6))
def test_tableau_enumeration_matches_hook_formula(p):
    tableaux = enumerate_standard_tableaux(p, range(1, p.size + 1))
    assert len(tableaux) == num_standard_tableaux(p)
    assert len(set(tableaux)) == len(tableaux)


def test_tableaux_on_arbitrary_entries():
    assert [t.rows for t in enumerate_standard_tableaux(P(1), [7])] == [((7,),)]
    assert {t.rows for t in enumerate_standard_tableaux(P(2, 1), [1, 2, 3])} == {((1, 2), (3,)), ((1, 3), (2,))}
    assert {t.rows for t in enumerate_standard_tableaux(P(2, 1), [1, 4, 5])} == {((1, 4), (5,)), ((1, 5), (4,))}


def test_tableau_size_mismatch():
    with pytest.raises(ShapeError):
        enumerate_standard_tableaux(P(2, 1), [1, 2])


@pytest.mark.parametrize("shape, entries", [(P(2), [1, 1, 2]), (P(2), [3, 3]), (P(2, 1), [1, 2, 2])])
def test_tableau_entries_must_be_distinct(shape, entries):
    with pytest.raises(ShapeError, match="distinct"):
        enumerate_standard_tableaux(shape, entries)


def test_tableau_entries_accept_any_iterable():
    assert [t.rows for t in enumerate_standard_tableaux(P(2), iter([5, 2]))] == [((2, 5),)]


def test_tableau_validation(tableau_15_4):
    assert tableau_15_4.shape == P(2, 1)
    assert tableau_15_4.columns == ((1, 4), (5,))
    assert tableau_15_4.entries == (1, 4, 5)
    assert tableau_15_4.row_of(4) == 2
    assert str(tableau_15_4) == "1 5/4"
    with pytest.raises(ShapeError):
        StandardTableau.from_rows([[2, 1]])
    with pytest.raises(ShapeError):
        StandardTableau.from_rows([[1, 2], [1]])
    with pytest.raises(ShapeError):
        StandardTableau.from_rows([[2, 3], [1]])
