from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algebra import walled_brauer as wb
from algebra.symmetric_group_algebra import Permutation
from domain.errors import DiagramError, ParameterMismatchError


def diagrams(k):
    return st.permutations(list(range(1, 2 * k + 1))).map(
        lambda images: wb.diagram_from_permutation(Permutation(tuple(images)))
    )


def element(d, n=4, c=1):
    return wb.DiagramAlgebraElement.from_diagram(d, n, c)


H = wb.contraction_diagram(1, 1)


def test_labels():
    assert wb.vertex_label(3, 1) == "B1"
    assert wb.parse_vertex("t2", 2) == 2
    assert wb.parse_vertex("B4", 2) == 8
    with pytest.raises(DiagramError):
        wb.parse_vertex("X1", 2)
    with pytest.raises(DiagramError):
        wb.parse_vertex("T5", 2)


def test_wall_validation():
    with pytest.raises(DiagramError, match="does not cross the wall"):
        wb.WalledDiagram.from_labels(2, [["T1", "T2"], ["T3", "T4"], ["B1", "B3"], ["B2", "B4"]])
    with pytest.raises(DiagramError, match="crosses the wall"):
        wb.WalledDiagram.from_labels(2, [["T1", "B3"], ["T3", "B1"], ["T2", "B2"], ["T4", "B4"]])
    with pytest.raises(DiagramError, match="perfect matching"):
        wb.WalledDiagram.from_labels(1, [["T1", "B1"], ["T1", "B2"]])


@settings(deadline=None)
@given(diagrams(3))
def test_identity_is_neutral(d):
    identity = wb.WalledDiagram.identity(3)
    assert wb.compose_diagrams(identity, d) == (0, d)
    assert wb.compose_diagrams(d, identity) == (0, d)


def test_h_squared():
    assert wb.compose_diagrams(H, H) == (1, H)


def test_figure_product(figure_diagrams):
    upper, lower, product = figure_diagrams
    assert wb.compose_diagrams(upper, lower) == (1, product)


def test_mismatched_k():
    with pytest.raises(ParameterMismatchError):
        wb.compose_diagrams(wb.WalledDiagram.identity(1), wb.WalledDiagram.identity(2))
    with pytest.raises(ParameterMismatchError):
        element(H, n=3) * element(H, n=4)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3]).flatmap(lambda k: st.tuples(diagrams(k), diagrams(k), diagrams(k))))
def test_composition_associative(triple):
    a, b, c = triple
    x = element(a, c=Fraction(1, 2)) + element(b, c=3)
    y = element(b) - element(c, c=Fraction(2, 3))
    z = element(c, c=5) + element(a)
    assert (x * y) * z == x * (y * z)


def test_contraction_diagram():
    assert wb.contraction_diagram(1, 1) == wb.WalledDiagram.from_labels(1, [["T1", "T2"], ["B1", "B2"]])
    expected = wb.WalledDiagram.from_labels(2, [["T1", "T3"], ["B1", "B3"], ["T2", "B2"], ["T4", "B4"]])
    assert wb.contraction_diagram(2, 1) == expected
    with pytest.raises(DiagramError):
        wb.contraction_diagram(2, 3)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_contractions_idempotent(k):
    for j in range(1, k + 1):
        c = wb.contraction_element(k, j, 5)
        assert c * c == c


def test_b_idempotent():
    n = 4
    b1 = wb.b_idempotent(1, n)
    assert b1 == wb.DiagramAlgebraElement.identity(1, n) - element(H, n, Fraction(1, n))
    assert b1 * b1 == b1
    b2 = wb.b_idempotent(2, n)
    assert sorted(c for _, c in b2) == sorted([Fraction(1), Fraction(-1, 4), Fraction(-1, 4), Fraction(1, 16)])
    assert b2 * b2 == b2


def test_b_idempotent_k3():
    b3 = wb.b_idempotent(3, 5)
    assert len(b3) == 8
    assert b3 * b3 == b3


def test_contractions_commute_and_are_killed_by_b():
    k, n = 3, 5
    b = wb.b_idempotent(k, n)
    contractions = [wb.contraction_element(k, j, n) for j in range(1, k + 1)]
    for i, ci in enumerate(contractions):
        for cj in contractions[i + 1:]:
            assert ci * cj == cj * ci
    for cj in contractions:
        assert (b * cj).is_zero()
        assert (cj * b).is_zero()


def test_has_forbidden_pair():
    assert not wb.has_forbidden_pair(wb.WalledDiagram.identity(2))
    assert wb.has_forbidden_pair(wb.contraction_diagram(2, 2))
    subtle = wb.WalledDiagram.from_labels(2, [["T1", "T4"], ["T2", "T3"], ["B1", "B4"], ["B2", "B3"]])
    assert not wb.has_forbidden_pair(subtle)


@pytest.mark.parametrize("k, count", [(1, 2), (2, 24), (3, 720)])
def test_enumerate_diagrams(k, count):
    found = wb.enumerate_diagrams(k)
    assert len(found) == len(set(found)) == count


@pytest.mark.parametrize("k, clean", [(1, 1), (2, 9), (3, 265)])
def test_clean_diagrams_are_derangements(k, clean):
    images = [wb.flip_to_permutation(d) for d in wb.enumerate_diagrams(k) if not wb.has_forbidden_pair(d)]
    assert len(images) == clean
    assert all(not sigma.fixed_points() for sigma in images)


@pytest.mark.slow
def test_diagram_counts_k4():
    found = wb.enumerate_diagrams(4)
    assert len(found) == len(set(found)) == 40320
    assert sum(1 for d in found if not wb.has_forbidden_pair(d)) == 14833


def test_flip_small_cases():
    assert wb.flip_to_permutation(wb.WalledDiagram.identity(1)) == Permutation.parse("(1 2)", 2)
    assert wb.flip_to_permutation(H) == Permutation.identity(2)


@settings(deadline=None)
@given(diagrams(3))
def test_flip_inverts(d):
    assert wb.diagram_from_permutation(wb.flip_to_permutation(d)) == d


def test_factor_contraction_example(contraction_c31):
    factors = wb.factor_diagram(contraction_c31)
    assert factors.contractions == 1
    assert factors.top_left(1) == 3
    assert factors.top_right == Permutation.identity(5)


@settings(max_examples=50, deadline=None)
@given(diagrams(3))
def test_factorization_recomposes(d):
    factors = wb.factor_diagram(d)
    _, inner = wb.compose_diagrams(
        wb.standard_contraction_diagram(3, factors.contractions),
        wb.permutation_diagram(factors.bottom_left, factors.bottom_right),
    )
    _, outer = wb.compose_diagrams(wb.permutation_diagram(factors.top_left, factors.top_right), inner)
    assert outer == d
    assert factors.contractions == len(d.top_horizontal())


@pytest.mark.parametrize("k, n, rank", [(1, 4, 1), (2, 4, 9), (2, 5, 9), (2, 6, 9)])
def test_sandwich_rank(k, n, rank):
    assert wb.sandwich_basis_rank(k, n) == rank


def test_sandwich_rank_warns_outside_stable_range(caplog):
    wb.sandwich_basis_rank(1, 1)
    assert "stable range" in caplog.text
