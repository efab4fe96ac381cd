import itertools
from fractions import Fraction

import pytest

from algebra import tensor_model as tm
from algebra import walled_brauer as wb
from algebra.symmetric_group_algebra import GroupAlgebraElement, Permutation
from combinatorics.multiplicity import multiplicity
from domain.errors import ParameterMismatchError, ResourceLimitError, ShapeError
from domain.partitions import Partition, StandardTableau

EMPTY = StandardTableau.from_rows([])


def T(*rows):
    return StandardTableau.from_rows(rows)


def test_dimension_guard():
    assert tm.check_dimension(3, 2) == 81
    with pytest.raises(ResourceLimitError):
        tm.check_dimension(10, 4)


def test_vector_validation():
    with pytest.raises(ShapeError):
        tm.TensorVector.basis(2, 1, [3], [1])
    with pytest.raises(ShapeError):
        tm.TensorVector.basis(2, 2, [1], [1])


def test_weight_of():
    v11 = tm.TensorVector.basis(2, 1, [1], [1])
    v12 = tm.TensorVector.basis(2, 1, [1], [2])
    v21 = tm.TensorVector.basis(2, 1, [2], [1])
    assert tm.weight_of(v11) == (0, 0)
    assert tm.weight_of(v12) == (1, -1)
    assert tm.weight_of(v11 + v21) is None
    assert tm.weight_of(v11 - v11) is None


@pytest.mark.parametrize("n, k", [(2, 1), (3, 2)])
def test_contraction_squares(n, k):
    for i, j in itertools.product(range(1, k + 1), repeat=2):
        c = tm.contraction_operator(n, k, i, j)
        assert (c @ c).agrees_with(n * c)


def test_projectors_and_e():
    n, k = 3, 2
    p1, p2 = tm.projector_p(n, k, 1), tm.projector_p(n, k, 2)
    assert (p1 @ p1).agrees_with(p1)
    assert (p1 @ p2).agrees_with(p2 @ p1)
    e = tm.e_operator(n, k)
    assert (e @ e).agrees_with(e)
    assert e.rank() == 64
    assert (p1 @ e).is_zero() and (p2 @ e).is_zero()
    assert tm.kernel_intersection_dimension(n, k) == 64


def test_projectors_single_slot_sl2():
    n, k = 2, 1
    p1 = tm.projector_p(n, k, 1)
    assert (p1 @ p1).agrees_with(p1)
    assert p1.rank() == 1
    e = tm.e_operator(n, k)
    assert (e @ e).agrees_with(e)
    assert e.rank() == 3
    assert (p1 @ e).is_zero()
    assert tm.kernel_intersection_dimension(n, k) == 3


def test_projector_decomposition():
    ranks = tm.projector_decomposition_ranks(2, 2)
    assert ranks == {(): 1, (1,): 3, (2,): 3, (1, 2): 9}


def test_place_permutations():
    n, k = 2, 3
    identity = Permutation.identity(k)
    assert tm.place_permutation_operator(n, k, identity, identity).agrees_with(tm.TensorOperator.identity(n, k))
    sigma = Permutation.parse("(1 2 3)", 3)
    tau = Permutation.parse("(1 2)", 3)
    composed = tm.place_permutation_operator(n, k, sigma, identity) @ tm.place_permutation_operator(n, k, tau, identity)
    assert tm.place_permutation_operator(n, k, sigma * tau, identity).agrees_with(composed)
    moved = tm.place_permutation_operator(n, k, sigma, identity).apply(tm.TensorVector.basis(n, k, [1, 2, 2], [1, 1, 1]))
    assert moved == tm.TensorVector.basis(n, k, [2, 1, 2], [1, 1, 1])


def test_group_algebra_operator_linear():
    n, k = 2, 2
    swap = Permutation.parse("(1 2)", 2)
    element = GroupAlgebraElement.identity(2) + GroupAlgebraElement.from_permutation(swap)
    operator = tm.group_algebra_operator(n, k, element, "right")
    image = operator.apply(tm.TensorVector.basis(n, k, [1, 1], [1, 2]))
    assert image == tm.TensorVector.basis(n, k, [1, 1], [1, 2]) + tm.TensorVector.basis(n, k, [1, 1], [2, 1])


def test_diagram_to_operator():
    n = 2
    assert tm.diagram_to_operator(wb.WalledDiagram.identity(2), n).agrees_with(tm.TensorOperator.identity(n, 2))
    for j in (1, 2):
        assert tm.diagram_to_operator(wb.contraction_diagram(2, j), n).agrees_with(tm.contraction_operator(n, 2, j, j))


def test_figure_diagram_is_c31(contraction_c31):
    assert tm.diagram_to_operator(contraction_c31, 2).agrees_with(tm.contraction_operator(2, 5, 3, 1))


def test_diagram_representation_respects_products():
    n, k = 3, 2
    diagrams = wb.enumerate_diagrams(k)
    for d1, d2 in itertools.product(diagrams[::5], diagrams[::7]):
        cycles, d = wb.compose_diagrams(d1, d2)
        left = tm.diagram_to_operator(d1, n) @ tm.diagram_to_operator(d2, n)
        assert left.agrees_with(n ** cycles * tm.diagram_to_operator(d, n))


def test_lie_action_diagonal_is_weight():
    n, k = 3, 2
    for index in tm.basis_indices(n, k):
        weight = tm.index_weight(index, n)
        for a in range(1, n + 1):
            image = tm.lie_action(n, k, a, a).image_of(index)
            assert image == weight[a - 1] * tm.TensorVector(n, k, {index: 1})


def test_lie_action_commutes_with_centralizer():
    n, k = 3, 2
    e = tm.e_operator(n, k)
    c12 = tm.contraction_operator(n, k, 1, 2)
    for a, b in itertools.product(range(1, n + 1), repeat=2):
        x = tm.lie_action(n, k, a, b)
        assert (x @ e).agrees_with(e @ x)
        assert (x @ c12).agrees_with(c12 @ x)


def test_patterns():
    patterns = tm.enumerate_patterns(2, 0)
    assert [(p.s, p.t) for p in patterns] == [((1, 2), (1, 2)), ((1, 2), (2, 1))]
    assert [p.admissible for p in patterns] == [False, True]
    assert tm.ContractionPattern((2,), (1,)).complements(2) == ((1,), (2,))
    with pytest.raises(ShapeError):
        tm.ContractionPattern((2, 1), (1, 2))


def test_build_x_prime():
    x = tm.build_x_prime(2, 1, T([1]), T([1]), tm.ContractionPattern())
    assert x == tm.TensorVector.basis(2, 1, [1], [2])
    x = tm.build_x_prime(4, 2, EMPTY, EMPTY, tm.ContractionPattern((1, 2), (2, 1)))
    assert x == tm.TensorVector.basis(4, 2, [1, 2], [2, 1])
    x = tm.build_x(4, 2, EMPTY, EMPTY, tm.ContractionPattern((1, 2), (2, 1)))
    assert x == tm.TensorVector.basis(4, 2, [1, 1], [1, 1])


def test_pattern_checks():
    with pytest.raises(ParameterMismatchError):
        tm.build_x_prime(3, 2, EMPTY, EMPTY, tm.ContractionPattern((1, 2), (2, 1)))
    with pytest.raises(ShapeError):
        tm.build_x_prime(4, 2, T([1]), T([2]), tm.ContractionPattern((1,), (2,)))


def test_apply_y_single_boxes():
    y = tm.apply_y(2, 1, T([1]), T([1]), tm.ContractionPattern())
    x = tm.build_x_prime(2, 1, T([1]), T([1]), tm.ContractionPattern())
    assert y.apply(x) == x


@pytest.mark.parametrize(
    "t, tstar, pattern, weight",
    [
        ([[1]], [[2]], ((2,), (1,)), (1, 0, 0, -1)),
        ([[1, 2]], [[1], [2]], ((), ()), (2, 0, -1, -1)),
    ],
)
def test_maximal_vectors(t, tstar, pattern, weight):
    report = tm.verify_maximal_vector(4, 2, T(*t), T(*tstar), tm.ContractionPattern(*pattern))
    assert report.passed
    assert report.weight == weight
    assert report.leading_coefficient == report.expected_leading_coefficient


def test_inadmissible_pattern_vanishes():
    pattern = tm.ContractionPattern((1, 2), (1, 2))
    report = tm.verify_maximal_vector(4, 2, EMPTY, EMPTY, pattern)
    assert not report.nonzero
    assert report.consistent and not report.passed
    y = tm.apply_y(4, 2, EMPTY, EMPTY, pattern)
    assert (tm.e_operator(4, 2) @ y).is_zero()


def test_tally_equals_multiplicities():
    tally = tm.tally_maximal_vectors(4, 2)
    for (lam, mu), count in tally.items():
        assert count == multiplicity(2, lam, mu)
    assert tally[(Partition((1,)), Partition((1,)))] == 2


def test_report_record():
    report = tm.verify_maximal_vector(4, 2, T([1]), T([2]), tm.ContractionPattern((2,), (1,)))
    record = report.to_record()
    assert record["weight"] == [1, 0, 0, -1]
    assert record["s"] == [2] and record["t"] == [1]
    assert record["leading_coefficient"] == str(Fraction(1))


def test_contraction_forgets_contracted_indices():
    pattern = tm.ContractionPattern((2,), (1,))
    y = tm.apply_y(4, 2, T([1]), T([2]), pattern)
    x_prime = tm.build_x_prime(4, 2, T([1]), T([2]), pattern)
    x = tm.build_x(4, 2, T([1]), T([2]), pattern)
    assert x != x_prime
    assert y.apply(x) == y.apply(x_prime)
