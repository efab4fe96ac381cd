import pytest
from hypothesis import given, settings, strategies as st

from oracle import character_oracle as co
from combinatorics.multiplicity import multiplicity
from config import Settings
from domain.errors import ResourceLimitError, ShapeError
from domain.partitions import Partition, enumerate_partitions


def pair(lam, mu):
    return co.HighestWeightPair(Partition(lam), Partition(mu))


def test_pair_to_weight():
    assert co.pair_to_weight(pair((3, 2, 2, 2, 1), (5, 5, 4)), 12) == (3, 2, 2, 2, 1, 0, 0, 0, 0, -4, -5, -5)
    assert co.pair_to_weight(pair((1,), (1,)), 4) == (1, 0, 0, -1)
    assert co.pair_to_weight(pair((), ()), 3) == (0, 0, 0)
    with pytest.raises(ShapeError):
        co.pair_to_weight(pair((1, 1), (1,)), 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=3).flatmap(
    lambda r: st.tuples(st.sampled_from(enumerate_partitions(r)), st.sampled_from(enumerate_partitions(r)))
))
def test_weight_to_pair_inverts(shapes):
    p = co.HighestWeightPair(*shapes)
    assert co.weight_to_pair(co.pair_to_weight(p, 7)) == p


def test_adjoint_weights():
    assert co.adjoint_weights(2).terms == {(1, -1): 1, (-1, 1): 1, (0, 0): 1}
    three = co.adjoint_weights(3)
    assert three.mass == 8 and three[(0, 0, 0)] == 2 and len(three) == 7
    assert co.adjoint_weights(6).mass == 35


def test_convolve_power():
    w = co.adjoint_weights(2)
    assert co.convolve_power(w, 1) == w
    assert co.convolve_power(w, 2).terms == {(2, -2): 1, (0, 0): 3, (-2, 2): 1, (1, -1): 2, (-1, 1): 2}
    assert co.convolve_power(co.adjoint_weights(4), 2).mass == 225
    assert co.convolve_power(w, 0).terms == {(0, 0): 1}


def test_freudenthal_small():
    adjoint = co.freudenthal_multiplicities((1, 0, 0, -1))
    assert adjoint.mass == 15
    assert adjoint[(0, 0, 0, 0)] == 3
    assert co.freudenthal_multiplicities((1, -1)).terms == {(1, -1): 1, (0, 0): 1, (-1, 1): 1}
    assert co.freudenthal_multiplicities((0, 0, 0)).terms == {(0, 0, 0): 1}


def test_freudenthal_rejects_non_dominant():
    with pytest.raises(ShapeError):
        co.freudenthal_dominant_multiplicities((0, 1))


@pytest.mark.parametrize("hw", [(2, 0, 0, -2), (2, 1, 0), (1, 1, -1, -1), (3, 0, -1, -2), (2, 0, -1, -1)])
def test_mass_equals_weyl_dimension(hw):
    assert co.freudenthal_multiplicities(hw).mass == co.weyl_dimension(hw)


def test_weyl_dimension():
    assert co.weyl_dimension((1, 0, 0, 0, -1)) == 24
    assert co.weyl_dimension((0, 0, 0)) == 1


def test_freudenthal_matches_tensor_square_of_sl2():
    # sl_2 (x) sl_2 = L(4) + L(2) + L(0) in highest weights (2,-2), (1,-1), (0,0)
    square = co.convolve_power(co.adjoint_weights(2), 2)
    total = co.freudenthal_multiplicities((2, -2))
    for hw in [(1, -1), (0, 0)]:
        total = co.WeightMultiset(2, {
            w: total[w] + co.freudenthal_multiplicities(hw)[w] for w in set(total.terms) | set(co.freudenthal_multiplicities(hw).terms)
        })
    assert total == square


def test_decompose_sl2():
    assert co.decompose(2, 1) == {pair((1,), (1,)): 1}


def test_decompose_sl4_square():
    assert co.decompose(4, 2) == {
        pair((), ()): 1,
        pair((1,), (1,)): 2,
        pair((2,), (2,)): 1,
        pair((2,), (1, 1)): 1,
        pair((1, 1), (2,)): 1,
        pair((1, 1), (1, 1)): 1,
    }


def test_compare_stable():
    report = co.compare_with_formula(4, 2)
    assert report.stable and not report.mismatches and report.dimension_ok


def test_compare_reuses_decomposition():
    oracle = co.decompose(4, 2)
    assert co.compare_with_formula(4, 2, oracle).rows == co.compare_with_formula(4, 2).rows


def test_compare_outside_stable_range():
    report = co.compare_with_formula(2, 2)
    assert not report.stable
    assert report.mismatches
    assert report.dimension_ok


@pytest.mark.slow
def test_compare_n6_k3():
    report = co.compare_with_formula(6, 3)
    assert report.stable and not report.mismatches
    assert report.dimension_total == 35 ** 3


@pytest.mark.parametrize("n, k", [(4, 2), (5, 2), (6, 3), (3, 1)])
def test_bimodule_dimension(n, k):
    check = co.bimodule_dimension_check(n, k)
    assert check["ok"]
    assert check["expected"] == (n * n - 1) ** k


def test_stable_multiplicities_match_formula():
    for (lam, mu), m in co.decompose(5, 2).items():
        assert m == multiplicity(2, lam, mu)


def test_orbit_size():
    assert co.orbit_size((1, 0, 0, -1)) == 12
    assert co.orbit_size((0, 0, 0)) == 1
    adjoint = co.freudenthal_multiplicities((1, 0, 0, -1))
    assert sum(1 for w in adjoint.terms if co.dominant_conjugate(w) == (1, 0, 0, -1)) == co.orbit_size((1, 0, 0, -1))


@pytest.mark.parametrize("n, k, expected", [(2, 0, 1), (2, 2, 3), (4, 2, 6), (6, 3, 15)])
def test_dominant_weight_count(n, k, expected):
    assert co.dominant_weight_count(n, k) == expected
    assert len(co.convolve_power(co.adjoint_weights(n), k).dominant()) == expected


def test_convolve_power_stops_at_limit(monkeypatch):
    calls = []
    original = co.WeightMultiset.convolve

    def counting(self, other):
        calls.append(len(self))
        return original(self, other)

    monkeypatch.setattr(co.WeightMultiset, "convolve", counting)
    with pytest.raises(ResourceLimitError, match="Power 2 of 3"):
        co.convolve_power(co.adjoint_weights(6), 3, limit=3)
    assert len(calls) == 2


def test_decompose_refuses_before_convolving(monkeypatch):
    calls = []
    monkeypatch.setattr(co, "get_settings", lambda: Settings(oracle_weight_limit=5))
    monkeypatch.setattr(co, "convolve_power", lambda *args, **kwargs: calls.append(args))
    with pytest.raises(ResourceLimitError, match="15 dominant weights"):
        co.decompose(6, 3)
    assert calls == []


def test_decompose_within_limit(monkeypatch):
    monkeypatch.setattr(co, "get_settings", lambda: Settings(oracle_weight_limit=3))
    assert co.decompose(2, 2) == {pair((), ()): 1, pair((1,), (1,)): 1, pair((2,), (2,)): 1}
