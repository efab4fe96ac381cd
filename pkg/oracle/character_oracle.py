"""
Brute-force decomposition of sl_n^(x)k from characters.

Weights are integer n-tuples in gl_n coordinates ε_1..ε_n. The character
of the k-th tensor power is the k-fold convolution of the adjoint weights;
it is split into irreducibles by repeatedly removing the character of the
lexicographically largest remaining dominant weight. Subtracting a positive
root ε_i - ε_j (i < j) lowers a weight lexicographically, so the largest
remaining dominant weight is always a highest weight.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from sympy.utilities.iterables import multiset_permutations

from combinatorics.multiplicity import full_table
from config import get_settings
from domain.errors import ResourceLimitError, ShapeError, VerificationError
from domain.partitions import Partition, enumerate_partitions, partition_order

logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]


class HighestWeightPair(NamedTuple):
    """Label (λ, μ) of the irreducible sl_n-module L(λ, μ)."""

    lam: Partition
    mu: Partition

    def __str__(self) -> str:
        return f"({self.lam}|{self.mu})"


def pair_order(pair: HighestWeightPair) -> Tuple:
    """Sort key: r ascending, then partition order of λ and of μ."""
    return (pair.lam.size, partition_order(pair.lam), partition_order(pair.mu))


@dataclass
class WeightMultiset:
    """Weights with nonnegative integer multiplicities."""

    n: int
    terms: Dict[Weight, int] = field(default_factory=dict)

    def __post_init__(self):
        for weight, m in self.terms.items():
            if len(weight) != self.n:
                raise ShapeError(f"Weight {weight} does not have {self.n} coordinates")
            if m < 0:
                raise VerificationError(f"Negative multiplicity {m} for weight {weight}")
        self.terms = {tuple(w): m for w, m in self.terms.items() if m}

    def __getitem__(self, weight: Weight) -> int:
        return self.terms.get(tuple(weight), 0)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightMultiset):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    @property
    def mass(self) -> int:
        return sum(self.terms.values())

    def dominant(self) -> Dict[Weight, int]:
        """Restriction to weakly decreasing weights."""
        return {w: m for w, m in self.terms.items() if is_dominant(w)}

    def convolve(self, other: "WeightMultiset") -> "WeightMultiset":
        result: Counter = Counter()
        for w1, m1 in self.terms.items():
            for w2, m2 in other.terms.items():
                result[tuple(a + b for a, b in zip(w1, w2))] += m1 * m2
        return WeightMultiset(self.n, dict(result))


def is_dominant(weight: Weight) -> bool:
    return all(weight[i] >= weight[i + 1] for i in range(len(weight) - 1))


def dominant_conjugate(weight: Weight) -> Weight:
    """The unique dominant weight in the Weyl orbit (coordinates sorted downwards)."""
    return tuple(sorted(weight, reverse=True))


def orbit_size(weight: Weight) -> int:
    return factorial(len(weight)) // prod(factorial(c) for c in Counter(weight).values())


def pair_to_weight(pair: HighestWeightPair, n: int) -> Weight:
    """
    (λ_1, ..., λ_p, 0, ..., 0, -μ_q, ..., -μ_1).

    Raises:
        ShapeError: If λ and μ together have more than n rows
    """
    lam, mu = pair
    if lam.rows + mu.rows > n:
        raise ShapeError(f"Pair {pair} has {lam.rows + mu.rows} rows, more than n={n}")
    return tuple(lam.parts) + (0,) * (n - lam.rows - mu.rows) + tuple(-m for m in reversed(mu.parts))


def weight_to_pair(weight: Weight) -> HighestWeightPair:
    """Read (λ, μ) off a dominant weight."""
    if not is_dominant(weight):
        raise ShapeError(f"Weight {weight} is not dominant")
    return HighestWeightPair(
        Partition(tuple(c for c in weight if c > 0)),
        Partition(tuple(-c for c in reversed(weight) if c < 0)),
    )


def adjoint_weights(n: int) -> WeightMultiset:
    """Roots ε_i - ε_j once each and the zero weight n - 1 times."""
    if n < 2:
        raise ValueError(f"sl_n needs n >= 2, got {n}")
    terms = {(0,) * n: n - 1}
    for i, j in itertools.permutations(range(n), 2):
        root = [0] * n
        root[i], root[j] = 1, -1
        terms[tuple(root)] = 1
    return WeightMultiset(n, terms)


def convolve_power(w: WeightMultiset, k: int, limit: Optional[int] = None) -> WeightMultiset:
    """
    k-fold additive convolution; k = 0 gives the trivial character.

    With a limit, the number of dominant weights is checked after every step
    and the next step is not attempted once it is exceeded.

    Raises:
        ResourceLimitError: If an intermediate power has more than limit dominant weights
    """
    if k < 0:
        raise ValueError(f"Convolution power must be nonnegative, got {k}")
    result = WeightMultiset(w.n, {(0,) * w.n: 1})
    for step in range(k):
        result = result.convolve(w)
        dominant = sum(1 for weight in result.terms if is_dominant(weight))
        logger.debug("Convolution step %d: %d distinct weights, %d dominant", step + 1, len(result), dominant)
        if limit is not None and dominant > limit:
            raise ResourceLimitError(
                f"Power {step + 1} of {k} already has {dominant} dominant weights, above the limit {limit}; "
                "try smaller (n, k)"
            )
    return result


def dominant_weight_count(n: int, k: int) -> int:
    """
    Number of distinct dominant weights of sl_n^(x)k.

    These are exactly the weights of pairs (λ, μ) with |λ| = |μ| <= k and
    at most n rows between them.
    """
    count = 0
    for r in range(k + 1):
        shapes = enumerate_partitions(r)
        count += sum(1 for lam in shapes for mu in shapes if lam.rows + mu.rows <= n)
    return count


def positive_roots(n: int) -> List[Weight]:
    roots = []
    for i, j in itertools.combinations(range(n), 2):
        root = [0] * n
        root[i], root[j] = 1, -1
        roots.append(tuple(root))
    return roots


def _dot(a: Iterable[int], b: Iterable[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _level(hw: Weight, weight: Weight) -> int:
    # Number of simple roots to subtract from hw to reach weight.
    return sum(itertools.accumulate(h - w for h, w in zip(hw[:-1], weight[:-1])))


def dominant_weights_below(hw: Weight) -> List[Weight]:
    """Dominant weights reachable from hw by subtracting positive roots, highest first."""
    n = len(hw)
    roots = positive_roots(n)
    found = {hw}
    frontier = [hw]
    while frontier:
        following = []
        for weight in frontier:
            for root in roots:
                lower = tuple(a - b for a, b in zip(weight, root))
                if is_dominant(lower) and lower not in found:
                    found.add(lower)
                    following.append(lower)
        frontier = following
    return sorted(found, key=lambda w: (_level(hw, w), tuple(-c for c in w)))


@lru_cache(maxsize=256)
def _freudenthal_dominant(hw: Weight) -> Tuple[Tuple[Weight, int], ...]:
    n = len(hw)
    rho = tuple(range(n - 1, -1, -1))
    roots = positive_roots(n)
    shifted = tuple(a + b for a, b in zip(hw, rho))
    norm_top = _dot(shifted, shifted)
    multiplicities: Dict[Weight, int] = {hw: 1}
    for weight in dominant_weights_below(hw)[1:]:
        total = 0
        for root in roots:
            step = 1
            while True:
                above = tuple(w + step * a for w, a in zip(weight, root))
                m = multiplicities.get(dominant_conjugate(above), 0)
                if not m:
                    break
                total += m * _dot(above, root)
                step += 1
        shifted_weight = tuple(a + b for a, b in zip(weight, rho))
        denominator = norm_top - _dot(shifted_weight, shifted_weight)
        value = Fraction(2 * total, denominator)
        if value.denominator != 1 or value < 0:
            raise VerificationError(f"Freudenthal multiplicity {value} at {weight} for highest weight {hw}")
        if value:
            multiplicities[weight] = int(value)
    return tuple(multiplicities.items())


def freudenthal_dominant_multiplicities(hw: Weight) -> Dict[Weight, int]:
    """Multiplicities of the dominant weights of L(hw)."""
    hw = tuple(hw)
    if not is_dominant(hw):
        raise ShapeError(f"Highest weight {hw} is not dominant")
    return dict(_freudenthal_dominant(hw))


def freudenthal_multiplicities(hw: Weight, n: Optional[int] = None) -> WeightMultiset:
    """
    Full weight multiset of the irreducible module with highest weight hw.

    Args:
        hw: Dominant weight (weakly decreasing)
        n: Number of coordinates; defaults to len(hw)

    Returns:
        Every weight of L(hw) with its multiplicity

    Raises:
        VerificationError: If the orbit-weighted mass differs from the Weyl dimension
    """
    hw = tuple(hw)
    if n is not None and len(hw) != n:
        raise ShapeError(f"Weight {hw} does not have {n} coordinates")
    dominant = freudenthal_dominant_multiplicities(hw)
    mass = sum(m * orbit_size(weight) for weight, m in dominant.items())
    if mass != weyl_dimension(hw):
        raise VerificationError(f"L{hw} has weight mass {mass} but dimension {weyl_dimension(hw)}")
    terms = {}
    for weight, m in dominant.items():
        for image in multiset_permutations(list(weight)):
            terms[tuple(image)] = m
    return WeightMultiset(len(hw), terms)


def weyl_dimension(hw: Weight, n: Optional[int] = None) -> int:
    """Π_{i<j} (hw_i - hw_j + j - i) / (j - i)."""
    hw = tuple(hw)
    if not is_dominant(hw):
        raise ShapeError(f"Highest weight {hw} is not dominant")
    value = prod(
        (Fraction(hw[i] - hw[j] + j - i, j - i) for i, j in itertools.combinations(range(len(hw)), 2)),
        start=Fraction(1),
    )
    return int(value)


def decompose(n: int, k: int) -> Dict[HighestWeightPair, int]:
    """
    Split the character of sl_n^(x)k into irreducible characters.

    Args:
        n: Rank parameter (n >= 2)
        k: Tensor power

    Returns:
        Mapping (λ, μ) -> multiplicity, sorted by r then partition order

    Raises:
        ResourceLimitError: If the dominant restriction would hold more than oracle_weight_limit weights
        VerificationError: If a subtraction leaves a negative coefficient
    """
    limit = get_settings().oracle_weight_limit
    expected = dominant_weight_count(n, k)
    if expected > limit:
        raise ResourceLimitError(
            f"Character of sl_{n}^(x){k} has {expected} dominant weights, above the limit {limit}; try smaller (n, k)"
        )
    character = convolve_power(adjoint_weights(n), k, limit=limit)
    remaining = character.dominant()
    if len(remaining) != expected:
        raise VerificationError(f"Expected {expected} dominant weights in sl_{n}^(x){k}, found {len(remaining)}")
    logger.info("Decomposing sl_%d^(x)%d: %d dominant weights, mass %d", n, k, len(remaining), character.mass)

    found: Dict[HighestWeightPair, int] = {}
    while remaining:
        top = max(remaining)
        count = remaining[top]
        found[weight_to_pair(top)] = count
        for weight, m in freudenthal_dominant_multiplicities(top).items():
            value = remaining.get(weight, 0) - count * m
            if value < 0:
                raise VerificationError(
                    f"Negative coefficient {value} at {weight} after removing {count} x L{top}"
                )
            if value:
                remaining[weight] = value
            else:
                remaining.pop(weight, None)
        logger.debug("Removed %d x L%s, %d dominant weights left", count, top, len(remaining))
    return dict(sorted(found.items(), key=lambda item: pair_order(item[0])))


@dataclass
class ComparisonReport:
    """Oracle decomposition against the closed-form multiplicity table."""

    n: int
    k: int
    rows: List[dict]
    dimension_total: int

    @property
    def stable(self) -> bool:
        return self.n >= 2 * self.k

    @property
    def mismatches(self) -> List[dict]:
        return [row for row in self.rows if not row["match"]]

    @property
    def expected_dimension(self) -> int:
        return (self.n * self.n - 1) ** self.k

    @property
    def dimension_ok(self) -> bool:
        return self.dimension_total == self.expected_dimension


def compare_with_formula(n: int, k: int, oracle: Optional[Dict[HighestWeightPair, int]] = None) -> ComparisonReport:
    """
    Compare decompose(n, k) with full_table(k) pair by pair.

    Outside the stable range n >= 2k mismatches are expected and only reported.

    Args:
        n: Rank parameter
        k: Tensor power
        oracle: A decomposition already computed for (n, k)
    """
    if oracle is None:
        oracle = decompose(n, k)
    table = full_table(k)
    pairs = set(oracle) | {HighestWeightPair(lam, mu) for lam, mu in table}
    rows = []
    for pair in sorted(pairs, key=pair_order):
        from_oracle = oracle.get(pair, 0)
        from_formula = table.entries.get((pair.lam, pair.mu), 0)
        rows.append({
            "lambda": str(pair.lam),
            "mu": str(pair.mu),
            "oracle": from_oracle,
            "formula": from_formula,
            "match": from_oracle == from_formula,
        })
    dimension_total = sum(m * weyl_dimension(pair_to_weight(pair, n)) for pair, m in oracle.items())
    report = ComparisonReport(n, k, rows, dimension_total)
    if report.mismatches:
        log = logger.warning if report.stable else logger.info
        log("Oracle and formula differ on %d pairs at n=%d, k=%d", len(report.mismatches), n, k)
    return report


def bimodule_dimension_check(n: int, k: int) -> dict:
    """
    Σ m^k_{λ,μ} dim L(λ,μ) over the closed-form table, against (n²-1)^k.

    Returns:
        {"total", "expected", "ok"}; pairs with more than n rows are skipped
    """
    total = 0
    for (lam, mu), m in full_table(k).items():
        if m and lam.rows + mu.rows <= n:
            total += m * weyl_dimension(pair_to_weight(HighestWeightPair(lam, mu), n))
    expected = (n * n - 1) ** k
    return {"total": total, "expected": expected, "ok": total == expected}
