"""
Explicit model of M = V^(x)k (x) (V*)^(x)k for V = C^n.

Vectors are sparse rational combinations of simple tensors
v_{i_1} (x) ... (x) v_{i_k} (x) v*_{j_1} (x) ... (x) v*_{j_k}. Operators are
rules sending one simple tensor to a sparse vector, extended linearly, so
nothing of size n^{2k} x n^{2k} is ever materialized.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from algebra.linalg import exact_rank
from algebra.symmetric_group_algebra import GroupAlgebraElement, Permutation, row_group, young_symmetrizer
from algebra.walled_brauer import WalledDiagram, factor_diagram
from config import get_settings
from domain.errors import ParameterMismatchError, ResourceLimitError, ShapeError
from domain.partitions import Partition, StandardTableau, enumerate_partitions, enumerate_standard_tableaux
from oracle.character_oracle import HighestWeightPair, pair_to_weight

logger = logging.getLogger(__name__)


class SimpleTensorIndex(NamedTuple):
    """Indices of the left factors v_i and the right factors v_j*."""

    left: Tuple[int, ...]
    right: Tuple[int, ...]


Terms = Dict[SimpleTensorIndex, Fraction]


def check_dimension(n: int, k: int) -> int:
    """
    Refuse tensor spaces larger than the configured limit.

    Returns:
        The dimension n^{2k}

    Raises:
        ResourceLimitError: If n^{2k} exceeds tensor_dimension_limit
    """
    if n < 1 or k < 1:
        raise ValueError(f"Tensor model needs n >= 1 and k >= 1, got n={n}, k={k}")
    dimension = n ** (2 * k)
    limit = get_settings().tensor_dimension_limit
    if dimension > limit:
        raise ResourceLimitError(
            f"Tensor space of dimension {n}^{2 * k} = {dimension} exceeds the limit {limit}; "
            "use the character oracle for larger cases"
        )
    return dimension


def basis_indices(n: int, k: int) -> Iterator[SimpleTensorIndex]:
    """All simple tensor indices, left tuple varying slowest."""
    check_dimension(n, k)
    for left in itertools.product(range(1, n + 1), repeat=k):
        for right in itertools.product(range(1, n + 1), repeat=k):
            yield SimpleTensorIndex(left, right)


def _accumulate(target: Terms, index: SimpleTensorIndex, value: Fraction):
    updated = target.get(index, Fraction(0)) + value
    if updated:
        target[index] = updated
    else:
        target.pop(index, None)


@dataclass
class TensorVector:
    """A sparse rational vector on the simple-tensor basis of M."""

    n: int
    k: int
    terms: Terms = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for index, coefficient in self.terms.items():
            index = SimpleTensorIndex(tuple(index[0]), tuple(index[1]))
            if len(index.left) != self.k or len(index.right) != self.k:
                raise ShapeError(f"Index {index} does not have k={self.k} factors on each side")
            if any(not 1 <= i <= self.n for i in index.left + index.right):
                raise ShapeError(f"Index {index} out of range 1..{self.n}")
            if coefficient:
                cleaned[index] = Fraction(coefficient)
        self.terms = cleaned

    @classmethod
    def basis(cls, n: int, k: int, left: Iterable[int], right: Iterable[int]) -> "TensorVector":
        return cls(n, k, {SimpleTensorIndex(tuple(left), tuple(right)): Fraction(1)})

    def _check(self, other: "TensorVector"):
        if (self.n, self.k) != (other.n, other.k):
            raise ParameterMismatchError(f"Vectors of (n,k)=({self.n},{self.k}) and ({other.n},{other.k})")

    def __add__(self, other: "TensorVector") -> "TensorVector":
        self._check(other)
        terms = dict(self.terms)
        for index, c in other.terms.items():
            _accumulate(terms, index, c)
        return TensorVector(self.n, self.k, terms)

    def __neg__(self) -> "TensorVector":
        return TensorVector(self.n, self.k, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + (-other)

    def __rmul__(self, scalar) -> "TensorVector":
        return TensorVector(self.n, self.k, {i: Fraction(scalar) * c for i, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, index: SimpleTensorIndex) -> Fraction:
        return self.terms.get(index, Fraction(0))


@dataclass(frozen=True)
class TensorOperator:
    """
    A linear operator on M given by its action on simple tensors.

    The rule returns a mapping index -> coefficient and is memoized;
    callers must not mutate what it returns.
    """

    n: int
    k: int
    rule: Callable[[SimpleTensorIndex], Terms]
    name: str = "operator"

    def __post_init__(self):
        check_dimension(self.n, self.k)
        object.__setattr__(self, "rule", lru_cache(maxsize=1 << 16)(self.rule))

    @classmethod
    def identity(cls, n: int, k: int) -> "TensorOperator":
        return cls(n, k, lambda index: {index: Fraction(1)}, "id")

    def _check(self, other: "TensorOperator"):
        if (self.n, self.k) != (other.n, other.k):
            raise ParameterMismatchError(
                f"Operators {self.name} on (n,k)=({self.n},{self.k}) and {other.name} on ({other.n},{other.k})"
            )

    def apply(self, vector: TensorVector) -> TensorVector:
        if (vector.n, vector.k) != (self.n, self.k):
            raise ParameterMismatchError(f"Operator {self.name} cannot act on a vector of (n,k)=({vector.n},{vector.k})")
        terms: Terms = {}
        for index, c in vector.terms.items():
            for image, d in self.rule(index).items():
                _accumulate(terms, image, c * d)
        return TensorVector(self.n, self.k, terms)

    def __call__(self, vector: TensorVector) -> TensorVector:
        return self.apply(vector)

    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        """self ∘ other: other acts first."""
        self._check(other)

        def rule(index: SimpleTensorIndex) -> Terms:
            terms: Terms = {}
            for middle, c in other.rule(index).items():
                for image, d in self.rule(middle).items():
                    _accumulate(terms, image, c * d)
            return terms

        return TensorOperator(self.n, self.k, rule, f"{self.name}*{other.name}")

    def _combine(self, other: "TensorOperator", sign: int, symbol: str) -> "TensorOperator":
        self._check(other)

        def rule(index: SimpleTensorIndex) -> Terms:
            terms = dict(self.rule(index))
            for image, c in other.rule(index).items():
                _accumulate(terms, image, sign * c)
            return terms

        return TensorOperator(self.n, self.k, rule, f"({self.name}{symbol}{other.name})")

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        return self._combine(other, 1, "+")

    def __sub__(self, other: "TensorOperator") -> "TensorOperator":
        return self._combine(other, -1, "-")

    def __rmul__(self, scalar) -> "TensorOperator":
        scalar = Fraction(scalar)

        def rule(index: SimpleTensorIndex) -> Terms:
            return {image: scalar * c for image, c in self.rule(index).items() if scalar * c}

        return TensorOperator(self.n, self.k, rule, f"{scalar}*{self.name}")

    def image_of(self, index: SimpleTensorIndex) -> TensorVector:
        return TensorVector(self.n, self.k, dict(self.rule(index)))

    def rank(self) -> int:
        """Exact rank, from the images of every basis vector."""
        return exact_rank(self.rule(index) for index in basis_indices(self.n, self.k))

    def agrees_with(self, other: "TensorOperator", indices: Optional[Iterable[SimpleTensorIndex]] = None) -> bool:
        """Compare two operators on the given basis vectors (all of them by default)."""
        self._check(other)
        indices = basis_indices(self.n, self.k) if indices is None else indices
        return all(self.rule(index) == other.rule(index) for index in indices)

    def is_zero(self, indices: Optional[Iterable[SimpleTensorIndex]] = None) -> bool:
        indices = basis_indices(self.n, self.k) if indices is None else indices
        return all(not self.rule(index) for index in indices)


def _check_slot(k: int, slot: int, side: str):
    if not 1 <= slot <= k:
        raise ShapeError(f"{side} slot {slot} out of range 1..{k}")


def contraction_operator(n: int, k: int, i: int, j: int) -> TensorOperator:
    """
    c_{i,j}: pair left slot i with right slot j and reinsert Σ_ℓ v_ℓ (x) v_ℓ*.

    Args:
        n: Dimension of V
        k: Number of factors on each side
        i: Left slot
        j: Right slot
    """
    _check_slot(k, i, "Left")
    _check_slot(k, j, "Right")

    def rule(index: SimpleTensorIndex) -> Terms:
        if index.left[i - 1] != index.right[j - 1]:
            return {}
        terms = {}
        for ell in range(1, n + 1):
            left = index.left[:i - 1] + (ell,) + index.left[i:]
            right = index.right[:j - 1] + (ell,) + index.right[j:]
            terms[SimpleTensorIndex(left, right)] = Fraction(1)
        return terms

    return TensorOperator(n, k, rule, f"c{i},{j}")


def projector_p(n: int, k: int, j: int) -> TensorOperator:
    """The idempotent p_j = c_{j,j} / n."""
    return Fraction(1, n) * contraction_operator(n, k, j, j)


def e_operator(n: int, k: int) -> TensorOperator:
    """e = (id - p_1)(id - p_2)...(id - p_k), whose image is sl_n^(x)k."""
    identity = TensorOperator.identity(n, k)
    e = identity
    for j in range(1, k + 1):
        e = e @ (identity - projector_p(n, k, j))
    return e


def place_permutation_operator(n: int, k: int, sigma_left: Permutation, sigma_right: Permutation) -> TensorOperator:
    """Place permutations: the factor in slot p moves to slot σ(p) on each side."""
    if sigma_left.degree != k or sigma_right.degree != k:
        raise ParameterMismatchError(f"Place permutations must have degree k={k}")

    left_source, right_source = sigma_left.inverse(), sigma_right.inverse()

    def move(values: Tuple[int, ...], source: Permutation) -> Tuple[int, ...]:
        # Slot q receives the factor from slot σ⁻¹(q).
        return tuple(values[source(q) - 1] for q in range(1, k + 1))

    def rule(index: SimpleTensorIndex) -> Terms:
        return {SimpleTensorIndex(move(index.left, left_source), move(index.right, right_source)): Fraction(1)}

    return TensorOperator(n, k, rule, f"P[{sigma_left}|{sigma_right}]")


def group_algebra_operator(n: int, k: int, element: GroupAlgebraElement, side: str = "left") -> TensorOperator:
    """Image of a group algebra element of S_k acting by place permutations on one side."""
    identity = Permutation.identity(k)
    terms = [
        (c, place_permutation_operator(n, k, p, identity) if side == "left" else place_permutation_operator(n, k, identity, p))
        for p, c in element
    ]

    def rule(index: SimpleTensorIndex) -> Terms:
        result: Terms = {}
        for c, operator in terms:
            for image, d in operator.rule(index).items():
                _accumulate(result, image, c * d)
        return result

    return TensorOperator(n, k, rule, f"{side}[{element}]")


def diagram_to_operator(d: WalledDiagram, n: int) -> TensorOperator:
    """
    The endomorphism φ(d) of M.

    The top row of a diagram is the output and the bottom row the input;
    d is factored as permutations, a block of contractions c_{1,1}..c_{a,a},
    then permutations.
    """
    k = d.k
    factors = factor_diagram(d)
    operator = place_permutation_operator(n, k, factors.top_left, factors.top_right)
    for m in range(1, factors.contractions + 1):
        operator = operator @ contraction_operator(n, k, m, m)
    return operator @ place_permutation_operator(n, k, factors.bottom_left, factors.bottom_right)


def lie_action(n: int, k: int, a: int, b: int) -> TensorOperator:
    """
    Action of the matrix unit E_{a,b} of gl_n on M.

    On V, E_{a,b} v_c = δ(c=b) v_a; on V*, E_{a,b} v_c* = -δ(c=a) v_b*.
    The action on M is the sum over all 2k factors.
    """
    if not (1 <= a <= n and 1 <= b <= n):
        raise ShapeError(f"Matrix unit E_{{{a},{b}}} out of range for n={n}")

    def rule(index: SimpleTensorIndex) -> Terms:
        terms: Terms = {}
        for p, value in enumerate(index.left):
            if value == b:
                left = index.left[:p] + (a,) + index.left[p + 1:]
                _accumulate(terms, SimpleTensorIndex(left, index.right), Fraction(1))
        for p, value in enumerate(index.right):
            if value == a:
                right = index.right[:p] + (b,) + index.right[p + 1:]
                _accumulate(terms, SimpleTensorIndex(index.left, right), Fraction(-1))
        return terms

    return TensorOperator(n, k, rule, f"E{a},{b}")


def index_weight(index: SimpleTensorIndex, n: int) -> Tuple[int, ...]:
    weight = [0] * n
    for value in index.left:
        weight[value - 1] += 1
    for value in index.right:
        weight[value - 1] -= 1
    return tuple(weight)


def weight_of(v: TensorVector) -> Optional[Tuple[int, ...]]:
    """
    Common weight of all terms of v.

    Returns:
        The weight as an integer n-tuple, or None if v is zero or not homogeneous
    """
    weights = {index_weight(index, v.n) for index in v.terms}
    if len(weights) != 1:
        return None
    return weights.pop()


@dataclass(frozen=True)
class ContractionPattern:
    """
    Slots s_1 < ... < s_m of V paired positionally with distinct slots t_1..t_m of V*.
    """

    s: Tuple[int, ...] = ()
    t: Tuple[int, ...] = ()

    def __post_init__(self):
        s, t = tuple(self.s), tuple(self.t)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        if len(s) != len(t):
            raise ShapeError(f"Pattern sides have different lengths: s={s}, t={t}")
        if list(s) != sorted(set(s)):
            raise ShapeError(f"s must be strictly increasing: {s}")
        if len(set(t)) != len(t):
            raise ShapeError(f"t must have distinct entries: {t}")

    @property
    def length(self) -> int:
        return len(self.s)

    @property
    def admissible(self) -> bool:
        """No s_i equals its partner t_i."""
        return all(a != b for a, b in zip(self.s, self.t))

    def complements(self, k: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """(s^c, t^c) inside 1..k."""
        if any(not 1 <= x <= k for x in self.s + self.t):
            raise ShapeError(f"Pattern {self} does not fit inside 1..{k}")
        return (
            tuple(x for x in range(1, k + 1) if x not in self.s),
            tuple(x for x in range(1, k + 1) if x not in self.t),
        )


def enumerate_patterns(k: int, r: int) -> List[ContractionPattern]:
    """All patterns of length k - r: s increasing, t any ordered selection."""
    if not 0 <= r <= k:
        return []
    return [
        ContractionPattern(s, t)
        for s in itertools.combinations(range(1, k + 1), k - r)
        for t in itertools.permutations(range(1, k + 1), k - r)
    ]


def contraction_product(n: int, k: int, pattern: ContractionPattern) -> TensorOperator:
    """c_{s,t} = c_{s_1,t_1} ... c_{s_m,t_m}."""
    operator = TensorOperator.identity(n, k)
    for a, b in zip(pattern.s, pattern.t):
        operator = operator @ contraction_operator(n, k, a, b)
    return operator


def _check_pattern(n: int, k: int, T: StandardTableau, Tstar: StandardTableau, pattern: ContractionPattern) -> int:
    r = k - pattern.length
    s_complement, t_complement = pattern.complements(k)
    if T.entries != s_complement:
        raise ShapeError(f"Tableau T has entries {T.entries}, expected s^c = {s_complement}")
    if Tstar.entries != t_complement:
        raise ShapeError(f"Tableau T* has entries {Tstar.entries}, expected t^c = {t_complement}")
    if n < 2 * k:
        raise ParameterMismatchError(f"Highest weight vectors need n >= 2k, got n={n}, k={k}")
    return r


def build_x_prime(n: int, k: int, T: StandardTableau, Tstar: StandardTableau, pattern: ContractionPattern) -> TensorVector:
    """
    The simple tensor x' attached to (T, T*, s, t).

    Slot s_i of V carries v_{r+i} and slot t_i of V* carries v*_{r+i}; a slot
    in row j of T carries v_j and a slot in row j of T* carries v*_{n-j+1}.
    """
    r = _check_pattern(n, k, T, Tstar, pattern)
    left, right = [0] * k, [0] * k
    for i, (a, b) in enumerate(zip(pattern.s, pattern.t), start=1):
        left[a - 1] = r + i
        right[b - 1] = r + i
    for p in T.entries:
        left[p - 1] = T.row_of(p)
    for p in Tstar.entries:
        right[p - 1] = n - Tstar.row_of(p) + 1
    return TensorVector.basis(n, k, left, right)


def build_x(n: int, k: int, T: StandardTableau, Tstar: StandardTableau, pattern: ContractionPattern) -> TensorVector:
    """As build_x_prime, with v_1 and v_1* in every contracted slot."""
    x_prime = build_x_prime(n, k, T, Tstar, pattern)
    index = next(iter(x_prime.terms))
    left, right = list(index.left), list(index.right)
    for a, b in zip(pattern.s, pattern.t):
        left[a - 1] = 1
        right[b - 1] = 1
    return TensorVector.basis(n, k, left, right)


def apply_y(n: int, k: int, T: StandardTableau, Tstar: StandardTableau, pattern: ContractionPattern) -> TensorOperator:
    """y_T y_{T*} c_{s,t}, with y_T on the V factors and y_{T*} on the V* factors."""
    _check_pattern(n, k, T, Tstar, pattern)
    left = group_algebra_operator(n, k, young_symmetrizer(T, k), "left")
    right = group_algebra_operator(n, k, young_symmetrizer(Tstar, k), "right")
    return left @ right @ contraction_product(n, k, pattern)


@dataclass
class MaximalVectorReport:
    """Outcome of checking e·y·x' for one (T, T*, s, t)."""

    lam: Partition
    mu: Partition
    pattern: ContractionPattern
    T: StandardTableau
    Tstar: StandardTableau
    admissible: bool
    nonzero: bool
    weight: Optional[Tuple[int, ...]]
    expected_weight: Tuple[int, ...]
    maximal: bool
    leading_coefficient: Fraction
    expected_leading_coefficient: int

    @property
    def passed(self) -> bool:
        """A genuine maximal vector of the expected weight."""
        return (
            self.admissible
            and self.nonzero
            and self.weight == self.expected_weight
            and self.maximal
            and self.leading_coefficient == self.expected_leading_coefficient
        )

    @property
    def consistent(self) -> bool:
        """Admissible patterns pass; the others vanish."""
        return self.passed if self.admissible else not self.nonzero

    def to_record(self) -> dict:
        return {
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "s": list(self.pattern.s),
            "t": list(self.pattern.t),
            "T": str(self.T),
            "Tstar": str(self.Tstar),
            "admissible": self.admissible,
            "nonzero": self.nonzero,
            "weight": list(self.weight) if self.weight is not None else None,
            "maximal": self.maximal,
            "leading_coefficient": str(self.leading_coefficient),
        }


def verify_maximal_vector(
    n: int, k: int, T: StandardTableau, Tstar: StandardTableau, pattern: ContractionPattern
) -> MaximalVectorReport:
    """
    Build w = e·y·x' and check that it is a maximal vector of weight (λ, μ).

    Patterns with some s_i = t_i are reported too; for them w must vanish.

    Returns:
        MaximalVectorReport with every check recorded
    """
    _check_pattern(n, k, T, Tstar, pattern)
    x_prime = build_x_prime(n, k, T, Tstar, pattern)
    w = e_operator(n, k).apply(apply_y(n, k, T, Tstar, pattern).apply(x_prime))
    nonzero = not w.is_zero()
    maximal = nonzero and all(lie_action(n, k, a, a + 1).apply(w).is_zero() for a in range(1, n))
    report = MaximalVectorReport(
        lam=T.shape,
        mu=Tstar.shape,
        pattern=pattern,
        T=T,
        Tstar=Tstar,
        admissible=pattern.admissible,
        nonzero=nonzero,
        weight=weight_of(w),
        expected_weight=pair_to_weight(HighestWeightPair(T.shape, Tstar.shape), n),
        maximal=maximal,
        leading_coefficient=w.coefficient(next(iter(x_prime.terms))),
        expected_leading_coefficient=len(row_group(T, k)) * len(row_group(Tstar, k)),
    )
    if not report.consistent:
        logger.warning("Maximal vector check failed: %s", report.to_record())
    return report


def iterate_highest_weight_data(k: int) -> Iterator[Tuple[StandardTableau, StandardTableau, ContractionPattern]]:
    """Every (T, T*, pattern) with |λ| = |μ| = r for r = 0..k."""
    for r in range(k + 1):
        for pattern in enumerate_patterns(k, r):
            s_complement, t_complement = pattern.complements(k)
            for lam in enumerate_partitions(r):
                for mu in enumerate_partitions(r):
                    for T in enumerate_standard_tableaux(lam, s_complement):
                        for Tstar in enumerate_standard_tableaux(mu, t_complement):
                            yield T, Tstar, pattern


def tally_maximal_vectors(n: int, k: int) -> Dict[Tuple[Partition, Partition], int]:
    """
    Count passing maximal vectors per (λ, μ).

    Returns:
        Mapping (λ, μ) -> number of (T, T*, pattern) whose check passes;
        every pair with |λ| = |μ| <= k is present
    """
    tally: Dict[Tuple[Partition, Partition], int] = {
        (lam, mu): 0
        for r in range(k + 1)
        for lam in enumerate_partitions(r)
        for mu in enumerate_partitions(r)
    }
    for T, Tstar, pattern in iterate_highest_weight_data(k):
        if verify_maximal_vector(n, k, T, Tstar, pattern).passed:
            tally[(T.shape, Tstar.shape)] += 1
    return tally


def projector_decomposition_ranks(n: int, k: int) -> Dict[Tuple[int, ...], int]:
    """
    Ranks of p_{J^c}·q_J for every J ⊆ {1..k}, with q_j = id - p_j.

    Returns:
        Mapping J (sorted tuple) -> rank; rank = (n²-1)^{|J|}
    """
    identity = TensorOperator.identity(n, k)
    ranks = {}
    for size in range(k + 1):
        for J in itertools.combinations(range(1, k + 1), size):
            operator = identity
            for j in range(1, k + 1):
                factor = identity - projector_p(n, k, j) if j in J else projector_p(n, k, j)
                operator = operator @ factor
            ranks[J] = operator.rank()
            logger.debug("rank p_J^c q_J for J=%s: %d", J, ranks[J])
    return ranks


def kernel_intersection_dimension(n: int, k: int) -> int:
    """dim ∩_j ker p_j, computed from the stacked map v -> (p_1 v, ..., p_k v)."""
    projectors = [projector_p(n, k, j) for j in range(1, k + 1)]

    def stacked(index: SimpleTensorIndex) -> Dict[Tuple[int, SimpleTensorIndex], Fraction]:
        return {(j, image): c for j, p in enumerate(projectors) for image, c in p.rule(index).items()}

    dimension = check_dimension(n, k)
    return dimension - exact_rank(stacked(index) for index in basis_indices(n, k))
