"""
Group algebra of the symmetric group S_k with rational coefficients,
row and column groups of tableaux, and Young symmetrizers.

Permutations act on positions 1..k; a tableau filled from a subset of
1..k acts as the identity on the complement.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from domain.errors import ParameterMismatchError, ShapeError, VerificationError
from domain.partitions import StandardTableau, num_standard_tableaux

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Permutation:
    """
    A bijection of {1..k}, stored as the tuple (σ(1), ..., σ(k)).

    The product σ * τ is the composition σ∘τ (τ is applied first).
    """

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"Not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], k: int) -> "Permutation":
        images = list(range(1, k + 1))
        for cycle in cycles:
            for position, point in enumerate(cycle):
                if not 1 <= point <= k:
                    raise ValueError(f"Cycle entry {point} out of range 1..{k}")
                images[point - 1] = cycle[(position + 1) % len(cycle)]
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, k: int) -> "Permutation":
        """
        Parse cycle notation such as "(1 5)(2 3)"; "()" is the identity.

        Args:
            text: Product of disjoint cycles
            k: Degree of the permutation

        Returns:
            The parsed permutation
        """
        cycles = []
        for chunk in text.replace(")", ")|").split("|"):
            chunk = chunk.strip().strip("()").replace(",", " ")
            if chunk:
                cycles.append([int(x) for x in chunk.split()])
        return cls.from_cycles(cycles, k)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ParameterMismatchError(f"Cannot compose degrees {self.degree} and {other.degree}")
        return Permutation(tuple(self(other(x)) for x in range(1, self.degree + 1)))

    def inverse(self) -> "Permutation":
        images = [0] * self.degree
        for x, y in enumerate(self.images, start=1):
            images[y - 1] = x
        return Permutation(tuple(images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point, sorted by that point."""
        seen = set()
        result = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            point = self(start)
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self(point)
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    @property
    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def fixed_points(self) -> List[int]:
        return [x for x in range(1, self.degree + 1) if self(x) == x]

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)


@dataclass
class GroupAlgebraElement:
    """A finite rational combination of permutations of a fixed degree k."""

    k: int
    terms: Dict[Permutation, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for perm, coefficient in self.terms.items():
            if perm.degree != self.k:
                raise ParameterMismatchError(f"Permutation {perm} does not have degree {self.k}")
            if coefficient:
                cleaned[perm] = Fraction(coefficient)
        self.terms = cleaned

    @classmethod
    def identity(cls, k: int) -> "GroupAlgebraElement":
        return cls(k, {Permutation.identity(k): Fraction(1)})

    @classmethod
    def from_permutation(cls, perm: Permutation, coefficient=1) -> "GroupAlgebraElement":
        return cls(perm.degree, {perm: Fraction(coefficient)})

    def _check(self, other: "GroupAlgebraElement"):
        if self.k != other.k:
            raise ParameterMismatchError(f"Group algebra degrees differ: {self.k} and {other.k}")

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        terms = dict(self.terms)
        for perm, c in other.terms.items():
            terms[perm] = terms.get(perm, Fraction(0)) + c
        return GroupAlgebraElement(self.k, terms)

    def __neg__(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.k, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.k, {p: Fraction(scalar) * c for p, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return self.__rmul__(other)
        self._check(other)
        terms: Dict[Permutation, Fraction] = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                product = p * q
                terms[product] = terms.get(product, Fraction(0)) + a * b
        return GroupAlgebraElement(self.k, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __iter__(self) -> Iterator[Tuple[Permutation, Fraction]]:
        return iter(sorted(self.terms.items()))

    def coefficient(self, perm: Permutation) -> Fraction:
        return self.terms.get(perm, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{p}" for p, c in self)


def _degree_for(tableau: StandardTableau, k: Optional[int]) -> int:
    largest = max(tableau.entries, default=0)
    if k is None:
        k = largest
    if tableau.entries and (min(tableau.entries) < 1 or largest > k):
        raise ShapeError(f"Tableau entries {tableau.entries} are not inside 1..{k}")
    return k


def _block_group(blocks: Sequence[Sequence[int]], k: int) -> List[Permutation]:
    # Product of the symmetric groups on each block, identity elsewhere.
    factors = [list(itertools.permutations(block)) for block in blocks]
    group = []
    for choice in itertools.product(*factors):
        images = list(range(1, k + 1))
        for block, arrangement in zip(blocks, choice):
            for source, target in zip(block, arrangement):
                images[source - 1] = target
        group.append(Permutation(tuple(images)))
    return sorted(group)


def row_group(tableau: StandardTableau, k: Optional[int] = None) -> List[Permutation]:
    """
    Permutations of 1..k preserving each row of the tableau setwise.

    Args:
        tableau: Tableau with entries inside 1..k
        k: Degree; defaults to the largest entry

    Returns:
        The row group R_T, sorted
    """
    return _block_group(tableau.rows, _degree_for(tableau, k))


def column_group(tableau: StandardTableau, k: Optional[int] = None) -> List[Permutation]:
    """Permutations of 1..k preserving each column of the tableau setwise."""
    return _block_group(tableau.columns, _degree_for(tableau, k))


def young_symmetrizer(tableau: StandardTableau, k: Optional[int] = None) -> GroupAlgebraElement:
    """
    y_T = (Σ_{ρ in R_T} ρ)(Σ_{γ in C_T} sgn(γ) γ).

    Args:
        tableau: Standard tableau with entries inside 1..k
        k: Degree of the ambient symmetric group

    Returns:
        The Young symmetrizer in the group algebra of S_k
    """
    k = _degree_for(tableau, k)
    rows = GroupAlgebraElement(k, {rho: Fraction(1) for rho in row_group(tableau, k)})
    columns = GroupAlgebraElement(k, {gamma: Fraction(gamma.sign) for gamma in column_group(tableau, k)})
    return rows * columns


def essential_idempotent_constant(tableau: StandardTableau, k: Optional[int] = None) -> Fraction:
    """
    Find the scalar m with y_T² = m·y_T by exact multiplication.

    Raises:
        VerificationError: If y_T² is not a multiple of y_T
    """
    y = young_symmetrizer(tableau, k)
    square = y * y
    identity = Permutation.identity(y.k)
    m = square.coefficient(identity) / y.coefficient(identity)
    if square != m * y:
        raise VerificationError(f"y_T² is not a multiple of y_T for tableau {tableau}")
    expected = Fraction(factorial(tableau.size), num_standard_tableaux(tableau.shape))
    if m != expected:
        logger.warning("Idempotent constant %s for %s differs from r!/f = %s", m, tableau, expected)
    return m
