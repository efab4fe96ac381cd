"""
The walled Brauer algebra B_{k,k}(n).

A diagram has a top row T1..T2k and a bottom row B1..B2k, with a wall
between positions k and k+1 of each row. Vertices are numbered
T1..T2k = 1..2k and B1..B2k = 2k+1..4k. Horizontal edges (both ends in
one row) must cross the wall; vertical edges must not.

Diagrams are composed by stacking: in d1 ∘ d2, d1 sits above d2, the
bottom row of d1 is glued to the top row of d2, and every closed loop left
in the middle contributes a factor n.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, NamedTuple, Sequence, Tuple

from algebra.linalg import exact_rank
from algebra.symmetric_group_algebra import Permutation
from domain.errors import DiagramError, ParameterMismatchError, VerificationError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def vertex_label(vertex: int, k: int) -> str:
    """Label a vertex number as "T<i>" or "B<i>"."""
    if not 1 <= vertex <= 4 * k:
        raise DiagramError(f"Vertex {vertex} out of range for k={k}")
    return f"T{vertex}" if vertex <= 2 * k else f"B{vertex - 2 * k}"


def parse_vertex(label: str, k: int) -> int:
    """Inverse of vertex_label."""
    label = label.strip().upper()
    try:
        row, position = label[0], int(label[1:])
    except (IndexError, ValueError):
        raise DiagramError(f"Bad vertex label {label!r}")
    if row not in ("T", "B") or not 1 <= position <= 2 * k:
        raise DiagramError(f"Bad vertex label {label!r} for k={k}")
    return position if row == "T" else 2 * k + position


@dataclass(frozen=True, order=True)
class WalledDiagram:
    """A wall-respecting perfect matching on the 4k vertices of B_{k,k}."""

    k: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        k = self.k
        if k < 1:
            raise DiagramError(f"Walled diagrams need k >= 1, got {k}")
        edges = tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in self.edges))
        object.__setattr__(self, "edges", edges)
        seen = [v for edge in edges for v in edge]
        if sorted(seen) != list(range(1, 4 * k + 1)):
            raise DiagramError(f"Edges {self.labelled_edges()} are not a perfect matching on 4k={4 * k} vertices")
        for a, b in edges:
            if self.is_top(a) == self.is_top(b):
                if self.is_left(a) == self.is_left(b):
                    raise DiagramError(
                        f"edge [{vertex_label(a, k)!r},{vertex_label(b, k)!r}] does not cross the wall"
                    )
            elif self.is_left(a) != self.is_left(b):
                raise DiagramError(f"edge [{vertex_label(a, k)!r},{vertex_label(b, k)!r}] crosses the wall")

    @classmethod
    def from_labels(cls, k: int, edges: Iterable[Sequence[str]]) -> "WalledDiagram":
        pairs = []
        for edge in edges:
            if len(edge) != 2:
                raise DiagramError(f"Edge {list(edge)} must have two endpoints")
            pairs.append((parse_vertex(edge[0], k), parse_vertex(edge[1], k)))
        return cls(k, tuple(pairs))

    @classmethod
    def identity(cls, k: int) -> "WalledDiagram":
        return cls(k, tuple((i, 2 * k + i) for i in range(1, 2 * k + 1)))

    def is_top(self, vertex: int) -> bool:
        return vertex <= 2 * self.k

    def position(self, vertex: int) -> int:
        return vertex if vertex <= 2 * self.k else vertex - 2 * self.k

    def is_left(self, vertex: int) -> bool:
        return self.position(vertex) <= self.k

    @property
    def partner(self) -> Dict[int, int]:
        mapping = {}
        for a, b in self.edges:
            mapping[a] = b
            mapping[b] = a
        return mapping

    def labelled_edges(self) -> List[List[str]]:
        return [[vertex_label(a, self.k), vertex_label(b, self.k)] for a, b in self.edges]

    def top_horizontal(self) -> List[Edge]:
        return [(a, b) for a, b in self.edges if b <= 2 * self.k]

    def bottom_horizontal(self) -> List[Edge]:
        return [(a, b) for a, b in self.edges if a > 2 * self.k]

    def vertical(self) -> List[Edge]:
        return [(a, b) for a, b in self.edges if a <= 2 * self.k < b]

    def __str__(self) -> str:
        return " ".join(f"{a}-{b}" for a, b in self.labelled_edges())


def compose_diagrams(d1: WalledDiagram, d2: WalledDiagram) -> Tuple[int, WalledDiagram]:
    """
    Stack d1 above d2 and trace every path through the middle row.

    Args:
        d1: Upper diagram
        d2: Lower diagram

    Returns:
        (number of closed middle loops, resulting diagram)

    Raises:
        ParameterMismatchError: If the diagrams have different k
    """
    if d1.k != d2.k:
        raise ParameterMismatchError(f"Cannot compose diagrams with k={d1.k} and k={d2.k}")
    k2 = 2 * d1.k
    upper, lower = d1.partner, d2.partner
    visited = set()
    result = {}

    # Middle vertex m is bottom vertex k2+m of d1 and top vertex m of d2.
    for start in range(1, 2 * k2 + 1):
        if start in result:
            continue
        if start <= k2:
            current, in_upper = upper[start], True
        else:
            current, in_upper = lower[start], False
        while True:
            if in_upper:
                if current <= k2:
                    end = current
                    break
                middle = current - k2
                visited.add(middle)
                current, in_upper = lower[middle], False
            else:
                if current > k2:
                    end = current
                    break
                middle = current
                visited.add(middle)
                current, in_upper = upper[k2 + middle], True
        result[start] = end
        result[end] = start

    cycles = 0
    for middle in range(1, k2 + 1):
        if middle in visited:
            continue
        current = middle
        while True:
            visited.add(current)
            current = upper[k2 + current] - k2
            visited.add(current)
            current = lower[current]
            if current == middle:
                break
        cycles += 1

    edges = tuple((a, b) for a, b in result.items() if a < b)
    return cycles, WalledDiagram(d1.k, edges)


@dataclass
class DiagramAlgebraElement:
    """A rational combination of walled diagrams in B_{k,k}(n)."""

    k: int
    n: int
    terms: Dict[WalledDiagram, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for diagram, coefficient in self.terms.items():
            if diagram.k != self.k:
                raise ParameterMismatchError(f"Diagram with k={diagram.k} in an element with k={self.k}")
            if coefficient:
                cleaned[diagram] = Fraction(coefficient)
        self.terms = cleaned

    @classmethod
    def from_diagram(cls, diagram: WalledDiagram, n: int, coefficient=1) -> "DiagramAlgebraElement":
        return cls(diagram.k, n, {diagram: Fraction(coefficient)})

    @classmethod
    def identity(cls, k: int, n: int) -> "DiagramAlgebraElement":
        return cls.from_diagram(WalledDiagram.identity(k), n)

    def _check(self, other: "DiagramAlgebraElement"):
        if (self.k, self.n) != (other.k, other.n):
            raise ParameterMismatchError(
                f"Elements of B_{{{self.k},{self.k}}}({self.n}) and B_{{{other.k},{other.k}}}({other.n})"
            )

    def __add__(self, other: "DiagramAlgebraElement") -> "DiagramAlgebraElement":
        self._check(other)
        terms = dict(self.terms)
        for diagram, c in other.terms.items():
            terms[diagram] = terms.get(diagram, Fraction(0)) + c
        return DiagramAlgebraElement(self.k, self.n, terms)

    def __neg__(self) -> "DiagramAlgebraElement":
        return DiagramAlgebraElement(self.k, self.n, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "DiagramAlgebraElement") -> "DiagramAlgebraElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "DiagramAlgebraElement":
        return DiagramAlgebraElement(self.k, self.n, {d: Fraction(scalar) * c for d, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, DiagramAlgebraElement):
            return self.__rmul__(other)
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagramAlgebraElement):
            return NotImplemented
        return (self.k, self.n) == (other.k, other.n) and self.terms == other.terms

    def __iter__(self) -> Iterator[Tuple[WalledDiagram, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, diagram: WalledDiagram) -> Fraction:
        return self.terms.get(diagram, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms


def multiply(a: DiagramAlgebraElement, b: DiagramAlgebraElement) -> DiagramAlgebraElement:
    """Bilinear product; each diagram product picks up n per middle loop."""
    a._check(b)
    terms: Dict[WalledDiagram, Fraction] = {}
    for d1, x in a.terms.items():
        for d2, y in b.terms.items():
            cycles, diagram = compose_diagrams(d1, d2)
            terms[diagram] = terms.get(diagram, Fraction(0)) + x * y * a.n ** cycles
    return DiagramAlgebraElement(a.k, a.n, terms)


def contraction_diagram(k: int, j: int) -> WalledDiagram:
    """
    Identity diagram except that positions j and k+j are joined in each row.

    Args:
        k: Wall position
        j: Contracted slot, 1 <= j <= k

    Returns:
        The diagram h_j; c_j = h_j / n in B_{k,k}(n)
    """
    if not 1 <= j <= k:
        raise DiagramError(f"Contraction index {j} out of range 1..{k}")
    edges = [(j, k + j), (2 * k + j, 3 * k + j)]
    edges += [(i, 2 * k + i) for i in range(1, 2 * k + 1) if i not in (j, k + j)]
    return WalledDiagram(k, tuple(edges))


def contraction_element(k: int, j: int, n: int) -> DiagramAlgebraElement:
    """The idempotent c_j = h_j / n."""
    return DiagramAlgebraElement.from_diagram(contraction_diagram(k, j), n, Fraction(1, n))


def b_idempotent(k: int, n: int) -> DiagramAlgebraElement:
    """b = Π_j (1 - c_j), expanded into 2^k diagram terms."""
    identity = DiagramAlgebraElement.identity(k, n)
    b = identity
    for j in range(1, k + 1):
        b = b * (identity - contraction_element(k, j, n))
    return b


def has_forbidden_pair(d: WalledDiagram) -> bool:
    """Whether some row joins its position i to position k+i."""
    k = d.k
    return any(
        (a <= k and b == a + k) or (2 * k < a <= 3 * k and b == a + k)
        for a, b in d.edges
    )


def flip_to_permutation(d: WalledDiagram) -> Permutation:
    """
    Apply the two flips that turn a walled diagram into a permutation of 1..2k.

    The right halves of the two rows are exchanged, then the top row is
    rotated across the wall. The result sends each top position to the
    bottom position it is joined to. Forbidden pairs become fixed points.
    """
    k = d.k

    def relocate(vertex: int) -> Tuple[bool, int]:
        # (ends up on top, final position)
        if vertex <= k:
            return True, k + vertex
        if vertex <= 2 * k:
            return False, vertex
        if vertex <= 3 * k:
            return False, vertex - 2 * k
        return True, vertex - 3 * k

    images = [0] * (2 * k)
    for a, b in d.edges:
        (a_top, a_pos), (b_top, b_pos) = relocate(a), relocate(b)
        if a_top == b_top:
            raise VerificationError(f"Flipped edge {a}-{b} of {d} does not join the two rows")
        top, bottom = (a_pos, b_pos) if a_top else (b_pos, a_pos)
        images[top - 1] = bottom
    return Permutation(tuple(images))


def diagram_from_permutation(sigma: Permutation) -> WalledDiagram:
    """Undo the two flips: the walled diagram whose flip is sigma."""
    if sigma.degree % 2 or sigma.degree == 0:
        raise DiagramError(f"Flipped diagrams need a permutation of even degree, got {sigma.degree}")
    k = sigma.degree // 2
    edges = []
    for p in range(1, 2 * k + 1):
        q = sigma(p)
        top_vertex = 3 * k + p if p <= k else p - k
        bottom_vertex = 2 * k + q if q <= k else q
        edges.append((top_vertex, bottom_vertex))
    return WalledDiagram(k, tuple(edges))


def enumerate_diagrams(k: int) -> List[WalledDiagram]:
    """All (2k)! diagrams of B_{k,k}, in the order of the permutations they flip to."""
    return [
        diagram_from_permutation(Permutation(images))
        for images in itertools.permutations(range(1, 2 * k + 1))
    ]


def permutation_diagram(left: Permutation, right: Permutation) -> WalledDiagram:
    """
    Diagram of the place permutation pair: T_{σ(y)} is joined to B_y.

    Args:
        left: Permutation of the left slots
        right: Permutation of the right slots
    """
    if left.degree != right.degree:
        raise ParameterMismatchError(f"Left and right degrees differ: {left.degree} and {right.degree}")
    k = left.degree
    edges = [(left(y), 2 * k + y) for y in range(1, k + 1)]
    edges += [(k + right(y), 3 * k + y) for y in range(1, k + 1)]
    return WalledDiagram(k, tuple(edges))


class DiagramFactorization(NamedTuple):
    """d = permutation_diagram(top) ∘ C_a ∘ permutation_diagram(bottom)."""

    top_left: Permutation
    top_right: Permutation
    contractions: int
    bottom_left: Permutation
    bottom_right: Permutation


def standard_contraction_diagram(k: int, a: int) -> WalledDiagram:
    """C_a: the first a slots contracted in both rows, verticals elsewhere."""
    edges = []
    for m in range(1, k + 1):
        if m <= a:
            edges += [(m, k + m), (2 * k + m, 3 * k + m)]
        else:
            edges += [(m, 2 * k + m), (k + m, 3 * k + m)]
    return WalledDiagram(k, tuple(edges))


def factor_diagram(d: WalledDiagram) -> DiagramFactorization:
    """
    Factor d into a permutation pair, a block of contractions and a permutation pair.

    Raises:
        VerificationError: If the factors do not recompose to d
    """
    k = d.k
    top = sorted(d.top_horizontal())
    bottom = sorted(d.bottom_horizontal(), key=lambda edge: edge[0])
    a = len(top)
    if len(bottom) != a:
        raise VerificationError(f"Diagram {d} has unequal horizontal edge counts")

    top_left, top_right = [0] * k, [0] * k
    bottom_left, bottom_right = [0] * k, [0] * k
    for m, (i, j) in enumerate(top, start=1):
        top_left[m - 1], top_right[m - 1] = i, j - k
    for m, (p, q) in enumerate(bottom, start=1):
        bottom_left[p - 2 * k - 1] = m
        bottom_right[q - 3 * k - 1] = m

    left_vertical = sorted((x, y - 2 * k) for x, y in d.vertical() if x <= k)
    right_vertical = sorted((x - k, y - 3 * k) for x, y in d.vertical() if x > k)
    for t, (x, y) in enumerate(left_vertical, start=a + 1):
        top_left[t - 1] = x
        bottom_left[y - 1] = t
    for t, (x, y) in enumerate(right_vertical, start=a + 1):
        top_right[t - 1] = x
        bottom_right[y - 1] = t

    factors = DiagramFactorization(
        Permutation(tuple(top_left)), Permutation(tuple(top_right)), a,
        Permutation(tuple(bottom_left)), Permutation(tuple(bottom_right)),
    )
    cycles_inner, inner = compose_diagrams(
        standard_contraction_diagram(k, a), permutation_diagram(factors.bottom_left, factors.bottom_right)
    )
    cycles_outer, recomposed = compose_diagrams(permutation_diagram(factors.top_left, factors.top_right), inner)
    if recomposed != d or cycles_inner or cycles_outer:
        raise VerificationError(f"Factorization of {d} recomposes to {recomposed}")
    return factors


def sandwich_elements(k: int, n: int) -> List[DiagramAlgebraElement]:
    """The elements b·d·b for every diagram d without a forbidden pair."""
    b = b_idempotent(k, n)
    return [b * DiagramAlgebraElement.from_diagram(d, n) * b for d in enumerate_diagrams(k) if not has_forbidden_pair(d)]


def sandwich_basis_rank(k: int, n: int) -> int:
    """
    Rank of {b·d·b : d has no forbidden pair} in the diagram basis.

    Args:
        k: Wall position
        n: Algebra parameter; the rank equals D_{2k} when n >= 2k

    Returns:
        Exact rank over the rationals
    """
    if n < 2 * k:
        logger.warning("sandwich_basis_rank(k=%d, n=%d) is outside the stable range n >= 2k", k, n)
    elements = sandwich_elements(k, n)
    rank = exact_rank(element.terms for element in elements)
    logger.info("Sandwich algebra rank for k=%d, n=%d: %d of %d elements", k, n, rank, len(elements))
    return rank
