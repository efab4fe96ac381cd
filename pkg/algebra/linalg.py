"""Exact row reduction of sparse rational vectors."""
import heapq
import logging
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, Mapping, Optional

logger = logging.getLogger(__name__)

SparseVector = Mapping[Hashable, Fraction]


class EchelonBasis:
    """
    Incrementally maintained row echelon form of a set of sparse vectors.

    Every stored row has pivot coefficient 1 at its smallest coordinate
    (under sort_key) and only larger coordinates besides the pivot.
    Coordinates must be totally ordered by sort_key.
    """

    def __init__(self, sort_key: Optional[Callable[[Hashable], object]] = None):
        self._key = sort_key or (lambda coordinate: coordinate)
        self._rows: Dict[Hashable, Dict[Hashable, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vector: SparseVector) -> Dict[Hashable, Fraction]:
        """Return the remainder of vector after eliminating every stored pivot."""
        remaining = {c: Fraction(v) for c, v in vector.items() if v}
        heap = [(self._key(c), i, c) for i, c in enumerate(remaining)]
        heapq.heapify(heap)
        counter = len(heap)
        while heap:
            _, _, coordinate = heapq.heappop(heap)
            value = remaining.get(coordinate)
            if not value or coordinate not in self._rows:
                continue
            for c, v in self._rows[coordinate].items():
                updated = remaining.get(c, Fraction(0)) - value * v
                if updated:
                    if c not in remaining:
                        heapq.heappush(heap, (self._key(c), counter, c))
                        counter += 1
                    remaining[c] = updated
                else:
                    remaining.pop(c, None)
        return remaining

    def add(self, vector: SparseVector) -> bool:
        """
        Insert a vector into the basis.

        Args:
            vector: Sparse vector as a coordinate -> coefficient mapping

        Returns:
            True if the vector was independent of the stored rows
        """
        remainder = self.reduce(vector)
        if not remainder:
            return False
        pivot = min(remainder, key=self._key)
        scale = remainder[pivot]
        self._rows[pivot] = {c: v / scale for c, v in remainder.items()}
        return True


def exact_rank(vectors: Iterable[SparseVector], sort_key: Optional[Callable[[Hashable], object]] = None) -> int:
    """
    Rank over the rationals of a family of sparse vectors.

    Args:
        vectors: Sparse vectors sharing one coordinate space
        sort_key: Total order on coordinates; defaults to the coordinates themselves

    Returns:
        Dimension of the span
    """
    basis = EchelonBasis(sort_key)
    for vector in vectors:
        basis.add(vector)
    logger.debug("Exact rank computed: %d", basis.rank)
    return basis.rank
