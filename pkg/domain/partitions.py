"""Partitions and standard Young tableaux."""
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, List, Sequence, Tuple

from domain.errors import ShapeError


@dataclass(frozen=True)
class Partition:
    """
    A weakly decreasing sequence of positive integers.

    The empty partition is the unique partition of 0 and is serialized as
    the empty string.
    """

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ShapeError(f"Partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ShapeError(f"Partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """
        Parse a comma-separated list such as "2,1,1".

        Args:
            text: Serialized partition; empty (or "0", "∅") means the empty partition

        Returns:
            The parsed partition
        """
        text = text.strip()
        if text in ("", "0", "∅", "()"):
            return cls(())
        try:
            parts = tuple(int(piece) for piece in text.strip("()").split(",") if piece.strip())
        except ValueError:
            raise ShapeError(f"Cannot parse partition from {text!r}")
        return cls(parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, index: int) -> int:
        return self.parts[index]

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __repr__(self) -> str:
        return f"Partition({self.parts})"

    def conjugate(self) -> "Partition":
        """Return the transposed shape (column lengths)."""
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > c) for c in range(self.parts[0])))

    def boxes(self) -> Iterator[Tuple[int, int]]:
        """Yield (row, column) coordinates of the boxes, 0-based, row by row."""
        for i, length in enumerate(self.parts):
            for j in range(length):
                yield i, j

    def hook_length(self, i: int, j: int) -> int:
        # arm + leg + 1
        arm = self.parts[i] - j - 1
        leg = sum(1 for row in self.parts[i + 1:] if row > j)
        return arm + leg + 1


def enumerate_partitions(r: int) -> List[Partition]:
    """
    List all partitions of r in decreasing lexicographic order.

    Args:
        r: Nonnegative integer to partition

    Returns:
        Partitions of r, e.g. [(4), (3,1), (2,2), (2,1,1), (1,1,1,1)] for r = 4
    """
    if r < 0:
        raise ShapeError(f"Cannot partition a negative integer: {r}")
    return [Partition(parts) for parts in _partitions(r, r)]


@lru_cache(maxsize=None)
def _partitions(r: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if r == 0:
        return ((),)
    result = []
    for first in range(min(r, largest), 0, -1):
        for rest in _partitions(r - first, first):
            result.append((first,) + rest)
    return tuple(result)


def partition_order(p: Partition) -> Tuple:
    """Sort key reproducing the enumeration order (size, then decreasing lex)."""
    return (p.size, tuple(-part for part in p.parts))


def hook_product(p: Partition) -> int:
    """Product of the hook lengths of all boxes of p (1 for the empty partition)."""
    return prod(p.hook_length(i, j) for i, j in p.boxes())


def num_standard_tableaux(p: Partition) -> int:
    """Number f^λ of standard tableaux of shape p, by the hook length formula."""
    total = factorial(p.size)
    h = hook_product(p)
    if total % h:
        raise ShapeError(f"Hook product {h} does not divide {p.size}!")
    return total // h


@dataclass(frozen=True)
class StandardTableau:
    """
    A standard filling of a partition shape by an arbitrary ordered entry set.

    Entries increase along rows and down columns; every entry is used once.
    """

    shape: Partition
    rows: Tuple[Tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if tuple(len(row) for row in rows) != self.shape.parts:
            raise ShapeError(f"Rows {rows} do not match shape {self.shape}")
        entries = [x for row in rows for x in row]
        if len(set(entries)) != len(entries):
            raise ShapeError(f"Tableau entries must be distinct: {rows}")
        for row in rows:
            if any(row[c] >= row[c + 1] for c in range(len(row) - 1)):
                raise ShapeError(f"Row {row} is not strictly increasing")
        for column in self.columns:
            if any(column[c] >= column[c + 1] for c in range(len(column) - 1)):
                raise ShapeError(f"Column {column} is not strictly increasing")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "StandardTableau":
        """Build a tableau whose shape is read off the row lengths."""
        return cls(Partition(tuple(len(row) for row in rows)), tuple(tuple(row) for row in rows))

    @property
    def columns(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(
            tuple(self.rows[i][c] for i in range(length))
            for c, length in enumerate(self.shape.conjugate().parts)
        )

    @property
    def entries(self) -> Tuple[int, ...]:
        """All entries in increasing order."""
        return tuple(sorted(x for row in self.rows for x in row))

    @property
    def size(self) -> int:
        return self.shape.size

    def row_of(self, entry: int) -> int:
        """Return the 1-based row index containing entry."""
        for index, row in enumerate(self.rows, start=1):
            if entry in row:
                return index
        raise ShapeError(f"{entry} is not an entry of {self.rows}")

    def __str__(self) -> str:
        return "/".join(" ".join(str(x) for x in row) for row in self.rows)


def enumerate_standard_tableaux(p: Partition, entries: Iterable[int]) -> List[StandardTableau]:
    """
    Enumerate every standard tableau of shape p filled with the given entries.

    Entries are placed in increasing order into every addable box of the
    shape; each completed filling is standard.

    Args:
        p: Shape of the tableaux
        entries: Distinct integers; their count must equal the size of p

    Returns:
        All standard fillings, each exactly once

    Raises:
        ShapeError: If the entries repeat or their count does not match the size of p
    """
    values = list(entries)
    if len(set(values)) != len(values):
        raise ShapeError(f"Tableau entries must be distinct, got {values}")
    if len(values) != p.size:
        raise ShapeError(f"Shape {p} of size {p.size} cannot hold {len(values)} entries")
    values.sort()

    tableaux = []
    rows: List[List[int]] = [[] for _ in p.parts]

    def place(position: int):
        if position == len(values):
            tableaux.append(StandardTableau(p, tuple(tuple(row) for row in rows)))
            return
        for i, length in enumerate(p.parts):
            if len(rows[i]) < length and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(values[position])
                place(position + 1)
                rows[i].pop()

    place(0)
    return tableaux
