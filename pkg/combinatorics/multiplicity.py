"""
Closed-form multiplicities of the irreducible summands L(λ,μ) of the k-th
tensor power of the adjoint module of sl_n.

The formulas hold in the stable range n >= 2k and do not depend on n.
"""
import logging
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Dict, Iterator, List, Tuple

import pandas as pd

from combinatorics.derangements import derangement_recurrence
from domain.errors import ShapeError, VerificationError
from domain.partitions import Partition, enumerate_partitions, hook_product, num_standard_tableaux

logger = logging.getLogger(__name__)

PartitionPair = Tuple[Partition, Partition]


def _check_pair(k: int, lam: Partition, mu: Partition) -> int:
    if k < 0:
        raise ValueError(f"Tensor power must be nonnegative, got k={k}")
    if lam.size != mu.size:
        raise ShapeError(
            f"highest weight of sl_n^(x)k requires |λ|=|μ|, got |{lam}|={lam.size} and |{mu}|={mu.size}"
        )
    return lam.size


def admissible_pattern_count(k: int, r: int) -> int:
    """
    Count contraction patterns (s, t) of length k - r with s_i != t_i.

    s ranges over increasing (k-r)-subsets of {1..k} and t over ordered
    (k-r)-subsets; the count is the inclusion-exclusion sum
    Σ_j (-1)^j C(k,j) C(k-j,r)^2 (k-r-j)!.

    Args:
        k: Tensor power
        r: Size of the partitions left after contracting

    Returns:
        The number of admissible patterns (0 if r > k)
    """
    if r > k or r < 0:
        return 0
    return sum(
        (-1) ** j * comb(k, j) * comb(k - j, r) ** 2 * factorial(k - r - j)
        for j in range(k - r + 1)
    )


def multiplicity(k: int, lam: Partition, mu: Partition) -> int:
    """
    Multiplicity m^k_{λ,μ} of L(λ,μ) in sl_n^(x)k for n >= 2k.

    Args:
        k: Tensor power
        lam: Partition λ
        mu: Partition μ, same size as λ

    Returns:
        f^λ f^μ times the number of admissible contraction patterns

    Raises:
        ShapeError: If |λ| != |μ|
    """
    r = _check_pair(k, lam, mu)
    if r > k:
        return 0
    return num_standard_tableaux(lam) * num_standard_tableaux(mu) * admissible_pattern_count(k, r)


def multiplicity_hook_form(k: int, lam: Partition, mu: Partition) -> int:
    """Same value as multiplicity, evaluated through hook products."""
    r = _check_pair(k, lam, mu)
    if r > k:
        return 0
    numerator = sum(
        (-1) ** j * (factorial(k) // factorial(j)) * (factorial(k - j) // factorial(k - r - j))
        for j in range(k - r + 1)
    )
    denominator = hook_product(lam) * hook_product(mu)
    if numerator % denominator:
        raise VerificationError(
            f"Hook form for k={k}, λ={lam}, μ={mu} is not integral: {numerator}/{denominator}"
        )
    return numerator // denominator


@dataclass
class MultiplicityTable:
    """
    All multiplicities m^k_{λ,μ} with |λ| = |μ| = r <= k.

    Entries are kept in r-ascending order and, within each r, in the
    enumeration order of the partitions.
    """

    k: int
    entries: Dict[PartitionPair, int] = field(default_factory=dict)

    def __getitem__(self, pair: PartitionPair) -> int:
        return self.entries[pair]

    def __iter__(self) -> Iterator[PartitionPair]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self):
        return self.entries.items()

    @property
    def checksum(self) -> int:
        return sum(m * m for m in self.entries.values())

    def block(self, r: int) -> pd.DataFrame:
        """Return the r-block as a DataFrame (rows λ, columns μ)."""
        shapes = enumerate_partitions(r)
        data = [[self.entries[(lam, mu)] for mu in shapes] for lam in shapes]
        return pd.DataFrame(
            data,
            index=pd.Index([str(lam) for lam in shapes], name="lambda"),
            columns=[str(mu) for mu in shapes],
            dtype=object,
        )

    def blocks(self) -> Dict[int, pd.DataFrame]:
        return {r: self.block(r) for r in range(self.k + 1)}

    def to_records(self) -> List[dict]:
        """
        Flatten the table into JSON-ready rows.

        Returns:
            Rows {"lambda", "mu", "r", "multiplicity"} in table order
        """
        return [
            {"lambda": str(lam), "mu": str(mu), "r": lam.size, "multiplicity": m}
            for (lam, mu), m in self.entries.items()
        ]


def full_table(k: int) -> MultiplicityTable:
    """
    Tabulate every multiplicity of sl_n^(x)k.

    Args:
        k: Tensor power (k >= 0)

    Returns:
        MultiplicityTable with (∅,∅) first, r ascending
    """
    table = MultiplicityTable(k=k)
    for r in range(k + 1):
        shapes = enumerate_partitions(r)
        for lam in shapes:
            for mu in shapes:
                table.entries[(lam, mu)] = multiplicity(k, lam, mu)
    logger.debug("Built multiplicity table for k=%d with %d entries", k, len(table))
    return table


def checksum_sum_of_squares(k: int) -> int:
    """Σ (m^k_{λ,μ})² over the full table; equals D_{2k}."""
    return full_table(k).checksum


def invariants_dimension(k: int) -> int:
    """Dimension of the sl_n-invariants of sl_n^(x)k; equals D_k."""
    return multiplicity(k, Partition(()), Partition(()))


def recurrence_chain(k: int) -> Dict[str, int]:
    """
    Evaluate the adjoint multiplicity three ways.

    Args:
        k: Tensor power (k >= 1)

    Returns:
        {"alternating_sum": Σ_j (-1)^j k!(k-j)/j!,
         "recurrence": k (D_k + D_{k-1}),
         "derangement": D_{k+1}}
    """
    if k < 1:
        raise ValueError(f"Recurrence chain needs k >= 1, got {k}")
    alternating = sum((-1) ** j * (factorial(k) // factorial(j)) * (k - j) for j in range(k + 1))
    return {
        "alternating_sum": alternating,
        "recurrence": k * (derangement_recurrence(k) + derangement_recurrence(k - 1)),
        "derangement": derangement_recurrence(k + 1),
    }


def adjoint_multiplicity(k: int) -> int:
    """
    Multiplicity of the adjoint module in sl_n^(x)k.

    Raises:
        VerificationError: If the formula and the derangement chain disagree
    """
    value = multiplicity(k, Partition((1,)), Partition((1,)))
    if k >= 1:
        chain = recurrence_chain(k)
        if any(v != value for v in chain.values()):
            raise VerificationError(f"Adjoint multiplicity {value} disagrees with {chain} at k={k}")
    return value


def centralizer_dimension(k: int) -> int:
    """Dimension of End_g(sl_n^(x)k), read off as the invariants of the 2k-th power."""
    return invariants_dimension(2 * k)


def nonvanishing_pairs(k: int) -> List[PartitionPair]:
    """Pairs (λ, μ) with m^k_{λ,μ} > 0, in table order."""
    return [pair for pair, m in full_table(k).items() if m > 0]
