"""Derangement numbers D_k by two independent methods."""
import itertools
from math import factorial
from typing import List


def derangement_incl_excl(k: int) -> int:
    """
    Count derangements of k symbols by inclusion-exclusion.

    D_k = sum_{j=0}^{k} (-1)^j k!/j!, evaluated in exact integers.

    Args:
        k: Number of symbols (k >= 0)

    Returns:
        D_k
    """
    if k < 0:
        raise ValueError(f"Derangements need k >= 0, got {k}")
    return sum((-1) ** j * (factorial(k) // factorial(j)) for j in range(k + 1))


def derangement_recurrence(k: int) -> int:
    """
    Count derangements with D_0 = 1, D_1 = 0, D_{m+1} = m (D_m + D_{m-1}).

    D_0 = 1 because the empty permutation has no fixed points; the
    recurrence forces it (D_2 = 1 * (D_1 + D_0) = 1).
    """
    if k < 0:
        raise ValueError(f"Derangements need k >= 0, got {k}")
    previous, current = 1, 0
    if k == 0:
        return previous
    for m in range(1, k):
        previous, current = current, m * (current + previous)
    return current


def derangement_brute_force(k: int) -> int:
    """Count fixed-point-free permutations of range(k) one by one."""
    return sum(
        1 for sigma in itertools.permutations(range(k))
        if all(sigma[i] != i for i in range(k))
    )


def derangement_table(max_k: int) -> List[dict]:
    """
    Tabulate D_0..D_max_k by both methods.

    Returns:
        Rows {"k", "incl_excl", "recurrence", "agree"}
    """
    rows = []
    for k in range(max_k + 1):
        a = derangement_incl_excl(k)
        b = derangement_recurrence(k)
        rows.append({"k": k, "incl_excl": a, "recurrence": b, "agree": a == b})
    return rows
