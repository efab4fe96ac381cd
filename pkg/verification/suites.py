# verification/suites.py
"""
Invariant suites that exercise each module at chosen (n, k).

Every suite records one CheckResult per identity it checks, plus a few
metrics (ranks, counts) that the CLI reports alongside.
"""
import itertools
import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Optional

from algebra import tensor_model as tm
from algebra import walled_brauer as wb
from algebra.symmetric_group_algebra import (
    GroupAlgebraElement,
    Permutation,
    essential_idempotent_constant,
    young_symmetrizer,
)
from combinatorics import multiplicity as mult
from combinatorics.derangements import (
    derangement_brute_force,
    derangement_incl_excl,
    derangement_recurrence,
)
from config import FIGURE_FIXTURE_DIR, get_settings
from data.serialization import read_diagram
from domain.errors import VerificationError
from domain.partitions import (
    StandardTableau,
    enumerate_partitions,
    enumerate_standard_tableaux,
    hook_product,
    num_standard_tableaux,
)

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """One verified identity."""

    name: str
    passed: bool
    detail: str = ""

    def to_record(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteReport:
    """Checks and metrics gathered by one suite run."""

    suite: str
    params: Dict[str, Any]
    checks: List[CheckResult] = field(default_factory=list)
    metrics: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def get_summary(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "params": self.params,
            "checks": len(self.checks),
            "failed": [check.name for check in self.checks if not check.passed],
            "metrics": self.metrics,
        }


class InvariantSuite(ABC):
    """
    Base class for a suite of invariant checks.
    """

    name = "suite"

    def __init__(self, n: int = 4, k: int = 2, seed: Optional[int] = None, samples: Optional[int] = None):
        """
        Initialize the suite.

        Args:
            n: Dimension of V (where the suite needs one)
            k: Tensor power or wall position
            seed: Seed for the random spot checks; defaults to settings.random_seed
            samples: Number of random samples per spot check; defaults to settings.spot_checks
        """
        settings = get_settings()
        self.n = n
        self.k = k
        self.rng = random.Random(settings.random_seed if seed is None else seed)
        self.samples = settings.spot_checks if samples is None else samples
        self.report = SuiteReport(self.name, {"n": n, "k": k})

    def log_check(self, name: str, passed: bool, detail: str = ""):
        """
        Record a check.

        Args:
            name: Identity being checked
            passed: Outcome
            detail: Values behind the outcome
        """
        self.report.checks.append(CheckResult(name, bool(passed), detail))
        if passed:
            logger.debug("[%s] %s ok %s", self.name, name, detail)
        else:
            logger.warning("[%s] %s FAILED %s", self.name, name, detail)

    def run(self) -> SuiteReport:
        """Run every check and return the report."""
        start_time = datetime.now()
        logger.info("Running %s suite with n=%d, k=%d", self.name, self.n, self.k)
        self._run_checks()
        self.report.metadata["duration_seconds"] = (datetime.now() - start_time).total_seconds()
        return self.report

    @abstractmethod
    def _run_checks(self) -> None:
        pass


class PartitionsSuite(InvariantSuite):
    """Partitions, derangements and the closed-form multiplicities."""

    name = "partitions"

    def _run_checks(self):
        for r in range(7):
            shapes = enumerate_partitions(r)
            self.log_check(
                f"hook formula r={r}",
                all(num_standard_tableaux(p) * hook_product(p) == factorial(r) for p in shapes),
            )
            self.log_check(
                f"sum of f^2 r={r}",
                sum(num_standard_tableaux(p) ** 2 for p in shapes) == factorial(r),
            )
            self.log_check(
                f"tableau enumeration r={r}",
                all(len(enumerate_standard_tableaux(p, range(1, r + 1))) == num_standard_tableaux(p) for p in shapes),
            )

        self.log_check(
            "derangement methods agree k<=64",
            all(derangement_incl_excl(k) == derangement_recurrence(k) for k in range(65)),
        )
        self.log_check(
            "derangements by brute force k<=8",
            all(derangement_incl_excl(k) == derangement_brute_force(k) for k in range(9)),
        )

        top = max(self.k, 1)
        for k in range(1, top + 1):
            table = mult.full_table(k)
            self.log_check(
                f"hook form equals formula k={k}",
                all(mult.multiplicity_hook_form(k, lam, mu) == m for (lam, mu), m in table.items()),
            )
            self.log_check(
                f"symmetry k={k}",
                all(table[(mu, lam)] == m for (lam, mu), m in table.items()),
            )
            checksum = table.checksum
            self.log_check(
                f"checksum equals D_2k k={k}",
                checksum == derangement_recurrence(2 * k),
                f"{checksum} vs {derangement_recurrence(2 * k)}",
            )
            self.log_check(f"invariants equal D_k k={k}", mult.invariants_dimension(k) == derangement_recurrence(k))
            self.log_check(f"adjoint equals D_k+1 k={k}", mult.adjoint_multiplicity(k) == derangement_recurrence(k + 1))
            self.log_check(
                f"pattern count k={k}",
                all(
                    mult.admissible_pattern_count(k, r) == sum(p.admissible for p in tm.enumerate_patterns(k, r))
                    for r in range(k + 1)
                ),
            )
        self.report.metrics["checksum"] = mult.checksum_sum_of_squares(top)


def _recomposes(diagram: wb.WalledDiagram) -> bool:
    try:
        wb.factor_diagram(diagram)
    except VerificationError:
        return False
    return True


class BrauerSuite(InvariantSuite):
    """The walled Brauer algebra B_{k,k}(n)."""

    name = "brauer"

    def _random_element(self, diagrams: List[wb.WalledDiagram]) -> wb.DiagramAlgebraElement:
        terms = {self.rng.choice(diagrams): Fraction(self.rng.randint(-3, 3), self.rng.randint(1, 3)) for _ in range(2)}
        return wb.DiagramAlgebraElement(self.k, self.n, terms)

    def _run_checks(self):
        n, k = self.n, self.k
        diagrams = wb.enumerate_diagrams(k)
        clean = [d for d in diagrams if not wb.has_forbidden_pair(d)]
        self.log_check("diagram count (2k)!", len(diagrams) == factorial(2 * k) == len(set(diagrams)))
        self.log_check("no forbidden pair count D_2k", len(clean) == derangement_recurrence(2 * k), str(len(clean)))
        images = [wb.flip_to_permutation(d) for d in clean]
        self.log_check(
            "flips send clean diagrams onto derangements",
            len(set(images)) == len(images) and all(not sigma.fixed_points() for sigma in images),
        )
        self.log_check(
            "flips invert",
            all(wb.diagram_from_permutation(wb.flip_to_permutation(d)) == d for d in diagrams),
        )

        b = wb.b_idempotent(k, n)
        self.log_check("b squared is b", b * b == b)
        contractions = [wb.contraction_element(k, j, n) for j in range(1, k + 1)]
        self.log_check("c_j idempotent", all(c * c == c for c in contractions))
        self.log_check(
            "c_i c_j commute",
            all(x * y == y * x for x, y in itertools.product(contractions, repeat=2)),
        )
        self.log_check("b c_j vanishes", all((b * c).is_zero() and (c * b).is_zero() for c in contractions))

        def kills(diagram: wb.WalledDiagram) -> bool:
            element = wb.DiagramAlgebraElement.from_diagram(diagram, n)
            top = [(a, c) for a, c in diagram.top_horizontal() if c == a + k]
            bottom = [(a, c) for a, c in diagram.bottom_horizontal() if c == a + k]
            return (not top or (b * element).is_zero()) and (not bottom or (element * b).is_zero())

        self.log_check("b kills forbidden pairs", all(kills(d) for d in diagrams if wb.has_forbidden_pair(d)))

        associative = True
        for _ in range(self.samples):
            x, y, z = (self._random_element(diagrams) for _ in range(3))
            associative &= (x * y) * z == x * (y * z)
        self.log_check("associativity", associative, f"{self.samples} random triples")

        self.log_check("factorization recomposes", all(_recomposes(d) for d in diagrams))

        cycles, product = wb.compose_diagrams(
            read_diagram(f"{FIGURE_FIXTURE_DIR / 'figure_product.json'}#upper"),
            read_diagram(f"{FIGURE_FIXTURE_DIR / 'figure_product.json'}#lower"),
        )
        expected = read_diagram(f"{FIGURE_FIXTURE_DIR / 'figure_product.json'}#product")
        self.log_check("figure product", cycles == 1 and product == expected, f"{cycles} middle loop(s)")

        if n >= 2 * k:
            rank = wb.sandwich_basis_rank(k, n)
            self.report.metrics["sandwich_rank"] = rank
            self.log_check("sandwich rank D_2k", rank == derangement_recurrence(2 * k), str(rank))


class YoungSuite(InvariantSuite):
    """Young symmetrizers in the group algebra of S_k."""

    name = "young"

    def _random_element(self, k: int) -> GroupAlgebraElement:
        perms = list(itertools.permutations(range(1, k + 1)))
        terms = {Permutation(self.rng.choice(perms)): Fraction(self.rng.randint(-2, 2)) for _ in range(3)}
        return GroupAlgebraElement(k, terms)

    def _run_checks(self):
        constants = {}
        for r in range(1, self.k + 1):
            for shape in enumerate_partitions(r):
                expected = Fraction(factorial(r), num_standard_tableaux(shape))
                for tableau in enumerate_standard_tableaux(shape, range(1, r + 1)):
                    m = essential_idempotent_constant(tableau)
                    constants[str(tableau)] = m
                    self.log_check(f"y_T^2 = m y_T for {tableau}", m == expected, f"m={m}")
        self.report.metrics["constants"] = constants

        example = StandardTableau.from_rows([[1, 5], [4]])
        identity = GroupAlgebraElement.identity(5)
        expected = (identity + GroupAlgebraElement.from_permutation(Permutation.parse("(1 5)", 5))) * (
            identity - GroupAlgebraElement.from_permutation(Permutation.parse("(1 4)", 5))
        )
        self.log_check("worked example y_T", young_symmetrizer(example, 5) == expected)

        degree = min(max(self.k, 2), 5)
        associative = True
        for _ in range(self.samples):
            x, y, z = (self._random_element(degree) for _ in range(3))
            associative &= (x * y) * z == x * (y * z)
        self.log_check("associativity", associative, f"degree {degree}")

        perms = list(itertools.permutations(range(1, degree + 1)))
        homomorphism = True
        for _ in range(self.samples):
            sigma, tau = Permutation(self.rng.choice(perms)), Permutation(self.rng.choice(perms))
            homomorphism &= (sigma * tau).sign == sigma.sign * tau.sign
        self.log_check("sign is a homomorphism", homomorphism)


class TensorSuite(InvariantSuite):
    """Operator identities on M = V^(x)k (x) (V*)^(x)k."""

    name = "tensor"

    def _random_indices(self) -> List[tm.SimpleTensorIndex]:
        n, k = self.n, self.k
        return [
            tm.SimpleTensorIndex(
                tuple(self.rng.randint(1, n) for _ in range(k)),
                tuple(self.rng.randint(1, n) for _ in range(k)),
            )
            for _ in range(self.samples)
        ]

    def _commutes(self, x: tm.TensorOperator, y: tm.TensorOperator, indices) -> bool:
        return (x @ y).agrees_with(y @ x, indices)

    def _run_checks(self):
        n, k = self.n, self.k
        tm.check_dimension(n, k)
        slots = range(1, k + 1)
        contractions = {(i, j): tm.contraction_operator(n, k, i, j) for i in slots for j in slots}
        projectors = [tm.projector_p(n, k, j) for j in slots]
        e = tm.e_operator(n, k)

        self.log_check(
            "c_ij^2 = n c_ij",
            all((c @ c).agrees_with(n * c) for c in contractions.values()),
        )
        self.log_check("p_j idempotent", all((p @ p).agrees_with(p) for p in projectors))
        self.log_check(
            "p_i p_j commute",
            all(self._commutes(p, q, None) for p, q in itertools.combinations(projectors, 2)),
        )
        self.log_check("e idempotent", (e @ e).agrees_with(e))

        rank = e.rank()
        self.report.metrics["rank_e"] = rank
        self.log_check("rank e = (n^2-1)^k", rank == (n * n - 1) ** k, str(rank))
        kernel = tm.kernel_intersection_dimension(n, k)
        self.log_check("image e = intersection of kernels", kernel == rank and all((p @ e).is_zero() for p in projectors))
        ranks = tm.projector_decomposition_ranks(n, k)
        self.log_check(
            "projector decomposition",
            sum(ranks.values()) == n ** (2 * k) and all(v == (n * n - 1) ** len(J) for J, v in ranks.items()),
        )

        indices = self._random_indices()
        perms = list(itertools.permutations(range(1, k + 1)))
        sigma = Permutation(self.rng.choice(perms))
        tau = Permutation(self.rng.choice(perms))
        place = tm.place_permutation_operator(n, k, sigma, tau)
        commuting = True
        for a, b in itertools.product(range(1, n + 1), repeat=2):
            action = tm.lie_action(n, k, a, b)
            commuting &= self._commutes(action, e, indices) and self._commutes(action, place, indices)
            commuting &= all(self._commutes(action, c, indices) for c in contractions.values())
        self.log_check("commutes with gl_n", commuting)

        identity = Permutation.identity(k)
        law = tm.place_permutation_operator(n, k, sigma * tau, identity).agrees_with(
            tm.place_permutation_operator(n, k, sigma, identity) @ tm.place_permutation_operator(n, k, tau, identity),
            indices,
        )
        self.log_check("place permutations compose", law)

        self.log_check(
            "contraction diagrams map to c_jj",
            all(tm.diagram_to_operator(wb.contraction_diagram(k, j), n).agrees_with(contractions[(j, j)]) for j in slots),
        )
        diagrams = wb.enumerate_diagrams(k)
        homomorphism = True
        for _ in range(self.samples):
            d1, d2 = self.rng.choice(diagrams), self.rng.choice(diagrams)
            cycles, d = wb.compose_diagrams(d1, d2)
            left = tm.diagram_to_operator(d1, n) @ tm.diagram_to_operator(d2, n)
            homomorphism &= left.agrees_with(n ** cycles * tm.diagram_to_operator(d, n), indices)
        self.log_check("diagram representation respects products", homomorphism)

        if n < 2 * k:
            self.log_check("maximal vectors skipped", True, f"n={n} < 2k={2 * k}")
            return

        vanishing = True
        for T, Tstar, pattern in tm.iterate_highest_weight_data(k):
            if not pattern.admissible:
                y = tm.apply_y(n, k, T, Tstar, pattern)
                vanishing &= (e @ y).is_zero() and (y @ e).is_zero()
        self.log_check("e y = 0 = y e for inadmissible patterns", vanishing)

        reports = [tm.verify_maximal_vector(n, k, *data) for data in tm.iterate_highest_weight_data(k)]
        self.report.metrics["maximal_vectors"] = [r.to_record() for r in reports]
        self.log_check("maximal vectors vanish exactly on inadmissible patterns", all(r.consistent for r in reports))
        tally: Dict[Any, int] = {}
        for report in reports:
            key = (report.lam, report.mu)
            tally[key] = tally.get(key, 0) + int(report.passed)
        table = mult.full_table(k)
        self.report.metrics["tallies"] = {f"{lam}|{mu}": count for (lam, mu), count in tally.items()}
        self.log_check("tallies equal multiplicities", all(tally.get(pair, 0) == m for pair, m in table.items()))


SUITES = {
    "partitions": PartitionsSuite,
    "brauer": BrauerSuite,
    "young": YoungSuite,
    "tensor": TensorSuite,
}


def get_suite(name: str, **kwargs) -> InvariantSuite:
    """
    Factory function to create a suite by name.

    Raises:
        ValueError: If name is not recognized
    """
    try:
        return SUITES[name.lower()](**kwargs)
    except KeyError:
        raise ValueError(f"Unknown suite: {name}; choose from {', '.join(SUITES)} or all")


def run_suites(name: str, n: int = 4, k: int = 2) -> List[SuiteReport]:
    """Run one suite, or every suite for name "all"."""
    names = list(SUITES) if name.lower() == "all" else [name]
    return [get_suite(suite, n=n, k=k).run() for suite in names]
