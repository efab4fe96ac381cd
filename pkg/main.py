# main.py
"""Command-line front end: tables, oracle runs and invariant suites."""
import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

from algebra.walled_brauer import compose_diagrams
from combinatorics.derangements import derangement_recurrence, derangement_table
from combinatorics.multiplicity import full_table, multiplicity, multiplicity_hook_form
from config import get_settings
from data.serialization import CommandResult, DiagramDocument, get_result_writer, read_diagram, write_diagram
from domain.errors import VerificationError
from domain.protocols import VerificationResult
from domain.partitions import Partition
from oracle.character_oracle import compare_with_formula, decompose, pair_to_weight, weyl_dimension
from verification.suites import SUITES, run_suites

logger = logging.getLogger(__name__)

STABLE_RANGE_NOTE = "multiplicities from the closed formula hold for n >= 2k"


class UsageError(ValueError):
    """Raised instead of exiting when the command line is malformed."""


class CliArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def cmd_derangements(max_k: int) -> CommandResult:
    """D_0..D_max_k by inclusion-exclusion and by the recurrence."""
    if max_k < 0:
        raise UsageError(f"--k must be nonnegative, got {max_k}")
    rows = derangement_table(max_k)
    status = "ok" if all(row["agree"] for row in rows) else "mismatch"
    return CommandResult(command="derangements", status=status, payload={"max_k": max_k, "rows": rows})


def cmd_table(k: int) -> CommandResult:
    """Full multiplicity table for sl_n^(x)k with the D_2k checksum."""
    if k < 1:
        raise UsageError(f"--k must be positive, got {k}")
    table = full_table(k)
    expected = derangement_recurrence(2 * k)
    payload = {
        "k": k,
        "entries": table.to_records(),
        "checksum": table.checksum,
        "expected_checksum": expected,
    }
    tables = {f"r={r}": frame for r, frame in table.blocks().items()}
    return CommandResult(
        command="table",
        status="ok" if table.checksum == expected else "mismatch",
        warnings=[STABLE_RANGE_NOTE],
        payload=payload,
        tables=tables,
    )


def cmd_oracle(n: int, k: int, compare: bool) -> CommandResult:
    """Decompose sl_n^(x)k from characters, optionally against the formula."""
    if n < 2 or k < 0:
        raise UsageError(f"Need n >= 2 and k >= 0, got n={n}, k={k}")
    decomposition = decompose(n, k)
    rows = []
    for pair, m in decomposition.items():
        dimension = weyl_dimension(pair_to_weight(pair, n))
        rows.append({"lambda": str(pair.lam), "mu": str(pair.mu), "multiplicity": m, "dimension": dimension})
    total = sum(row["multiplicity"] * row["dimension"] for row in rows)
    payload = {
        "n": n,
        "k": k,
        "decomposition": rows,
        "dimension_total": total,
        "expected_dimension": (n * n - 1) ** k,
    }
    status = "ok" if total == payload["expected_dimension"] else "mismatch"
    warnings = []
    if compare:
        report = compare_with_formula(n, k, decomposition)
        payload["comparison"] = report.rows
        payload["mismatches"] = len(report.mismatches)
        payload["stable"] = report.stable
        if report.mismatches:
            if report.stable:
                status = "mismatch"
            else:
                warnings.append(f"n={n} < 2k={2 * k}: differences from the formula are expected")
    return CommandResult(command="oracle", status=status, warnings=warnings, payload=payload)


def cmd_verify(suite: str, n: int, k: int) -> CommandResult:
    """Run one invariant suite, or all of them."""
    reports: List[VerificationResult] = run_suites(suite, n=n, k=k)
    checks = [
        {"suite": report.suite, **check.to_record()}
        for report in reports
        for check in report.checks
    ]
    payload = {
        "suite": suite,
        "summaries": [report.get_summary() for report in reports],
        "checks": checks,
    }
    status = "ok" if all(report.passed for report in reports) else "mismatch"
    return CommandResult(command="verify", status=status, payload=payload)


def cmd_multiplicity(k: int, lam: Partition, mu: Partition) -> CommandResult:
    """One table cell, by the formula and by the hook form."""
    direct = multiplicity(k, lam, mu)
    hook = multiplicity_hook_form(k, lam, mu)
    payload = {"k": k, "lambda": str(lam), "mu": str(mu), "multiplicity": direct, "hook_form": hook}
    return CommandResult(
        command="multiplicity",
        status="ok" if direct == hook else "mismatch",
        warnings=[STABLE_RANGE_NOTE],
        payload=payload,
    )


def cmd_compose(upper: str, lower: str, output: Optional[Path] = None) -> CommandResult:
    """Stack two diagram files and report the product and its middle loops."""
    cycles, product = compose_diagrams(read_diagram(upper), read_diagram(lower))
    document = DiagramDocument.from_diagram(product)
    payload = {"cycles": cycles, "scalar": f"n^{cycles}", "product": document.model_dump()}
    if output is not None:
        write_diagram(product, output)
        payload["output"] = str(output)
    return CommandResult(command="compose", payload=payload)


def build_parser() -> CliArgumentParser:
    settings = get_settings()
    parser = CliArgumentParser(prog="sln-adjoint", description="Tensor powers of the adjoint module of sl_n")
    parser.add_argument("--format", choices=["json", "csv"], default=settings.default_format)
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=settings.log_level)
    # Also accepted after the subcommand name.
    common = CliArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=argparse.SUPPRESS)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    derangements = commands.add_parser("derangements", parents=[common], help="derangement numbers by two methods")
    derangements.add_argument("--k", type=int, default=8, help="largest k")

    table = commands.add_parser("table", parents=[common], help="multiplicity table m^k_{λ,μ}")
    table.add_argument("--k", type=int, default=4)

    oracle = commands.add_parser("oracle", parents=[common], help="character oracle decomposition")
    oracle.add_argument("--n", type=int, required=True)
    oracle.add_argument("--k", type=int, required=True)
    oracle.add_argument("--compare", action="store_true", help="compare with the closed formula")

    verify = commands.add_parser("verify", parents=[common], help="run invariant suites")
    verify.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    verify.add_argument("--n", type=int, default=4)
    verify.add_argument("--k", type=int, default=2)

    single = commands.add_parser("multiplicity", parents=[common], help="one multiplicity by both formulas")
    single.add_argument("--k", type=int, required=True)
    single.add_argument("--lambda", dest="lam", type=Partition.parse, required=True)
    single.add_argument("--mu", type=Partition.parse, required=True)

    compose = commands.add_parser("compose", parents=[common], help="compose two diagram files (path or path#key)")
    compose.add_argument("upper")
    compose.add_argument("lower")
    compose.add_argument("--output", type=Path, help="also write the product diagram to this file")
    return parser


def dispatch(args: argparse.Namespace) -> CommandResult:
    if args.command == "derangements":
        return cmd_derangements(args.k)
    if args.command == "table":
        return cmd_table(args.k)
    if args.command == "oracle":
        return cmd_oracle(args.n, args.k, args.compare)
    if args.command == "verify":
        return cmd_verify(args.suite, args.n, args.k)
    if args.command == "multiplicity":
        return cmd_multiplicity(args.k, args.lam, args.mu)
    return cmd_compose(args.upper, args.lower, args.output)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the application; returns the exit code."""
    fmt = get_settings().default_format
    command = "unknown"
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        fmt, command = args.format, args.command
        logging.basicConfig(
            stream=sys.stderr,
            level=getattr(logging, args.log_level),
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )
        result = dispatch(args)
    except VerificationError as e:
        logger.error("Internal check failed: %s", e)
        result = CommandResult(command=command, status="mismatch", payload={"error": str(e)})
    except (ValueError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        result = CommandResult(command=command, status="error", payload={"error": str(e)})
    result.elapsed_ms = (time.perf_counter() - start) * 1000
    print(f"elapsed_ms={result.elapsed_ms:.1f}", file=sys.stderr)
    sys.stdout.write(get_result_writer(fmt).render(result))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
