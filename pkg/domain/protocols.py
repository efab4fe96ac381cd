# domain/protocols.py
from typing import Any, Dict, List, Protocol


class Recordable(Protocol):
    """Protocol for anything that can be flattened into one output row."""

    def to_record(self) -> Dict[str, Any]:
        """Return a JSON-ready mapping of the object's fields."""
        ...


class VerificationResult(Protocol):
    """Protocol for the outcome of a verification suite."""

    suite: str
    checks: List[Recordable]

    @property
    def passed(self) -> bool:
        """Whether every check passed."""
        ...

    def get_summary(self) -> Dict[str, Any]:
        """
        Get a summary of the checks.

        Returns:
            Mapping with the suite name, pass/fail counts and failing check names
        """
        ...
