# data/serialization.py
"""Result documents, diagram files and the writers that emit them."""
import io
import json
import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, TextIO, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from algebra.walled_brauer import WalledDiagram

logger = logging.getLogger(__name__)


class DiagramDocument(BaseModel):
    """Diagram file format: {"k": int, "edges": [["T1", "B1"], ...]}."""

    k: int = Field(gt=0)
    edges: List[Tuple[str, str]]

    @field_validator("edges")
    @classmethod
    def _labels_are_strings(cls, edges):
        for edge in edges:
            if not all(isinstance(label, str) and label for label in edge):
                raise ValueError(f"edge {list(edge)} must name two vertices")
        return edges

    def to_diagram(self) -> WalledDiagram:
        """Validate the wall constraints and build the diagram."""
        return WalledDiagram.from_labels(self.k, self.edges)

    @classmethod
    def from_diagram(cls, diagram: WalledDiagram) -> "DiagramDocument":
        return cls(k=diagram.k, edges=[tuple(edge) for edge in diagram.labelled_edges()])


def read_diagram(source: str) -> WalledDiagram:
    """
    Read a diagram file.

    Args:
        source: Path to a diagram JSON file, optionally "path#key" to pick one
            diagram out of a file holding several

    Returns:
        The validated diagram

    Raises:
        DiagramError: If the diagram violates the wall constraints
        pydantic.ValidationError: If the document is malformed
    """
    path, _, key = source.partition("#")
    with open(Path(path), "r") as f:
        data = json.load(f)
    if key:
        data = data[key]
    logger.debug("Reading diagram from %s", source)
    return DiagramDocument(**data).to_diagram()


def write_diagram(diagram: WalledDiagram, path: Path) -> None:
    with open(path, "w") as f:
        f.write(DiagramDocument.from_diagram(diagram).model_dump_json(indent=2))


class CommandResult(BaseModel):
    """Outcome of one CLI command."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: str
    status: Literal["ok", "mismatch", "error"] = "ok"
    warnings: List[str] = Field(default_factory=list)
    payload: Dict[str, Any] = Field(default_factory=dict)
    elapsed_ms: float = 0.0
    tables: Dict[str, pd.DataFrame] = Field(default_factory=dict, exclude=True)

    @property
    def exit_code(self) -> int:
        return {"ok": 0, "mismatch": 1, "error": 2}[self.status]

    def document(self) -> Dict[str, Any]:
        """The stdout document; elapsed time is left out so reruns are byte-identical."""
        return {
            "command": self.command,
            "status": self.status,
            "warnings": list(self.warnings),
            "payload": decimal_strings(self.payload),
        }


def decimal_strings(value: Any) -> Any:
    """Render every integer and fraction inside value as a decimal string."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, dict):
        return {str(k): decimal_strings(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [decimal_strings(v) for v in value]
    return value


class ResultWriter(ABC):
    """Abstract base class for result sinks."""

    @abstractmethod
    def write(self, result: CommandResult, stream: TextIO) -> None:
        """Write a result document to the stream."""
        pass

    def render(self, result: CommandResult) -> str:
        buffer = io.StringIO()
        self.write(result, buffer)
        return buffer.getvalue()


class JsonResultWriter(ResultWriter):
    """Writes the result document as indented JSON."""

    def __init__(self, indent: int = 2):
        self.indent = indent

    def write(self, result: CommandResult, stream: TextIO) -> None:
        json.dump(result.document(), stream, indent=self.indent, ensure_ascii=False)
        stream.write("\n")


class CsvResultWriter(ResultWriter):
    """
    Writes each table of a result as a CSV block headed by "# <name>".

    Payload entries that are lists of flat records are written as tables
    when the result carries no explicit DataFrames.
    """

    def write(self, result: CommandResult, stream: TextIO) -> None:
        stream.write(f"# command={result.command} status={result.status}\n")
        for warning in result.warnings:
            stream.write(f"# warning: {warning}\n")
        tables = result.tables or self._tables_from_payload(result.payload)
        for name, frame in tables.items():
            stream.write(f"# {name}\n")
            frame.astype(str).to_csv(stream, lineterminator="\n")
        scalars = {k: v for k, v in result.payload.items() if not isinstance(v, (list, dict))}
        if scalars:
            stream.write("# summary\n")
            pd.DataFrame([decimal_strings(scalars)]).to_csv(stream, index=False, lineterminator="\n")

    @staticmethod
    def _tables_from_payload(payload: Dict[str, Any]) -> Dict[str, pd.DataFrame]:
        tables = {}
        for key, value in payload.items():
            if isinstance(value, list) and value and all(isinstance(row, dict) for row in value):
                tables[key] = pd.DataFrame(decimal_strings(value))
        return tables


def get_result_writer(fmt: str, **kwargs) -> ResultWriter:
    """
    Factory function to create the appropriate result writer.

    Args:
        fmt: Output format ("json" or "csv")
        **kwargs: Additional arguments for the writer

    Returns:
        Configured writer instance

    Raises:
        ValueError: If fmt is not recognized
    """
    if fmt.lower() == "json":
        return JsonResultWriter(indent=kwargs.get("indent", 2))
    elif fmt.lower() == "csv":
        return CsvResultWriter()
    else:
        raise ValueError(f"Unknown output format: {fmt}")
