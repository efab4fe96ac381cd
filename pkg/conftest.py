# conftest.py
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from config import FIGURE_FIXTURE_DIR  # noqa: E402
from data.serialization import read_diagram  # noqa: E402
from domain.partitions import StandardTableau  # noqa: E402


@pytest.fixture
def figure_diagrams():
    """(upper, lower, product) of the k=5 composition example."""
    path = FIGURE_FIXTURE_DIR / "figure_product.json"
    return tuple(read_diagram(f"{path}#{key}") for key in ("upper", "lower", "product"))


@pytest.fixture
def contraction_c31():
    return read_diagram(str(FIGURE_FIXTURE_DIR / "contraction_c31.json"))


@pytest.fixture
def tableau_15_4():
    return StandardTableau.from_rows([[1, 5], [4]])


@pytest.fixture
def small_tableaux():
    return [
        StandardTableau.from_rows([[1, 2], [3]]),
        StandardTableau.from_rows([[1, 3], [2]]),
        StandardTableau.from_rows([[1, 2, 3]]),
        StandardTableau.from_rows([[1], [2], [3]]),
    ]
