from pathlib import Path

import pytest

from homeomatch import Mapping, load_graph

DATA_DIR = Path(__file__).parent / "data"
EXPERIMENTS_DIR = Path(__file__).parent.parent / "experiments"


@pytest.fixture(scope="session")
def worked_pattern():
    """4-vertex pattern of the worked example used throughout the docs."""
    return load_graph(DATA_DIR / "worked_pattern.graph")


@pytest.fixture(scope="session")
def worked_data():
    """9-vertex data graph of the worked example; contains the pattern at l=h=2."""
    return load_graph(DATA_DIR / "worked_data.graph")


@pytest.fixture(scope="session")
def worked_mapping():
    """The known-good witness of the worked example at l=h=2.

    Node map 1->2, 2->8, 3->6, 4->4 with paths 2-1-8, 2-9-6, 2-3-4,
    8-7-6 and 6-5-4; validated against the brute-force oracle.
    """
    return Mapping.parse((DATA_DIR / "worked_mapping.txt").read_text())
