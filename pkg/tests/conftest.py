import pathlib
import sys

import numpy as np
import pytest

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))

import overcom as oc

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

# two triangles joined by a single bridge edge 2-3
BARBELL_EDGES = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]


@pytest.fixture(scope="session")
def barbell():
    return oc.graph_from_edges(BARBELL_EDGES)


@pytest.fixture(scope="session")
def barbell_split(barbell):
    return oc.Partition.from_labels(np.array([0, 0, 0, 1, 1, 1]))


@pytest.fixture(scope="session")
def karate():
    return oc.load_edge_list(DATA / "karate.txt")


@pytest.fixture(scope="session")
def _warm():
    oc.warmup()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
