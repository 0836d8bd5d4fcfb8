import pytest

from pathgraph.oracle import Instance
from pathgraph.treeprep import PathSet, RawCliqueTree, prepare

# six-node tree: 1 -> (2, 6), 2 -> (3, 5), 3 -> 4; pre-order labels equal the input labels
RUNNING_PARENT = (0, 0, 1, 2, 3, 2, 1)   # index 0 unused
RUNNING_PATHS = [(1, 1), (2, 4), (5, 6)]


@pytest.fixture
def running_tree():
    return RawCliqueTree(6, RUNNING_PARENT)


@pytest.fixture
def running_pt(running_tree):
    return prepare(running_tree)


@pytest.fixture
def running_ps(running_pt):
    return PathSet.from_original(running_pt, RUNNING_PATHS)


@pytest.fixture
def running_instance(running_tree):
    return Instance(running_tree, list(RUNNING_PATHS))
