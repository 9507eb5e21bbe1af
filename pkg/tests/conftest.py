import random

import pytest

from graphfp import DirectedGraph
from graphfp.verify import random_graph, standard_graphs


@pytest.fixture(scope="session")
def graphs() -> dict[str, DirectedGraph]:
    return standard_graphs()


@pytest.fixture(scope="session")
def g1(graphs) -> DirectedGraph:
    """One vertex, one loop."""
    return graphs["loop"]


@pytest.fixture(scope="session")
def g2(graphs) -> DirectedGraph:
    """Two vertices joined by a single edge."""
    return graphs["edge"]


@pytest.fixture(scope="session")
def two_loops(graphs) -> DirectedGraph:
    return graphs["two_loops"]


@pytest.fixture(scope="session")
def loops_plus_edge(graphs) -> DirectedGraph:
    return graphs["loops_plus_edge"]


@pytest.fixture(scope="session")
def quad(graphs) -> DirectedGraph:
    """Fixed random 4-vertex, 6-edge multigraph."""
    return graphs["quad"]


@pytest.fixture(scope="session")
def tri(graphs) -> DirectedGraph:
    """Fixed random 3-vertex, 4-edge multigraph."""
    return graphs["tri"]


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
