import os

import hypothesis
import pytest

from utils.graph_core import Instance, MultiGraph

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def triangle() -> MultiGraph:
    return MultiGraph(edges=[(1, 2), (2, 3), (1, 3)])


@pytest.fixture
def k4() -> MultiGraph:
    return MultiGraph(edges=[(u, v) for u in range(1, 5) for v in range(u + 1, 5)])


@pytest.fixture
def butterfly() -> MultiGraph:
    """Two triangles sharing only vertex 1"""
    return MultiGraph(edges=[(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5)])


@pytest.fixture
def k4_instance(k4) -> Instance:
    return Instance(k4, {v: 1 for v in k4.vertices()}, 2)
