"""Shared fixtures: Grassmann graphs are expensive to build, so each
parameter triple is constructed at most once per test session."""

import pytest

from drglines.graphcore import build_grassmann_graph


@pytest.fixture(scope="session")
def g422():
    return build_grassmann_graph(4, 2, 2)


@pytest.fixture(scope="session")
def g522():
    return build_grassmann_graph(5, 2, 2)


@pytest.fixture(scope="session")
def g622():
    return build_grassmann_graph(6, 2, 2)


@pytest.fixture(scope="session")
def g632():
    return build_grassmann_graph(6, 3, 2)


@pytest.fixture(scope="session")
def g732():
    return build_grassmann_graph(7, 3, 2)


@pytest.fixture(scope="session")
def g832():
    return build_grassmann_graph(8, 3, 2)


@pytest.fixture(scope="session")
def g842():
    return build_grassmann_graph(8, 4, 2)


@pytest.fixture(scope="session")
def g633():
    return build_grassmann_graph(6, 3, 3)
