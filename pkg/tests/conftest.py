import networkx as nx
import numpy as np
import pytest

from adrg.fixtures import census_graph, census_source, drg_corpus
from adrg.graph import Graph

ACCEPTANCE_LINES: list[str] = []


def from_nx(g, name=None) -> Graph:
    return Graph(nx.to_numpy_array(g, dtype=np.int8, nodelist=sorted(g.nodes)), name)


@pytest.fixture(scope="session")
def corpus():
    return {g.name: g for g in drg_corpus()}


@pytest.fixture(scope="session")
def census():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = census_graph(name)
        return cache[name]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for name in ("F026A", "F084A", "F168F", "F234B"):
            terminalreporter.write_line(f"{name} source: {census_source(name)}")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
