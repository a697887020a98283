"""Property suite: every invariant on random connected cubic graphs and on
the named corpus."""

import networkx as nx
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from adrg.classify import GraphAnalysis
from adrg.fixtures import BUILDERS, drg_corpus
from conftest import from_nx
from invariants import all_invariants


def random_cubic(n, seed):
    h = nx.random_regular_graph(3, n, seed=seed)
    assume(nx.is_connected(h))
    return from_nx(h, f"cubic-{n}-{seed}")


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(4, 12).map(lambda k: 2 * k), st.integers(0, 2**31 - 1))
def test_random_cubic_invariants(n, seed):
    an = GraphAnalysis(random_cubic(n, seed))
    assert all_invariants(an) == []


@pytest.mark.parametrize("g", drg_corpus(), ids=lambda g: g.name)
def test_corpus_invariants(g):
    assert all_invariants(GraphAnalysis(g)) == []


@pytest.mark.parametrize("name", list(BUILDERS))
def test_census_invariants(census, name):
    assert all_invariants(GraphAnalysis(census(name))) == []


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(4, 10), (4, 12), (5, 12), (6, 14), (3, 26)]), st.integers(0, 2**31 - 1))
def test_other_degrees(shape, seed):
    k, n = shape
    h = nx.random_regular_graph(k, n, seed=seed)
    assume(nx.is_connected(h))
    assert all_invariants(GraphAnalysis(from_nx(h))) == []


def test_known_families():
    graphs = [
        nx.circulant_graph(12, [1, 5]), nx.circulant_graph(13, [1, 5]), nx.circulant_graph(10, [1, 2]),
        nx.hypercube_graph(4), nx.dodecahedral_graph(), nx.heawood_graph(), nx.desargues_graph(),
        nx.moebius_kantor_graph(), nx.truncated_tetrahedron_graph(), nx.complete_graph(6),
        nx.paley_graph(13).to_undirected(), nx.cubical_graph(),
    ]
    for h in graphs:
        h = nx.convert_node_labels_to_integers(nx.Graph(h))
        assert all_invariants(GraphAnalysis(from_nx(h))) == [], h
