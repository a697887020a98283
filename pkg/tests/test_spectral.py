import networkx as nx
import numpy as np
import pytest

from adrg.config import Tolerances
from adrg.errors import ClusterAmbiguity, SpectralError
from adrg.fixtures import f026a, f084a, petersen
from adrg.graph import distance_structure, parse_graph6, validate
from adrg.spectral import (
    crossed_from_walks,
    eigendecompose,
    idempotent_lagrange_check,
    multiplicities_from_walks,
    multiplicity_table,
    walk_table,
    walks_from_multiplicities,
)
from conftest import from_nx

EPS = Tolerances().match


def pipeline(g):
    g = validate(g)
    s = eigendecompose(g)
    ds = distance_structure(g)
    return g, s, ds, multiplicity_table(s, ds), walk_table(g, s, ds)


def test_c4_spectrum():
    _, s, *_ = pipeline(parse_graph6("Cl"))
    assert np.allclose(s.eigenvalues, [2, 0, -2], atol=1e-12)
    assert s.multiplicities.tolist() == [1, 2, 1] and s.d == 2


def test_petersen_spectrum():
    g, s, *_ = pipeline(petersen())
    ref = np.linalg.eigvalsh(nx.to_numpy_array(nx.petersen_graph()))
    assert np.allclose(s.eigenvalues, [3, 1, -2], atol=1e-12)
    assert s.multiplicities.tolist() == [1, 5, 4]
    assert np.allclose(np.sort(s.raw_eigenvalues), ref, atol=1e-12)
    assert idempotent_lagrange_check(s, g).max() <= EPS


def test_f026a_spectrum():
    _, s, ds, *_ = pipeline(f026a())
    assert s.d == 5 and s.is_symmetric(1e-9) and ds.bipartite


def test_k2_lagrange():
    g, s, *_ = pipeline(parse_graph6("A_"))
    assert idempotent_lagrange_check(s, g).max() <= 1e-12
    assert np.allclose(s.idempotents[0], 0.5)
    assert np.allclose(s.idempotents[1], np.eye(2) - 0.5)


def test_pi_and_phi():
    _, s, *_ = pipeline(petersen())
    assert np.allclose(s.pi, [2 * 5, 2 * 3, 5 * 3])
    assert np.allclose(s.phi, [10, -6, 15])


def test_cluster_ambiguity():
    g = validate(petersen())
    # gaps are 2 and 3; with eig_group 0.2 the band is (0.6, 6)
    with pytest.raises(ClusterAmbiguity):
        eigendecompose(g, 0.2)
    with pytest.raises(SpectralError):
        eigendecompose(g, 1.0)  # everything merges, so lambda_0 gets multiplicity 10


def test_k2_crossed():
    _, s, _, mt, wt = pipeline(parse_graph6("A_"))
    assert np.allclose(mt.crossed_entry(0, 1), [0.5, -0.5])
    assert walks_from_multiplicities(mt, s, 0, 1, 1) == pytest.approx(1)
    assert np.allclose(multiplicities_from_walks(wt, s, 0, 1), [0.5, -0.5])
    assert wt.constant[1][1] == 1 == s.pi[0] / 2


def test_c4_walks():
    _, s, ds, mt, wt = pipeline(parse_graph6("Cl"))
    assert wt.constant[2][2] == 2
    u, v = 0, 2
    assert ds.dist[u, v] == 2
    assert walks_from_multiplicities(mt, s, u, v, 2) == pytest.approx(2)
    assert abs(mt.crossed_entry(0, 1)[1]) < 1e-12  # eigenvalue 0


def test_petersen_round_trip():
    _, s, _, mt, wt = pipeline(petersen())
    assert walks_from_multiplicities(mt, s, 0, 1, 2) == pytest.approx(0, abs=1e-12)
    assert np.abs(crossed_from_walks(wt, s) - mt.crossed).max() <= EPS


def test_walk_regular_local_multiplicities():
    _, s, _, mt, _ = pipeline(petersen())
    assert np.allclose(mt.local, s.multiplicities / 10)


def test_f026a_distance_d_multiplicities():
    _, s, _, mt, _ = pipeline(f026a())
    expect = (-1.0) ** np.arange(6) * s.pi[0] / (26 * s.pi)
    assert np.allclose(mt.averages[5], expect, atol=1e-10)
    assert mt.spreads[5].max() <= EPS


def test_f084a_geodesic_walks():
    _, s, ds, _, wt = pipeline(f084a())
    assert wt.is_constant(3, 3)
    assert all(wt.is_constant(h, h) for h in range(ds.D + 1))


def test_walk_table_accessors():
    _, _, ds, _, wt = pipeline(f026a())
    assert wt.profile(0, 0)[:3] == (1, 0, 3)
    assert wt.by_distance(3, 3) == wt.distinct[(3, 3)] and len(wt.distinct[(3, 3)]) > 1
    assert sum(wt.averages[1][1:2]) == 1


def test_large_degree_uses_exact_integers():
    g = from_nx(nx.complete_graph(40))
    _, s, ds, _, wt = pipeline(g)
    assert wt.max_length == 1
    big = walk_table(validate(g), s, ds, max_length=14)
    assert big.powers[14].dtype == object
    assert int(big.powers[14].sum(axis=1)[0]) == 39**14
