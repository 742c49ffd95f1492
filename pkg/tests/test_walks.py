import numpy as np
import pytest

import overcom as oc
from overcom import ConvergenceError

import reference as ref


def test_walk_profile_t0_is_unit():
    g = oc.graph_from_edges([(0, 1), (1, 2), (2, 0)], directed=True)
    x = oc.walk_profile(g, 1, 0)
    assert x.tolist() == [0.0, 1.0, 0.0]


def test_walk_profile_cycle_one_step():
    g = oc.graph_from_edges([(0, 1), (1, 2), (2, 0)], directed=True)
    assert oc.walk_profile(g, 0, 1).tolist() == [0.0, 1.0, 0.0]
    assert oc.walk_profile(g, 0, 3).tolist() == [1.0, 0.0, 0.0]


def test_walk_profile_matches_dense_power(rng):
    for _ in range(10):
        n = int(rng.integers(4, 25))
        g = ref.random_connected(rng, n, directed=bool(rng.integers(2)))
        a = ref.dense_adjacency(g)
        t = int(rng.integers(1, 6))
        pt = np.linalg.matrix_power(ref.dense_transition(a), t)
        u = int(rng.integers(n))
        assert np.abs(oc.walk_profile(g, u, t) - pt[u]).max() < 1e-12


def test_walk_profile_sink_error():
    g = oc.graph_from_edges([(0, 1)], directed=True)
    with pytest.raises(ValueError, match="1"):
        oc.walk_profile(g, 0, 2)


def test_stationary_cycle_uniform():
    g = oc.graph_from_edges([(0, 1), (1, 2), (2, 0)], directed=True)
    sd = oc.stationary_distribution(g)
    assert np.abs(sd.phi - 1.0 / 3.0).max() < 1e-12
    assert sd.residual <= 1e-12


def test_stationary_undirected_closed_form(rng):
    for _ in range(10):
        g = ref.random_connected(rng, int(rng.integers(4, 40)))
        sd = oc.stationary_distribution(g, tol=1e-13)
        closed = g.degrees / (2.0 * g.m)
        assert np.abs(sd.phi - closed).sum() < 1e-11


def test_stationary_directed_matches_dense_eig(rng):
    for _ in range(10):
        g = ref.random_connected(rng, int(rng.integers(4, 30)), directed=True)
        sd = oc.stationary_distribution(g, tol=1e-13)
        dense = ref.stationary_dense(ref.dense_adjacency(g))
        assert np.abs(sd.phi - dense).sum() < 1e-10


def test_stationary_requires_strong_connectivity():
    g = oc.graph_from_edges([(0, 1), (1, 2)], directed=True)
    with pytest.raises(ValueError, match="strongly connected"):
        oc.stationary_distribution(g)


def test_stationary_max_iter_exhaustion():
    g = oc.graph_from_edges([(0, 1), (1, 2)])
    with pytest.raises(ConvergenceError):
        oc.stationary_distribution(g, tol=1e-15, max_iter=0)


def test_stationary_teleport_matches_dense(rng):
    # teleportation makes the chain ergodic even with a sink
    g = oc.graph_from_edges([(0, 1), (1, 2), (2, 0), (0, 3)], directed=True)
    sd = oc.stationary_distribution(g, tol=1e-13, teleport=0.15)
    dense = ref.stationary_dense(ref.dense_adjacency(g), teleport=0.15)
    assert np.abs(sd.phi - dense).sum() < 1e-10


def test_stationary_distribution_validates():
    with pytest.raises(ValueError):
        oc.StationaryDistribution(np.array([0.5, -0.1, 0.6]), 1, 0.0)
    with pytest.raises(ValueError):
        oc.StationaryDistribution(np.array([0.5, 0.2]), 1, 0.0)


def test_walktrap_embedding_path_frozen():
    g = oc.graph_from_edges([(0, 1), (1, 2)])
    emb = oc.walktrap_embedding(g, t=2)
    s = 1.0 / np.sqrt(2.0)
    expected = np.array([[0.5, 0.0, 0.5],
                         [0.0, s, 0.0],
                         [0.5, 0.0, 0.5]])
    assert np.abs(emb.coords - expected).max() < 1e-14
    assert emb.label == "walk-profile(2)"


def test_walktrap_embedding_rejects_directed_and_disconnected():
    gd = oc.graph_from_edges([(0, 1), (1, 2), (2, 0)], directed=True)
    with pytest.raises(ValueError, match="diplacian_embedding"):
        oc.walktrap_embedding(gd)
    g2 = oc.graph_from_edges([(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        oc.walktrap_embedding(g2)


def test_dense_cap_guard():
    n = 5001
    g = oc.graph_from_edges([(i, i + 1) for i in range(n - 1)], n=n)
    with pytest.raises(ValueError, match="5000"):
        oc.walktrap_embedding(g, t=1)


def test_diplacian_equals_normalized_laplacian(rng):
    for _ in range(5):
        g = ref.random_connected(rng, int(rng.integers(4, 30)))
        phi = g.degrees / (2.0 * g.m)
        gamma = oc.diplacian(g, phi)
        a = ref.dense_adjacency(g)
        dinv = 1.0 / np.sqrt(g.degrees.astype(float))
        lap = np.eye(g.n) - dinv[:, None] * a * dinv[None, :]
        assert np.abs(gamma - lap).max() < 1e-12
        assert np.abs(gamma - gamma.T).max() < 1e-12


def test_diplacian_annihilates_sqrt_phi(rng):
    for _ in range(5):
        g = ref.random_connected(rng, int(rng.integers(4, 30)), directed=True)
        sd = oc.stationary_distribution(g, tol=1e-13)
        gamma = oc.diplacian(g, sd)
        assert np.abs(gamma @ np.sqrt(sd.phi)).max() < 1e-12


def test_diplacian_embedding_matches_direct_svd(rng):
    for _ in range(5):
        n = int(rng.integers(6, 25))
        g = ref.random_connected(rng, n, directed=True)
        k = int(rng.integers(1, min(4, n - 1) + 1))
        emb = oc.diplacian_embedding(g, k)
        assert emb.coords.shape == (n, 2 * k)
        sd = oc.stationary_distribution(g, tol=1e-12)
        gamma = oc.diplacian(g, sd)
        u_s, s, vh = np.linalg.svd(gamma)
        order = np.argsort(s)[:k]
        cols_v = vh[order].T.copy()
        cols_u = u_s[:, order].copy()
        for block in (cols_v, cols_u):
            for i in range(k):
                j = int(np.argmax(np.abs(block[:, i])))
                if block[j, i] < 0:
                    block[:, i] = -block[:, i]
        expected = np.hstack([cols_v, cols_u]) / np.sqrt(sd.phi)[:, None]
        assert np.abs(emb.coords - expected).max() < 1e-8


def test_diplacian_embedding_deterministic(karate):
    a = oc.diplacian_embedding(karate, 3).coords
    b = oc.diplacian_embedding(karate, 3).coords
    assert np.array_equal(a, b)


def test_diplacian_embedding_k_bounds(barbell):
    with pytest.raises(ValueError):
        oc.diplacian_embedding(barbell, 0)
    with pytest.raises(ValueError):
        oc.diplacian_embedding(barbell, 6)


def test_embedding_to_csv(barbell):
    emb = oc.walktrap_embedding(barbell, t=2)
    text = oc.embedding_to_csv(emb)
    lines = text.strip().splitlines()
    assert len(lines) == barbell.n + 1
    assert lines[0].startswith("vertex")
