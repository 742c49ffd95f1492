import numpy as np
import pytest

import overcom as oc

import reference as ref


def _random_cover(rng, n, k):
    return oc.Cover.from_sets(n, ref.random_cover_sets(rng, n, k))


def test_belonging_barbell_hand_values(barbell):
    cover = oc.Cover.from_sets(6, [frozenset({0, 1, 2, 3}),
                                   frozenset({3, 4, 5})])
    alpha = oc.belonging_coefficients(barbell, cover)
    assert alpha[3].tolist() == pytest.approx([1.0 / 3.0, 2.0 / 3.0])
    assert alpha[2].tolist() == [1.0, 0.0]
    assert alpha[0].tolist() == [1.0, 0.0]
    assert alpha[4].tolist() == [0.0, 1.0]


def test_belonging_rows_sum_to_one(rng):
    for _ in range(10):
        g = ref.random_connected(rng, int(rng.integers(5, 30)))
        cover = _random_cover(rng, g.n, int(rng.integers(2, 5)))
        alpha = oc.belonging_coefficients(g, cover)
        sums = alpha.sum(axis=1)
        assert ((np.abs(sums - 1.0) < 1e-12) | (sums == 0.0)).all()
        assert (alpha >= 0).all()
        # zero outside the vertex's own communities
        mat = cover.to_matrix()
        assert (alpha[mat == 0] == 0).all()


def test_belonging_matches_dense(rng):
    for _ in range(10):
        g = ref.random_connected(rng, int(rng.integers(5, 25)))
        cover = _random_cover(rng, g.n, int(rng.integers(2, 5)))
        alpha = oc.belonging_coefficients(g, cover)
        dense = ref.belonging_dense(ref.dense_adjacency(g), cover.communities)
        assert np.abs(alpha - dense).max() < 1e-14


def test_single_community_gives_zero(barbell):
    cover = oc.Cover.from_sets(6, [frozenset(range(6))])
    assert oc.overlap_modularity_avg(barbell, cover) == pytest.approx(0.0, abs=1e-15)
    assert oc.overlap_modularity_q0(barbell, cover) == pytest.approx(0.0, abs=1e-15)


def test_disjoint_cover_reduces_to_crisp_modularity(karate):
    p = oc.louvain(karate, oc.ClusteringConfig(seed=0))
    q = oc.modularity(karate, p)
    cover = p.to_cover()
    assert oc.overlap_modularity_avg(karate, cover) == pytest.approx(q, abs=1e-12)
    assert oc.overlap_modularity_q0(karate, cover) == pytest.approx(q, abs=1e-12)
    assert oc.theta_modularity(karate, cover, 1.0) == pytest.approx(q, abs=1e-12)


def test_overlap_modularities_match_brute_force(rng):
    for _ in range(15):
        g = ref.random_connected(rng, int(rng.integers(5, 20)))
        cover = _random_cover(rng, g.n, int(rng.integers(2, 4)))
        a = ref.dense_adjacency(g)
        assert oc.overlap_modularity_avg(g, cover) == pytest.approx(
            ref.qov_avg_dense(a, cover.communities), abs=1e-12)
        assert oc.overlap_modularity_q0(g, cover) == pytest.approx(
            ref.qov_q0_dense(a, cover.communities), abs=1e-12)


def test_theta_modularity_matches_brute_force(rng):
    for _ in range(10):
        g = ref.random_connected(rng, int(rng.integers(5, 20)))
        cover = _random_cover(rng, g.n, int(rng.integers(2, 4)))
        a = ref.dense_adjacency(g)
        theta = float(rng.uniform(0.3, 2.5))
        assert oc.theta_modularity(g, cover, theta) == pytest.approx(
            ref.q_theta_undirected_dense(a, cover.communities, theta), abs=1e-12)


def test_theta_modularity_directed_matches_brute_force(rng):
    for _ in range(10):
        g = ref.random_connected(rng, int(rng.integers(5, 18)), directed=True)
        cover = _random_cover(rng, g.n, int(rng.integers(2, 4)))
        a = ref.dense_adjacency(g)
        theta = float(rng.uniform(0.3, 2.5))
        assert oc.theta_modularity(g, cover, theta, "directed-d") == pytest.approx(
            ref.q_theta_directed_dense(a, cover.communities, theta), abs=1e-12)
        phi = ref.stationary_dense(a)
        assert oc.theta_modularity(g, cover, theta, "directed-sd",
                                   phi=phi) == pytest.approx(
            ref.q_theta_sd_dense(a, cover.communities, theta, phi), abs=1e-12)


def test_theta_modularity_decreases_in_theta(karate):
    cover = oc.louvain(karate, oc.ClusteringConfig(seed=0)).to_cover()
    vals = [oc.theta_modularity(karate, cover, th)
            for th in (0.5, 1.0, 1.5, 2.0)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_theta_modularity_rejects_bad_variant(barbell):
    cover = oc.Cover.from_sets(6, [frozenset(range(6))])
    with pytest.raises(ValueError):
        oc.theta_modularity(barbell, cover, 1.0, "nonsense")
    gd = oc.graph_from_edges([(0, 1), (1, 0)], directed=True)
    with pytest.raises(ValueError):
        oc.theta_modularity(gd, oc.Cover.from_sets(2, [frozenset({0, 1})]),
                            1.0, "undirected")


def test_onmi_pinned_split_vs_whole():
    a = oc.Cover.from_sets(10, [frozenset(range(5)), frozenset(range(5, 10))])
    b = oc.Cover.from_sets(10, [frozenset(range(10))])
    assert oc.onmi(a, b) == pytest.approx(0.0, abs=1e-15)


def test_onmi_identical_is_one(rng):
    for _ in range(5):
        n = int(rng.integers(6, 30))
        cover = _random_cover(rng, n, int(rng.integers(2, 5)))
        assert oc.onmi(cover, cover) == pytest.approx(1.0, abs=1e-12)


def test_onmi_single_community_pair():
    a = oc.Cover.from_sets(5, [frozenset(range(5))])
    assert oc.onmi(a, a) == 1.0


def test_onmi_symmetry_and_range(rng):
    for _ in range(10):
        n = int(rng.integers(6, 30))
        a = _random_cover(rng, n, int(rng.integers(2, 5)))
        b = _random_cover(rng, n, int(rng.integers(2, 5)))
        x = oc.onmi(a, b)
        y = oc.onmi(b, a)
        assert abs(x - y) < 1e-12
        assert 0.0 <= x <= 1.0


def test_onmi_community_order_invariance(rng):
    n = 20
    sets = ref.random_cover_sets(rng, n, 4)
    a = oc.Cover.from_sets(n, sets)
    b = oc.Cover.from_sets(n, list(reversed(sets)))
    ref_cover = _random_cover(rng, n, 3)
    assert oc.onmi(a, ref_cover) == pytest.approx(oc.onmi(b, ref_cover),
                                                  abs=1e-12)


def test_onmi_universe_mismatch():
    a = oc.Cover.from_sets(5, [frozenset(range(5))])
    b = oc.Cover.from_sets(6, [frozenset(range(6))])
    with pytest.raises(ValueError):
        oc.onmi(a, b)


def test_metrics_reject_directed_graphs():
    gd = oc.graph_from_edges([(0, 1), (1, 2), (2, 0)], directed=True)
    cover = oc.Cover.from_sets(3, [frozenset({0, 1, 2})])
    with pytest.raises(ValueError):
        oc.belonging_coefficients(gd, cover)
    with pytest.raises(ValueError):
        oc.overlap_modularity_avg(gd, cover)
    with pytest.raises(ValueError):
        oc.overlap_modularity_q0(gd, cover)
