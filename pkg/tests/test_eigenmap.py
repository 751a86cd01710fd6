import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperconn.eigenmap import (
    Dataset,
    ari,
    embed,
    embed_graph,
    kmeans,
    knn_graph,
    knn_hypergraph,
    lloyd,
    make_blobs,
    nmi,
    normalize_features,
    pipeline,
)
from hyperconn.hypergraph import laplacian_matrix

metrics = pytest.importorskip("sklearn.metrics")


def test_normalization():
    X = np.array([[0.0, 5.0, 1.0], [2.0, 5.0, 3.0], [4.0, 5.0, 2.0]])
    Y = normalize_features(X)
    np.testing.assert_allclose(Y[:, 0], [0, 0.5, 1])
    np.testing.assert_array_equal(Y[:, 1], 0)
    Z = normalize_features(X, "zscore")
    np.testing.assert_allclose(Z[:, 0].std(), 1)
    with pytest.raises(ValueError):
        normalize_features(X, "robust")


def test_dataset_rejects_nan():
    with pytest.raises(ValueError):
        Dataset(np.array([[1.0, np.nan]]))
    with pytest.raises(ValueError):
        Dataset(np.ones((3, 2)), np.array([0, 1]))


def test_knn_line():
    X = np.arange(6.0)[:, None]
    G = knn_hypergraph(X, 2)
    # ties broken toward the lower index: point 1 picks 0 and 2
    assert G.edges == ((0, 1, 2), (0, 1, 2), (1, 2, 3), (2, 3, 4), (3, 4, 5), (3, 4, 5))
    W = knn_graph(X, 1)
    # each point picks its left neighbour (point 0 picks 1): the path graph
    np.testing.assert_array_equal(W, np.eye(6, k=1) + np.eye(6, k=-1))


def test_knn_bad_m():
    with pytest.raises(ValueError):
        knn_hypergraph(np.zeros((4, 2)), 4)
    with pytest.raises(ValueError):
        knn_hypergraph(np.zeros((4, 2)), 1)


def test_embedding_is_orthonormal_eigenbasis():
    X = make_blobs(60, 4, 2, separation=2, seed=1).features
    G = knn_hypergraph(normalize_features(X), 6)
    emb = embed(G, 3)
    np.testing.assert_allclose(emb.coords.T @ emb.coords, np.eye(3), atol=1e-9)
    L = laplacian_matrix(G)
    np.testing.assert_allclose(L @ emb.coords, emb.coords * emb.eigenvalues_used, atol=1e-8)
    assert np.all(emb.eigenvalues_used > 0)


def test_embedding_skips_kernel():
    X = np.r_[np.zeros((5, 2)), np.full((5, 2), 100.0)] + np.arange(10)[:, None] * 0.01
    G = knn_hypergraph(X, 3)
    assert embed(G, 2).skipped_zero_count == 2
    assert embed(G, 2, include_kernel=True).skipped_zero_count == 0
    with pytest.raises(ValueError):
        embed(G, 9)


def test_graph_normalized_generalized():
    X = make_blobs(40, 3, 2, separation=3, seed=2).features
    W = knn_graph(X, 5)
    emb = embed_graph(W, 2)
    D = np.diag(W.sum(axis=1))
    L = D - W
    np.testing.assert_allclose(L @ emb.coords, D @ emb.coords * emb.eigenvalues_used, atol=1e-8)


def test_lloyd_inertia_non_increasing():
    Y = np.random.default_rng(0).standard_normal((200, 3))
    _, _, trace = lloyd(Y, Y[:4].copy())
    assert all(b <= a + 1e-9 for a, b in zip(trace, trace[1:]))


def test_kmeans_separated():
    d = make_blobs(150, 5, 3, separation=20, seed=3)
    assert ari(d.labels, kmeans(d.features, 3, seed=0, n_init=5)) == pytest.approx(1.0)


@settings(max_examples=60)
@given(st.lists(st.integers(0, 3), min_size=2, max_size=40), st.integers(0, 10**6))
def test_scores_match_sklearn(a, seed):
    b = np.random.default_rng(seed).integers(0, 4, len(a))
    assert nmi(a, b) == pytest.approx(metrics.normalized_mutual_info_score(a, b), abs=1e-10)
    assert ari(a, b) == pytest.approx(metrics.adjusted_rand_score(a, b), abs=1e-10)


def test_score_edge_cases():
    assert nmi([0, 0, 0], [1, 1, 1]) == 1.0
    assert nmi([0, 1, 2], [5, 6, 7]) == pytest.approx(1.0)
    assert ari([0, 0, 1, 1], [1, 1, 0, 0]) == pytest.approx(1.0)


def test_pipeline_variants_run():
    d = make_blobs(90, 4, 3, separation=12, seed=0)
    for v in ("hypergraph", "graph", "graph_unnormalized"):
        res = pipeline(d, 5, 2, 3, variant=v, n_init=5, include_kernel=True)
        assert res.nmi > 0.9 and res.predicted.shape == (90,)
    with pytest.raises(ValueError):
        pipeline(d, 5, 2, 3, variant="other")
