"""Hypergraph Laplacian eigenmaps, the graph baseline, k-means, NMI and ARI."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .hypergraph import Hypergraph
from .spectral import fix_sign, spectrum, zero_threshold

VARIANTS = ("hypergraph", "graph", "graph_unnormalized")


@dataclass(frozen=True)
class Dataset:
    features: np.ndarray
    labels: np.ndarray | None = None
    feature_names: tuple[str, ...] = ()
    label_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        X = np.asarray(self.features, dtype=float)
        if X.ndim != 2 or X.shape[1] < 1:
            raise ValueError("features must be an n x p matrix with p >= 1")
        if not np.all(np.isfinite(X)):
            raise ValueError("features contain missing or non-finite values")
        object.__setattr__(self, "features", X)
        if self.labels is not None:
            y = np.asarray(self.labels)
            if y.shape != (X.shape[0],):
                raise ValueError("one label per row is required")
            object.__setattr__(self, "labels", y)


@dataclass(frozen=True)
class Embedding:
    coords: np.ndarray
    eigenvalues_used: np.ndarray
    skipped_zero_count: int


def normalize_features(X, method: str = "minmax") -> np.ndarray:
    """Per-column scaling; constant columns map to 0."""
    X = np.asarray(X, dtype=float)
    if method == "minmax":
        lo, span = X.min(axis=0), np.ptp(X, axis=0)
        return np.where(span > 0, (X - lo) / np.where(span > 0, span, 1.0), 0.0)
    if method == "zscore":
        sd = X.std(axis=0)
        return np.where(sd > 0, (X - X.mean(axis=0)) / np.where(sd > 0, sd, 1.0), 0.0)
    if method == "none":
        return X.copy()
    raise ValueError(f"unknown normalization {method!r}")


def _neighbors(X: np.ndarray, m: int) -> np.ndarray:
    n = X.shape[0]
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n (got m={m}, n={n})")
    sq = np.sum(X**2, axis=1)
    D = sq[:, None] + sq[None, :] - 2 * X @ X.T
    np.fill_diagonal(D, np.inf)
    # stable sort keeps lower indices first among equal distances
    return np.argsort(D, axis=1, kind="stable")[:, :m]


def knn_hypergraph(X, m: int) -> Hypergraph:
    """One hyperedge ``{i} + (m nearest neighbours of i)`` per point; duplicates kept."""
    X = np.asarray(X, dtype=float)
    if m < 2:
        raise ValueError("hyperedges need m >= 2 neighbours")
    nb = _neighbors(X, m)
    edges = tuple(tuple(sorted([i, *map(int, nb[i])])) for i in range(X.shape[0]))
    return Hypergraph(X.shape[0], m + 1, edges)


def knn_graph(X, k: int) -> np.ndarray:
    """Symmetric 0-1 adjacency: ``i ~ j`` if either is among the other's ``k`` nearest."""
    X = np.asarray(X, dtype=float)
    nb = _neighbors(X, k)
    n = X.shape[0]
    W = np.zeros((n, n))
    W[np.repeat(np.arange(n), k), nb.ravel()] = 1.0
    return np.maximum(W, W.T)


def _take_nonzero(vals: np.ndarray, vecs: np.ndarray, q: int, include_kernel: bool = False) -> Embedding:
    thr = zero_threshold(vals)
    nz = np.arange(len(vals)) if include_kernel else np.flatnonzero(vals >= thr)
    skipped = len(vals) - len(nz)
    if q < 1 or q > len(nz):
        raise ValueError(f"q={q} exceeds the {len(nz)} non-zero eigenvalues available")
    idx = nz[:q]
    coords = np.column_stack([fix_sign(vecs[:, j]) for j in idx])
    return Embedding(coords, vals[idx].copy(), int(skipped))


def embed(G: Hypergraph, q: int, include_kernel: bool = False) -> Embedding:
    """Eigenvectors of the unnormalised Laplacian for the ``q`` smallest non-zero eigenvalues.

    ``include_kernel`` keeps the zero eigenvalues too (component indicators
    when the hypergraph is disconnected). Off by default.
    """
    if G.directed:
        raise ValueError("eigenmaps use undirected hypergraphs")
    sp = spectrum(G)
    return _take_nonzero(sp.eigenvalues, sp.eigenvectors, q, include_kernel)


def embed_graph(W: np.ndarray, q: int, normalized: bool = True, include_kernel: bool = False) -> Embedding:
    """Graph eigenmap; ``normalized`` solves ``L y = lambda D y``."""
    d = W.sum(axis=1)
    L = np.diag(d) - W
    if normalized:
        if np.any(d <= 0):
            raise ValueError("normalised eigenmap needs every vertex to have an edge")
        vals, vecs = scipy.linalg.eigh(L, np.diag(d))
    else:
        vals, vecs = np.linalg.eigh(L)
    return _take_nonzero(vals, vecs, q, include_kernel)


# --------------------------------------------------------------------------
# k-means


def _kmeanspp(Y: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = Y.shape[0]
    centers = [Y[rng.integers(n)]]
    d2 = np.sum((Y - centers[0]) ** 2, axis=1)
    for _ in range(1, k):
        total = d2.sum()
        j = rng.integers(n) if total <= 0 else rng.choice(n, p=d2 / total)
        centers.append(Y[j])
        d2 = np.minimum(d2, np.sum((Y - Y[j]) ** 2, axis=1))
    return np.array(centers)


def _sqdist(Y, C):
    return np.sum(Y**2, axis=1)[:, None] - 2 * Y @ C.T + np.sum(C**2, axis=1)[None, :]


def lloyd(Y: np.ndarray, centers: np.ndarray, max_iter: int = 300):
    """Lloyd iterations from ``centers``; returns labels, centers, inertia trace."""
    C = centers.copy()
    k = len(C)
    trace = []
    labels = np.zeros(len(Y), dtype=int)
    for _ in range(max_iter):
        D = np.maximum(_sqdist(Y, C), 0.0)
        labels = np.argmin(D, axis=1)
        trace.append(float(D[np.arange(len(Y)), labels].sum()))
        newC = C.copy()
        for j in range(k):
            members = labels == j
            if members.any():
                newC[j] = Y[members].mean(axis=0)
            else:
                # empty cluster: move to the point farthest from its centre
                far = int(np.argmax(D[np.arange(len(Y)), labels]))
                newC[j] = Y[far]
        if np.allclose(newC, C, rtol=0, atol=1e-12):
            break
        C = newC
    D = np.maximum(_sqdist(Y, C), 0.0)
    labels = np.argmin(D, axis=1)
    trace.append(float(D[np.arange(len(Y)), labels].sum()))
    return labels, C, trace


def kmeans(Y, k: int, seed: int = 0, n_init: int = 50, max_iter: int = 300) -> np.ndarray:
    """k-means++ seeding, Lloyd refinement, best of ``n_init`` restarts by inertia."""
    Y = np.asarray(Y, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    if not 1 <= k <= len(Y):
        raise ValueError("need 1 <= k <= n")
    rng = np.random.default_rng(seed)
    best, best_inertia = None, np.inf
    for _ in range(n_init):
        labels, _, trace = lloyd(Y, _kmeanspp(Y, k, rng), max_iter)
        if trace[-1] < best_inertia:
            best, best_inertia = labels, trace[-1]
    return best


# --------------------------------------------------------------------------
# Scores


def _contingency(a, b) -> np.ndarray:
    _, ia = np.unique(np.asarray(a), return_inverse=True)
    _, ib = np.unique(np.asarray(b), return_inverse=True)
    M = np.zeros((ia.max() + 1, ib.max() + 1))
    np.add.at(M, (ia, ib), 1)
    return M


def _entropy(counts: np.ndarray) -> float:
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log(p)).sum())


def nmi(a, b) -> float:
    """Mutual information over the arithmetic mean of the two entropies."""
    M = _contingency(a, b)
    n = M.sum()
    if n == 0:
        return 1.0
    ha, hb = _entropy(M.sum(axis=1)), _entropy(M.sum(axis=0))
    if ha == 0 and hb == 0:
        return 1.0
    if ha == 0 or hb == 0:
        return 0.0
    P = M / n
    outer = np.outer(P.sum(axis=1), P.sum(axis=0))
    nz = P > 0
    mi = float((P[nz] * np.log(P[nz] / outer[nz])).sum())
    return float(min(1.0, max(0.0, mi / ((ha + hb) / 2))))


def ari(a, b) -> float:
    M = _contingency(a, b)
    n = M.sum()

    def c2(x):
        return x * (x - 1) / 2.0

    index = c2(M).sum()
    ra, rb = c2(M.sum(axis=1)).sum(), c2(M.sum(axis=0)).sum()
    expected = ra * rb / c2(n) if n > 1 else 0.0
    top = (ra + rb) / 2.0
    if top == expected:
        return 1.0
    return float((index - expected) / (top - expected))


# --------------------------------------------------------------------------
# Pipeline


@dataclass
class PipelineResult:
    nmi: float
    ari: float
    embedding: Embedding
    predicted: np.ndarray


def pipeline(data: Dataset, m: int, q: int, k: int, variant: str = "hypergraph", seed: int = 0,
             neighbors: int | None = None, normalization: str = "minmax",
             n_init: int = 50, include_kernel: bool = False) -> PipelineResult:
    """Normalise, build the neighbourhood structure, embed, cluster and score.

    ``neighbors`` overrides the graph variants' neighbour count (default ``m``).
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    X = normalize_features(data.features, normalization)
    if variant == "hypergraph":
        emb = embed(knn_hypergraph(X, m), q, include_kernel)
    else:
        W = knn_graph(X, neighbors or m)
        emb = embed_graph(W, q, normalized=(variant == "graph"), include_kernel=include_kernel)
    pred = kmeans(emb.coords, k, seed=seed, n_init=n_init)
    if data.labels is None:
        return PipelineResult(float("nan"), float("nan"), emb, pred)
    return PipelineResult(nmi(data.labels, pred), ari(data.labels, pred), emb, pred)


def make_blobs(n: int = 300, p: int = 10, centers: int = 3, separation: float = 10.0,
               seed: int = 0) -> Dataset:
    """Unit-variance Gaussian blobs with pairwise centre distance ``separation``."""
    if centers > p:
        raise ValueError("need centers <= p for equidistant centres")
    rng = np.random.default_rng(seed)
    C = np.eye(p)[:centers] * (separation / np.sqrt(2.0))
    y = np.arange(n) % centers
    return Dataset(C[y] + rng.standard_normal((n, p)), y)
