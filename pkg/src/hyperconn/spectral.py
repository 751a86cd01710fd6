"""Algebraic connectivity, Fiedler vectors, edge-addition bounds and consensus.

The quadratic form of the Laplacian tensor is the quadratic form of its
linear representation, so everything here works on the ``n x n`` matrix
from :func:`hyperconn.hypergraph.laplacian_matrix`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .hypergraph import Hypergraph, edge_laplacian, laplacian_matrix, sparsity

ZERO_TOL = 1e-8
RESIDUAL_TOL = 1e-9
# Coefficient of the (q2^T Lhat q3)^2 term in the a(G+E0) <= lambda_3 test.
LOWER_BOUND_CONDITION_COEF = 3.0 * math.sqrt(3.0)


class NumericalError(RuntimeError):
    """Eigensolver residual too large or an integration step that would blow up."""


@dataclass(frozen=True)
class SpectralSummary:
    """Spectral data of ``phi(L)``.

    For undirected hypergraphs ``eigenvalues`` is the full ascending spectrum
    and ``algebraic_connectivity == eigenvalues[1]``. For directed ones the
    quadratic form is restricted to the complement of the all-ones vector and
    ``eigenvalues`` holds the ``n - 1`` eigenvalues of that restriction, so
    ``algebraic_connectivity == eigenvalues[0]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    fiedler: np.ndarray
    algebraic_connectivity: float
    zero_multiplicity: int
    directed: bool = False
    residual: float = 0.0

    def zero_threshold(self) -> float:
        return zero_threshold(self.eigenvalues)


def zero_threshold(eigenvalues) -> float:
    top = float(np.max(np.abs(eigenvalues))) if len(eigenvalues) else 0.0
    return ZERO_TOL * max(1.0, top)


def fix_sign(v: np.ndarray) -> np.ndarray:
    """Flip ``v`` so its first largest-magnitude coordinate is positive."""
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        return v
    mag = np.abs(v)
    k = int(np.flatnonzero(mag >= mag.max() - 1e-9 * max(1.0, mag.max()))[0])
    return -v if v[k] < 0 else v


def symmetric_eigh(M: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Ascending eigenpairs of a symmetric matrix with a residual check."""
    M = np.asarray(M, dtype=float)
    vals, vecs = np.linalg.eigh(M)
    if M.size == 0:
        return vals, vecs, 0.0
    residual = float(np.max(np.linalg.norm(M @ vecs - vecs * vals, axis=0)))
    if residual > RESIDUAL_TOL * max(1.0, float(np.max(np.abs(vals)))):
        raise NumericalError(f"eigensolver residual {residual:.3e} exceeds tolerance")
    return vals, vecs, residual


def ones_complement_basis(n: int) -> np.ndarray:
    """``n x (n-1)`` orthonormal basis of the complement of ``1``.

    Built from the Householder reflection that swaps ``1/sqrt(n)`` and ``e_1``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    u = np.full(n, 1.0 / math.sqrt(n))
    u[0] -= 1.0
    norm2 = float(u @ u)
    H = np.eye(n)
    if norm2 > 0:
        H -= 2.0 * np.outer(u, u) / norm2
    return H[:, 1:]


def spectrum_of_matrix(L: np.ndarray, directed: bool = False) -> SpectralSummary:
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    if n < 2:
        raise ValueError("algebraic connectivity needs at least two vertices")
    if not directed:
        vals, vecs, res = symmetric_eigh((L + L.T) / 2)
        thr = zero_threshold(vals)
        fiedler = fix_sign(vecs[:, 1])
        return SpectralSummary(vals, vecs, fiedler, float(vals[1]),
                               int(np.sum(vals < thr)), False, res)
    B = ones_complement_basis(n)
    R = B.T @ ((L + L.T) / 2) @ B
    vals, vecs, res = symmetric_eigh(R)
    full = B @ vecs
    thr = zero_threshold(vals)
    return SpectralSummary(vals, full, fix_sign(full[:, 0]), float(vals[0]),
                           int(np.sum(np.abs(vals) < thr)), True, res)


def spectrum(G: Hypergraph) -> SpectralSummary:
    return spectrum_of_matrix(laplacian_matrix(G), G.directed)


def algebraic_connectivity(G: Hypergraph) -> float:
    return spectrum(G).algebraic_connectivity


def fiedler_vector(G: Hypergraph) -> np.ndarray:
    return spectrum(G).fiedler


def hyperedge_quadratic(x, edge: Sequence[int], directed: bool = False) -> float:
    """``x^T L_E x``: pairwise squared differences, or ``sum_t x_h^2 - x_h x_t`` if directed."""
    x = np.asarray(x, dtype=float)
    if directed:
        h = x[edge[-1]]
        return float(sum(h * h - h * x[t] for t in edge[:-1]))
    v = x[list(edge)]
    return float(len(v) * (v @ v) - v.sum() ** 2)


def add_edge_upper_bound(G: Hypergraph, edge: Sequence[int]) -> float:
    """``a(G) + q2^T L_E q2``, an upper bound on ``a(G + E)``."""
    sp = spectrum(G)
    return sp.algebraic_connectivity + hyperedge_quadratic(sp.fiedler, edge, G.directed)


@dataclass(frozen=True)
class EdgeLowerBound:
    """Root of the secular upper bound ``g`` on ``(lambda_2, lambda_3)``.

    ``root`` is a certified lower bound on ``a(G + E0)`` whenever ``valid``.
    """

    root: float
    valid: bool
    condition_holds: bool
    lambda2: float
    lambda3: float
    score: float


def _rotation_pattern(edge: Sequence[int], n: int) -> np.ndarray:
    a, b, c = sorted(edge)
    P = np.zeros((n, n))
    P[a, b], P[a, c] = 1.0, -1.0
    P[b, a], P[b, c] = -1.0, 1.0
    P[c, a], P[c, b] = 1.0, -1.0
    return P


def secular_bound(lam: float, lambda2: float, lambda3: float, score: float) -> float:
    """``g(lam) = 1 + score/(l2 - lam) + 6/(l3 - lam) + 9/(l3 - lam)^2``."""
    return 1.0 + score / (lambda2 - lam) + 6.0 / (lambda3 - lam) + 9.0 / (lambda3 - lam) ** 2


def secular_root(lambda2: float, lambda3: float, score: float, tol: float = 1e-10) -> float:
    """Zero of :func:`secular_bound` inside ``(lambda2, lambda3)`` by bisection.

    ``g`` increases on the bracket; with ``score == 0`` it is positive
    throughout and ``lambda2`` is returned.
    """
    if score <= 0:
        return lambda2
    lo, hi = lambda2, lambda3
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if secular_bound(mid, lambda2, lambda3, score) < 0:
            lo = mid
        else:
            hi = mid
    return lo


def add_edge_lower_bound(G: Hypergraph, edge: Sequence[int]) -> EdgeLowerBound:
    """Lower bound on ``a(G + E0)`` for a connected undirected 3-uniform ``G``."""
    if G.directed or G.size != 3 or len(edge) != 3:
        raise ValueError("the edge-addition lower bound is for undirected 3-uniform hypergraphs")
    sp = spectrum(G)
    if G.n < 3:
        raise ValueError("need at least three vertices")
    thr = sp.zero_threshold()
    l2, l3 = float(sp.eigenvalues[1]), float(sp.eigenvalues[2])
    if l2 < thr:
        raise ValueError("hypergraph is not connected (lambda_2 = 0)")
    if l3 - l2 < ZERO_TOL:
        raise ValueError("lambda_2 == lambda_3: the bound's hypothesis fails")
    q2, q3 = sp.eigenvectors[:, 1], sp.eigenvectors[:, 2]
    LE = edge_laplacian(edge, G.n)
    score = float(q2 @ LE @ q2)
    if score < thr:
        score = 0.0
    cross = float(q2 @ _rotation_pattern(edge, G.n) @ q3)
    condition = float(q3 @ LE @ q3) > LOWER_BOUND_CONDITION_COEF * cross**2 / (l3 - l2)
    valid = condition or (l3 - l2 >= score)
    return EdgeLowerBound(secular_root(l2, l3, score), valid, condition, l2, l3, score)


@dataclass(frozen=True)
class ConsensusTrace:
    times: np.ndarray
    states: np.ndarray
    disagreement: np.ndarray
    rate: float


def consensus_simulate(G: Hypergraph, x0, dt: float, steps: int, sample_every: int = 1) -> ConsensusTrace:
    """RK4 integration of ``x' = -x^T L`` (i.e. ``-phi(L)^T x``).

    ``rate`` is the least-squares decay rate of ``||x - mean(x) 1||`` over the
    second half of the samples that sit above the round-off floor.
    """
    x = np.asarray(x0, dtype=float).copy()
    if x.shape != (G.n,):
        raise ValueError("initial state must have one entry per vertex")
    if dt <= 0 or steps < 0:
        raise ValueError("need dt > 0 and steps >= 0")
    M = -laplacian_matrix(G).T
    radius = float(np.max(np.abs(np.linalg.eigvals(M)))) if G.n else 0.0
    if dt * radius >= 2.0:
        raise NumericalError(f"dt * spectral radius = {dt * radius:.3g} >= 2; reduce dt")

    def f(y):
        return M @ y

    times, states = [0.0], [x.copy()]
    for k in range(1, steps + 1):
        k1 = f(x)
        k2 = f(x + 0.5 * dt * k1)
        k3 = f(x + 0.5 * dt * k2)
        k4 = f(x + dt * k3)
        x = x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if k % sample_every == 0 or k == steps:
            times.append(k * dt)
            states.append(x.copy())
    T, X = np.array(times), np.array(states)
    dis = np.linalg.norm(X - X.mean(axis=1, keepdims=True), axis=1)
    return ConsensusTrace(T, X, dis, _fit_rate(T, dis))


def _fit_rate(t: np.ndarray, e: np.ndarray) -> float:
    if len(e) < 3 or e[0] == 0:
        return float("nan")
    ok = e > 1e-11 * e[0]
    idx = np.flatnonzero(ok)
    if len(idx) < 3:
        return float("nan")
    idx = idx[len(idx) // 2:]
    slope = np.polyfit(t[idx], np.log(e[idx]), 1)[0]
    return float(-slope)


# --------------------------------------------------------------------------
# Connectivity bounds


def connectivity_bound_factor(G: Hypergraph) -> float:
    """``(2m-1)`` for undirected and ``3m/2`` for directed hypergraphs."""
    return 1.5 * G.m if G.directed else 2.0 * G.m - 1.0


def vertex_removal_bound(G: Hypergraph, k: int = 1) -> float:
    """Maximum loss of ``a`` when ``k`` vertices are removed: ``factor * s * k``."""
    return connectivity_bound_factor(G) * sparsity(G) * k
