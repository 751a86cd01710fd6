"""Uniform (directed) hypergraphs stored as hyperedge lists.

Vertices are 0-based integers ``0..n-1``. An undirected hyperedge is a sorted
tuple of ``m+1`` distinct vertices. A directed hyperedge ``(T, h)`` is stored
as the sorted tail followed by the head, so ``edge[-1]`` is always the head
and ``edge[:-1]`` the tail. Edge lists are multisets: repeated hyperedges are
kept and counted with multiplicity everywhere.

The Laplacian matrix is assembled directly from pair co-occurrences; dense
adjacency and Laplacian tensors exist only as oracles for small ``n``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .tensor_core import DenseTensor, diagonal_tensor

DENSE_MAX_VERTICES = 8


def canonical_edge(edge: Sequence[int], directed: bool = False) -> tuple[int, ...]:
    """Sorted vertex tuple; for directed edges the tail is sorted and the head kept last."""
    edge = tuple(int(v) for v in edge)
    if directed:
        return tuple(sorted(edge[:-1])) + (edge[-1],)
    return tuple(sorted(edge))


@dataclass(frozen=True)
class Hypergraph:
    """An ``size``-uniform hypergraph on ``n`` vertices (``size = m + 1``)."""

    n: int
    size: int
    edges: tuple[tuple[int, ...], ...] = ()
    directed: bool = False
    weights: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.size < 2:
            raise ValueError("hyperedges need at least 2 vertices")
        edges = tuple(canonical_edge(e, self.directed) for e in self.edges)
        for e in edges:
            if len(e) != self.size:
                raise ValueError(f"hyperedge {e} does not have {self.size} vertices")
            if len(set(e)) != self.size:
                raise ValueError(f"hyperedge {e} repeats a vertex")
            if min(e) < 0 or max(e) >= self.n:
                raise ValueError(f"hyperedge {e} has a vertex outside [0, {self.n})")
        object.__setattr__(self, "edges", edges)
        if self.weights is not None:
            w = tuple(float(x) for x in self.weights)
            if len(w) != len(edges):
                raise ValueError("one weight per hyperedge is required")
            if not all(math.isfinite(x) and x >= 0 for x in w):
                raise ValueError("weights must be finite and non-negative")
            object.__setattr__(self, "weights", w)

    @property
    def m(self) -> int:
        return self.size - 1

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def weight_array(self) -> np.ndarray:
        if self.weights is None:
            return np.ones(len(self.edges))
        return np.asarray(self.weights, dtype=float)

    def edge_array(self) -> np.ndarray:
        return np.asarray(self.edges, dtype=np.intp).reshape(len(self.edges), self.size)

    def _rebuild(self, edges, weights) -> "Hypergraph":
        return Hypergraph(self.n, self.size, tuple(edges), self.directed,
                          None if weights is None else tuple(weights))

    def add_edge(self, edge: Sequence[int], weight: float = 1.0) -> "Hypergraph":
        edges = self.edges + (canonical_edge(edge, self.directed),)
        if self.weights is None and weight == 1.0:
            return self._rebuild(edges, None)
        return self._rebuild(edges, tuple(self.weight_array()) + (weight,))

    def remove_edge(self, edge: Sequence[int]) -> "Hypergraph":
        """Remove one copy of ``edge``."""
        e = canonical_edge(edge, self.directed)
        try:
            k = self.edges.index(e)
        except ValueError:
            raise KeyError(f"hyperedge {e} not present") from None
        edges = self.edges[:k] + self.edges[k + 1:]
        weights = None if self.weights is None else self.weights[:k] + self.weights[k + 1:]
        return self._rebuild(edges, weights)

    def union(self, other: "Hypergraph") -> "Hypergraph":
        """Multiset union of two hypergraphs on the same vertex set."""
        if (self.n, self.size, self.directed) != (other.n, other.size, other.directed):
            raise ValueError("union needs matching n, uniformity and direction")
        if self.weights is None and other.weights is None:
            return self._rebuild(self.edges + other.edges, None)
        w = np.concatenate([self.weight_array(), other.weight_array()])
        return self._rebuild(self.edges + other.edges, w)

    def canonical(self) -> "Hypergraph":
        """Same multiset with hyperedges sorted (weights carried along)."""
        w = self.weight_array()
        order = sorted(range(len(self.edges)), key=lambda k: (self.edges[k], w[k]))
        edges = [self.edges[k] for k in order]
        weights = None if self.weights is None else [self.weights[k] for k in order]
        return self._rebuild(edges, weights)

    def multiplicities(self) -> Counter:
        return Counter(self.edges)

    def base(self) -> "Hypergraph":
        """Undirected hypergraph obtained by forgetting heads."""
        if not self.directed:
            return self
        return Hypergraph(self.n, self.size, self.edges, False, self.weights)


@dataclass(frozen=True)
class Multigraph:
    """Graph with parallel edges, produced by the clique and circle reductions."""

    n: int
    edges: tuple[tuple[int, int], ...]
    directed: bool = False

    def adjacency_matrix(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for i, j in self.edges:
            A[i, j] += 1
            if not self.directed:
                A[j, i] += 1
        return A

    def to_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.n, 2, self.edges, self.directed)

    def isoperimetric_number(self) -> float:
        return isoperimetric_number(self.to_hypergraph())

    def vertex_connectivity(self) -> "VertexConnectivity":
        return vertex_connectivity(self.to_hypergraph())


# --------------------------------------------------------------------------
# Tensors (oracle only)


def adjacency_tensor(G: Hypergraph) -> DenseTensor:
    """Dense adjacency tensor, entries ``w / m!`` on every admissible index permutation."""
    if G.n > DENSE_MAX_VERTICES:
        raise ValueError(f"dense adjacency tensor limited to n <= {DENSE_MAX_VERTICES}")
    arr = np.zeros((G.n,) * G.size)
    scale = 1.0 / math.factorial(G.m)
    for e, w in zip(G.edges, G.weight_array()):
        if G.directed:
            for tail in itertools.permutations(e[:-1]):
                arr[tail + (e[-1],)] += w * scale
        else:
            for perm in itertools.permutations(e):
                arr[perm] += w * scale
    return DenseTensor(arr)


def laplacian_tensor(G: Hypergraph) -> DenseTensor:
    return diagonal_tensor(degrees(G), G.size) - adjacency_tensor(G)


# --------------------------------------------------------------------------
# Degrees and Laplacian matrix


def degrees(G: Hypergraph) -> np.ndarray:
    """``m`` times the incident weight; for directed hypergraphs this is the indegree."""
    d = np.zeros(G.n)
    if not G.edges:
        return d
    E, w = G.edge_array(), G.weight_array()
    if G.directed:
        np.add.at(d, E[:, -1], w)
    else:
        np.add.at(d, E.ravel(), np.repeat(w, G.size))
    return G.m * d


def outdegrees(G: Hypergraph) -> np.ndarray:
    """Tail-incident weight per vertex (for undirected input every vertex counts as tail)."""
    d = np.zeros(G.n)
    if not G.edges:
        return d
    E, w = G.edge_array(), G.weight_array()
    cols = E[:, :-1] if G.directed else E
    np.add.at(d, cols.ravel(), np.repeat(w, cols.shape[1]))
    return d


def pair_matrix(G: Hypergraph, weighted: bool = True) -> np.ndarray:
    """``M[i, j]``: weight of hyperedges containing both ``i`` and ``j`` (undirected),
    or having ``i`` in the tail and head ``j`` (directed). Zero diagonal."""
    M = np.zeros((G.n, G.n))
    if not G.edges:
        return M
    E = G.edge_array()
    w = G.weight_array() if weighted else np.ones(len(G.edges))
    if G.directed:
        for a in range(G.m):
            np.add.at(M, (E[:, a], E[:, -1]), w)
    else:
        for a, b in itertools.permutations(range(G.size), 2):
            np.add.at(M, (E[:, a], E[:, b]), w)
    return M


def laplacian_matrix(G: Hypergraph) -> np.ndarray:
    """``phi(L)`` for the Laplacian tensor ``L = diag(d) - A``, assembled sparsely."""
    return np.diag(degrees(G)) - pair_matrix(G)


def edge_laplacian(edge: Sequence[int], n: int, directed: bool = False) -> np.ndarray:
    """``phi(L_E)`` of a single unit-weight hyperedge."""
    return laplacian_matrix(Hypergraph(n, len(edge), (tuple(edge),), directed))


def sparsity(G: Hypergraph) -> int:
    """Largest number of hyperedges shared by a vertex pair (tail/head pair if directed)."""
    if G.n < 2:
        raise ValueError("sparsity needs at least two vertices")
    return int(round(pair_matrix(G, weighted=False).max()))


# --------------------------------------------------------------------------
# Connectivity


def _components(n: int, edges: Iterable[Sequence[int]]) -> list[list[int]]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in edges:
        r0 = find(e[0])
        for v in e[1:]:
            r = find(v)
            if r != r0:
                parent[r] = r0
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def connected_components(G: Hypergraph) -> list[list[int]]:
    """Vertex partition into connected components (weak components when directed)."""
    return _components(G.n, G.edges)


def is_connected(G: Hypergraph) -> bool:
    return len(connected_components(G)) <= 1


def reachability(G: Hypergraph) -> np.ndarray:
    """Boolean matrix ``R[i, j]``: ``v_i -> v_j`` along a directed hyperpath of length >= 1."""
    R = pair_matrix(G, weighted=False) > 0
    if not G.directed:
        return R
    while True:
        nxt = R | ((R.astype(np.int64) @ R.astype(np.int64)) > 0)
        if (nxt == R).all():
            return R
        R = nxt


def directed_connectivity_class(G: Hypergraph) -> str:
    """One of ``strong``, ``one-way``, ``weak`` or ``disconnected`` (strongest that applies)."""
    R = reachability(G)
    off = ~np.eye(G.n, dtype=bool)
    if (R | ~off).all():
        return "strong"
    if ((R | R.T) | ~off).all():
        return "one-way"
    if is_connected(G):
        return "weak"
    return "disconnected"


@dataclass(frozen=True)
class VertexConnectivity:
    """Minimum cutset size. ``has_cutset`` is False when no removal disconnects,
    in which case ``value`` holds the conventional cap ``n - m``."""

    value: int
    cutset: tuple[int, ...] | None
    has_cutset: bool = True


def vertex_connectivity(G: Hypergraph, max_vertices: int = 30) -> VertexConnectivity:
    """Smallest vertex set whose removal (with incident hyperedges) disconnects ``G``.

    Brute force by increasing cardinality; directed inputs use the base hypergraph.
    A single remaining vertex counts as connected, so at least two must survive.
    """
    if G.n > max_vertices:
        raise ValueError(f"vertex connectivity is brute force; n={G.n} exceeds {max_vertices}")
    if not is_connected(G):
        return VertexConnectivity(0, ())
    masks = [sum(1 << v for v in e) for e in G.edges]
    for k in range(1, G.n - 1):
        for removed in itertools.combinations(range(G.n), k):
            rm = sum(1 << v for v in removed)
            keep = [v for v in range(G.n) if not rm >> v & 1]
            index = {v: i for i, v in enumerate(keep)}
            kept = [[index[v] for v in e] for e, em in zip(G.edges, masks) if not em & rm]
            if len(_components(len(keep), kept)) > 1:
                return VertexConnectivity(k, removed)
    return VertexConnectivity(G.n - G.m, None, has_cutset=False)


def induced_subhypergraph(G: Hypergraph, keep: Iterable[int]) -> tuple[Hypergraph, list[int]]:
    """Hyperedges fully inside ``keep``, relabelled densely.

    Returns the subhypergraph and ``mapping`` with ``mapping[new] = old``.
    """
    mapping = sorted(set(int(v) for v in keep))
    if not mapping:
        raise ValueError("keep must be non-empty")
    index = {v: i for i, v in enumerate(mapping)}
    edges, weights = [], []
    for e, w in zip(G.edges, G.weight_array()):
        if all(v in index for v in e):
            edges.append(tuple(index[v] for v in e))
            weights.append(w)
    sub = Hypergraph(len(mapping), G.size, tuple(edges), G.directed,
                     None if G.weights is None else tuple(weights))
    return sub, mapping


def remove_vertices(G: Hypergraph, removed: Iterable[int]) -> Hypergraph:
    removed = set(removed)
    return induced_subhypergraph(G, [v for v in range(G.n) if v not in removed])[0]


# --------------------------------------------------------------------------
# Reductions and cuts


def clique_reduction(G: Hypergraph) -> Multigraph:
    """Each hyperedge becomes all its vertex pairs (arcs tail -> head when directed)."""
    out: list[tuple[int, int]] = []
    for e in G.edges:
        if G.directed:
            out.extend((t, e[-1]) for t in e[:-1])
        else:
            out.extend(itertools.combinations(e, 2))
    return Multigraph(G.n, tuple(out), G.directed)


def circle_reduction(G: Hypergraph) -> Multigraph:
    """Each hyperedge becomes the cycle through its vertices in ascending order."""
    out: list[tuple[int, int]] = []
    for e in G.edges:
        vs = sorted(e)
        out.extend((vs[j], vs[(j + 1) % len(vs)]) for j in range(len(vs)))
    return Multigraph(G.n, tuple(out), False)


def cut_value(G: Hypergraph, S: Iterable[int]) -> float:
    """``sum_E w_E |E & S| |E - S|`` (the clique-reduction cut of ``S``)."""
    S = set(int(v) for v in S)
    total = 0.0
    for e, w in zip(G.edges, G.weight_array()):
        inside = sum(v in S for v in e)
        total += w * inside * (len(e) - inside)
    return total


def isoperimetric_number(G: Hypergraph, max_vertices: int = 20) -> float:
    """``min_S (weight of hyperedges meeting S and its complement) / min(|S|, |S^c|)``."""
    n = G.n
    if n < 2:
        raise ValueError("isoperimetric number needs at least two vertices")
    if n > max_vertices:
        raise ValueError(f"isoperimetric number is brute force; n={n} exceeds {max_vertices}")
    # S and its complement give the same ratio, so fix the last vertex outside S
    masks = np.arange(1, 1 << (n - 1), dtype=np.int64)
    sizes = np.zeros(masks.shape, dtype=np.int64)
    for v in range(n - 1):
        sizes += (masks >> v) & 1
    crossing = np.zeros(masks.shape)
    for e, w in zip(G.edges, G.weight_array()):
        em = sum(1 << v for v in e)
        hit = masks & em
        crossing += w * ((hit != 0) & (hit != em))
    return float(np.min(crossing / np.minimum(sizes, n - sizes)))


# --------------------------------------------------------------------------
# Hypergraph product


@dataclass(frozen=True)
class ProductResult:
    """Product hyperedges plus the self-loop records (head inside the tail)."""

    hypergraph: Hypergraph
    self_loops: tuple[tuple[tuple[int, ...], int], ...] = field(default=())


def split_directed(G: Hypergraph) -> Hypergraph:
    """Directed version of ``G``; each undirected hyperedge yields ``m+1`` directed ones."""
    if G.directed:
        return G
    edges, weights = [], []
    for e, w in zip(G.edges, G.weight_array()):
        for h in e:
            edges.append(tuple(v for v in e if v != h) + (h,))
            weights.append(w)
    return Hypergraph(G.n, G.size, tuple(edges), True,
                      None if G.weights is None else tuple(weights))


def hypergraph_product(G1: Hypergraph, G2: Hypergraph) -> ProductResult:
    """``(T, h)`` once per length-2 hyperpath ``<(T, h1), h1, (T2, h)>``, ``E1 in G1, E2 in G2``."""
    if (G1.n, G1.size) != (G2.n, G2.size):
        raise ValueError("product needs hypergraphs with the same n and uniformity")
    D1, D2 = split_directed(G1), split_directed(G2)
    by_tail_vertex: dict[int, list[tuple[tuple[int, ...], float]]] = {}
    for e, w in zip(D2.edges, D2.weight_array()):
        for t in e[:-1]:
            by_tail_vertex.setdefault(t, []).append((e, w))
    edges, weights, loops = [], [], []
    for e1, w1 in zip(D1.edges, D1.weight_array()):
        tail, h1 = e1[:-1], e1[-1]
        for e2, w2 in by_tail_vertex.get(h1, ()):
            h = e2[-1]
            if h in tail:
                loops.append((tail, h))
            else:
                edges.append(tail + (h,))
                weights.append(w1 * w2)
    weighted = G1.weights is not None or G2.weights is not None
    prod = Hypergraph(G1.n, G1.size, tuple(edges), True, tuple(weights) if weighted else None)
    return ProductResult(prod, tuple(loops))
