"""Seeded randomized checks of every structural claim the package relies on.

Each check returns a list of counterexample strings; an empty list is a pass.
Counterexamples quote the trial seed and the hyperedge list so they can be
replayed with :func:`random_instance`.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from . import tensor_core as tc
from .hypergraph import (
    Hypergraph,
    circle_reduction,
    connected_components,
    cut_value,
    directed_connectivity_class,
    induced_subhypergraph,
    is_connected,
    isoperimetric_number,
    laplacian_matrix,
    laplacian_tensor,
    remove_vertices,
    sparsity,
    vertex_connectivity,
)
from .spectral import (
    add_edge_lower_bound,
    add_edge_upper_bound,
    algebraic_connectivity,
    connectivity_bound_factor,
    hyperedge_quadratic,
    spectrum,
)

SLACK = 1e-9
ORACLE_TOL = 1e-12


def _rng(seed: int, trial: int, salt: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, trial, salt]))


def random_instance(rng: np.random.Generator, directed: bool = False, n_range=(5, 14),
                    sizes=(3, 4), max_edges: int | None = None) -> Hypergraph:
    """Random multiset hypergraph; roughly one in eight draws repeats a hyperedge."""
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    r = int(rng.choice([k for k in sizes if k <= n]))
    cap = max_edges or 3 * n
    count = int(rng.integers(1, cap + 1))
    edges = []
    for _ in range(count):
        if edges and rng.random() < 0.125:
            edges.append(edges[int(rng.integers(len(edges)))])
            continue
        e = [int(v) for v in rng.choice(n, size=r, replace=False)]
        edges.append(tuple(e))
    return Hypergraph(n, r, tuple(edges), directed)


def _desc(G: Hypergraph) -> str:
    kind = "directed" if G.directed else "undirected"
    return f"n={G.n} size={G.size} {kind} edges={list(G.edges)}"


def _sub_multiset(G: Hypergraph, rng) -> tuple[Hypergraph, Hypergraph]:
    mask = rng.random(G.num_edges) < 0.5
    a = tuple(e for e, k in zip(G.edges, mask) if k)
    b = tuple(e for e, k in zip(G.edges, mask) if not k)
    return Hypergraph(G.n, G.size, a, G.directed), Hypergraph(G.n, G.size, b, G.directed)


# --------------------------------------------------------------------------
# Individual checks. Each takes (G, rng) and returns counterexample strings.


def check_psd(G, rng):
    a = algebraic_connectivity(G)
    return [] if a >= -SLACK else [f"a = {a} < 0"]


def check_components(G, rng):
    sp = spectrum(G)
    k = len(connected_components(G))
    return [] if sp.zero_multiplicity == k else [f"zero multiplicity {sp.zero_multiplicity} != {k} components"]


def check_monotone(G, rng):
    G1, _ = _sub_multiset(G, rng)
    a1, a = algebraic_connectivity(G1), algebraic_connectivity(G)
    return [] if a1 <= a + SLACK else [f"subhypergraph a={a1} exceeds a={a}"]


def check_superadditive(G, rng):
    G1, G2 = _sub_multiset(G, rng)
    a1, a2, a = algebraic_connectivity(G1), algebraic_connectivity(G2), algebraic_connectivity(G)
    return [] if a1 + a2 <= a + SLACK else [f"a1+a2={a1 + a2} > a={a}"]


def _removal_loss_ok(G, k, rng):
    if G.n - k < 2:
        return []
    removed = [int(v) for v in rng.choice(G.n, size=k, replace=False)]
    H = remove_vertices(G, removed)
    a, aH = algebraic_connectivity(G), algebraic_connectivity(H)
    bound = connectivity_bound_factor(G) * sparsity(G) * k
    if aH >= a - bound - SLACK:
        return []
    return [f"removing {removed}: a(H)={aH} < a(G)-{bound}={a - bound}"]


def check_vertex_removal(G, rng):
    return _removal_loss_ok(G, 1, rng)


def check_k_vertex_removal(G, rng):
    return _removal_loss_ok(G, int(rng.integers(1, max(2, G.n - 2))), rng)


def check_partition(G, rng):
    """``a(G) <= min(a(G1) + c s |V2|, a(G2) + c s |V1|)`` for a vertex bipartition."""
    k = int(rng.integers(2, G.n - 1))
    V1 = sorted(int(v) for v in rng.choice(G.n, size=k, replace=False))
    V2 = [v for v in range(G.n) if v not in V1]
    c = connectivity_bound_factor(G) * sparsity(G)
    G1, _ = induced_subhypergraph(G, V1)
    G2, _ = induced_subhypergraph(G, V2)
    bound = min(algebraic_connectivity(G1) + c * len(V2), algebraic_connectivity(G2) + c * len(V1))
    a = algebraic_connectivity(G)
    return [] if a <= bound + SLACK else [f"V1={V1}: a={a} > {bound}"]


def check_main_bound(G, rng):
    a = algebraic_connectivity(G)
    v = vertex_connectivity(G).value
    bound = connectivity_bound_factor(G) * sparsity(G) * v
    return [] if a <= bound + SLACK else [f"a={a} > factor*s*v={bound} (v={v})"]


def check_not_weak(G, rng):
    """Directed: not weakly connected implies ``a <= 0``."""
    if directed_connectivity_class(G) != "disconnected":
        return []
    a = algebraic_connectivity(G)
    return [] if a <= SLACK else [f"not weakly connected but a={a}"]


def check_quadratic(G, rng):
    x = rng.standard_normal(G.n)
    lhs = float(x @ laplacian_matrix(G) @ x)
    rhs = sum(w * hyperedge_quadratic(x, e, G.directed) for e, w in zip(G.edges, G.weight_array()))
    return [] if abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs)) else [f"x^T L x={lhs} vs edge sum {rhs}"]


def check_zero_sums(G, rng):
    L = laplacian_matrix(G)
    scale = max(1.0, float(np.abs(L).max()))
    out = []
    if np.abs(L.sum(axis=0)).max() > 1e-12 * scale:
        out.append("column sums of phi(L) are not zero")
    if not G.directed and np.abs(L.sum(axis=1)).max() > 1e-12 * scale:
        out.append("row sums of phi(L) are not zero")
    return out


def check_oracle(G, rng):
    """Sparse Laplacian matrix equals the dense linear representation (small ``n`` only)."""
    if G.n > 6:
        return []
    dense = tc.linear_representation(laplacian_tensor(G))
    diff = float(np.abs(dense - laplacian_matrix(G)).max())
    return [] if diff <= ORACLE_TOL else [f"oracle mismatch {diff}"]


def check_cut(G, rng):
    S = [int(v) for v in np.flatnonzero(rng.random(G.n) < 0.5)]
    ind = np.zeros(G.n)
    ind[S] = 1.0
    lhs, rhs = cut_value(G, S), float(ind @ laplacian_matrix(G) @ ind)
    return [] if abs(lhs - rhs) <= 1e-9 * max(1.0, rhs) else [f"S={S}: cut {lhs} vs 1_S^T L 1_S {rhs}"]


def check_isoperimetric(G, rng):
    """Circle reduction doubles the isoperimetric number of a 3-uniform hypergraph."""
    if G.size != 3 or G.n > 12:
        return []
    i_g = isoperimetric_number(G)
    i_r = circle_reduction(G).isoperimetric_number()
    return [] if abs(i_r - 2 * i_g) <= 1e-9 else [f"i(r(G))={i_r} != 2 i(G)={2 * i_g}"]


def check_sandwich(G, rng):
    """Lower and upper edge-addition bounds bracket the true value when they apply."""
    if G.directed or G.size != 3 or not is_connected(G):
        return []
    sp = spectrum(G)
    if sp.eigenvalues[2] - sp.eigenvalues[1] <= 1e-4:
        return []
    present = set(G.edges)
    for _ in range(20):
        E0 = tuple(sorted(int(v) for v in rng.choice(G.n, size=3, replace=False)))
        if E0 not in present:
            break
    else:
        return []
    a_new = algebraic_connectivity(G.add_edge(E0))
    out = []
    upper = add_edge_upper_bound(G, E0)
    if a_new > upper + SLACK:
        out.append(f"E0={E0}: a(G+E0)={a_new} > upper {upper}")
    lb = add_edge_lower_bound(G, E0)
    if lb.valid and lb.root > a_new + SLACK:
        out.append(f"E0={E0}: lower root {lb.root} > a(G+E0)={a_new}")
    return out


def _random_dense(rng, order, dim):
    return tc.DenseTensor(rng.standard_normal((dim,) * order))


def check_tensor_algebra(rng):
    dim = int(rng.integers(2, 5))
    oa, ob, oc = (int(rng.integers(2, 4)) for _ in range(3))
    A, B, C = (_random_dense(rng, o, dim) for o in (oa, ob, oc))
    out = []
    left = tc.tensor_product(tc.tensor_product(A, B), C).values
    right = tc.tensor_product(A, tc.tensor_product(B, C)).values
    if np.abs(left - right).max() > ORACLE_TOL * max(1.0, np.abs(left).max()):
        out.append(f"associativity fails (dim={dim}, orders={oa},{ob},{oc})")
    phi_ab = tc.linear_representation(tc.tensor_product(A, B))
    prod = tc.linear_representation(A) @ tc.linear_representation(B)
    if np.abs(phi_ab - prod).max() > ORACLE_TOL * max(1.0, np.abs(prod).max()):
        out.append(f"phi not multiplicative (dim={dim}, orders={oa},{ob})")
    x = rng.standard_normal(dim)
    if np.abs(tc.vector_tensor_product(x, A) - x @ tc.linear_representation(A)).max() > 1e-10:
        out.append("x^T A differs from x^T phi(A)")
    return out


UNDIRECTED_CHECKS = {
    "psd": check_psd,
    "components": check_components,
    "monotone": check_monotone,
    "superadditive": check_superadditive,
    "vertex_removal": check_vertex_removal,
    "k_vertex_removal": check_k_vertex_removal,
    "partition": check_partition,
    "main_bound": check_main_bound,
    "quadratic": check_quadratic,
    "zero_sums": check_zero_sums,
    "cut": check_cut,
    "isoperimetric": check_isoperimetric,
    "sandwich": check_sandwich,
}

DIRECTED_CHECKS = {
    "directed_not_weak": check_not_weak,
    "directed_superadditive": check_superadditive,
    "directed_vertex_removal": check_vertex_removal,
    "directed_k_vertex_removal": check_k_vertex_removal,
    "directed_partition": check_partition,
    "directed_main_bound": check_main_bound,
    "directed_quadratic": check_quadratic,
    "directed_zero_sums": check_zero_sums,
}


@dataclass
class SuiteReport:
    seed: int
    trials: int
    counts: dict[str, int] = field(default_factory=lambda: defaultdict(int))
    counterexamples: dict[str, list[str]] = field(default_factory=lambda: defaultdict(list))

    @property
    def ok(self) -> bool:
        return not any(self.counterexamples.values())

    def total_failures(self) -> int:
        return sum(len(v) for v in self.counterexamples.values())

    def to_dict(self) -> dict:
        return {"seed": self.seed, "trials": self.trials, "ok": self.ok,
                "checks": {k: {"runs": self.counts[k], "counterexamples": self.counterexamples.get(k, [])}
                           for k in sorted(self.counts)}}


def run_all(seed: int = 42, trials: int = 200, checks: set[str] | None = None) -> SuiteReport:
    rep = SuiteReport(seed, trials)

    def run(name, fn, G, rng):
        if checks is not None and name not in checks:
            return
        rep.counts[name] += 1
        for msg in fn(G, rng):
            rep.counterexamples[name].append(f"seed={seed} trial={t}: {msg} [{_desc(G)}]")

    for t in range(trials):
        rng = _rng(seed, t, 0)
        G = random_instance(rng)
        for name, fn in UNDIRECTED_CHECKS.items():
            run(name, fn, G, rng)
        D = random_instance(_rng(seed, t, 1), directed=True)
        for name, fn in DIRECTED_CHECKS.items():
            run(name, fn, D, rng)
        small_rng = _rng(seed, t, 2)
        S = random_instance(small_rng, directed=bool(t % 2), n_range=(3, 6), sizes=(2, 3, 4), max_edges=6)
        run("oracle", check_oracle, S, small_rng)
        if checks is None or "tensor_algebra" in checks:
            rep.counts["tensor_algebra"] += 1
            for msg in check_tensor_algebra(_rng(seed, t, 3)):
                rep.counterexamples["tensor_algebra"].append(f"seed={seed} trial={t}: {msg}")
    return rep
