import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyperconn.arccc import (
    ArcccInstance,
    knapsack_max,
    lambda2,
    postprocess,
    project,
    recovery_instance,
    solve,
    zipf_hypergraph,
)
from hyperconn.hypergraph import Hypergraph, is_connected, laplacian_matrix
from hyperconn.spectral import ones_complement_basis

DESK = ArcccInstance(5, ((0, 1, 2), (2, 3, 4), (0, 3, 4)), np.ones(3), 1.5)


def sdp_oracle(inst):
    cp = pytest.importorskip("cvxpy")
    K, n = len(inst.candidates), inst.n
    B = ones_complement_basis(n)
    mats = []
    for e in inst.candidates:
        L = laplacian_matrix(Hypergraph(n, inst.size, (e,)))
        mats.append(B.T @ L @ B)
    w, s = cp.Variable(K), cp.Variable()
    M = sum(w[k] * mats[k] for k in range(K))
    cons = [w >= 0, w <= 1, inst.costs @ w <= inst.budget, (M + M.T) / 2 - s * np.eye(n - 1) >> 0]
    cp.Problem(cp.Maximize(s), cons).solve(solver=cp.CLARABEL)
    return float(s.value)


def random_instance(seed, n=7, k=12):
    rng = np.random.default_rng(seed)
    combos = list(itertools.combinations(range(n), 3))
    picks = rng.choice(len(combos), size=k, replace=False)
    costs = rng.uniform(0.5, 2.0, size=k)
    return ArcccInstance(n, tuple(combos[p] for p in picks), costs, float(rng.uniform(0.2, 0.6) * costs.sum()))


# ---------------------------------------------------------------- validation


def test_validation():
    with pytest.raises(ValueError):
        ArcccInstance(4, ((0, 1, 2), (2, 1, 0)), np.ones(2), 1.0)
    with pytest.raises(ValueError):
        ArcccInstance(4, ((0, 1, 2),), np.array([0.0]), 1.0)
    with pytest.raises(ValueError):
        ArcccInstance(4, ((0, 1, 2),), np.ones(1), -1.0)
    with pytest.raises(ValueError):
        ArcccInstance(4, ((0, 1, 4),), np.ones(1), 1.0)


# ---------------------------------------------------------------- objective


def test_lambda2_matches_weighted_hypergraph():
    inst = random_instance(1)
    w = np.random.default_rng(0).uniform(size=len(inst.candidates))
    G = Hypergraph(inst.n, 3, inst.candidates, weights=tuple(w))
    assert lambda2(inst, w) == pytest.approx(np.linalg.eigvalsh(laplacian_matrix(G))[1], abs=1e-10)


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.floats(0, 1))
def test_concavity(seed, t):
    inst = random_instance(seed % 50)
    rng = np.random.default_rng(seed)
    a, b = rng.uniform(size=(2, len(inst.candidates)))
    mix = lambda2(inst, t * a + (1 - t) * b)
    assert mix >= t * lambda2(inst, a) + (1 - t) * lambda2(inst, b) - 1e-9


# ---------------------------------------------------------------- projection


@settings(max_examples=80)
@given(st.integers(0, 10**6))
def test_projection_is_nearest(seed):
    rng = np.random.default_rng(seed)
    K = int(rng.integers(1, 12))
    c = rng.uniform(0.1, 3, K)
    U = float(rng.uniform(0, c.sum()))
    v = rng.normal(0.5, 1.5, K)
    p = project(v, c, U)
    assert p.min() >= 0 and p.max() <= 1 and c @ p <= U + 1e-9
    # variational inequality: (v - p) . (z - p) <= 0 for feasible z
    for _ in range(20):
        z = project(rng.uniform(-1, 2, K), c, U)
        assert (v - p) @ (z - p) <= 1e-8


def test_projection_idempotent():
    c = np.array([1.0, 2.0, 3.0])
    p = project(np.array([2.0, 2.0, 2.0]), c, 2.5)
    np.testing.assert_allclose(project(p, c, 2.5), p, atol=1e-10)


def test_knapsack():
    g = np.array([3.0, 2.0, -1.0])
    c = np.array([1.0, 1.0, 1.0])
    assert knapsack_max(g, c, 1.5) == pytest.approx(4.0)
    assert knapsack_max(g, c, 10) == pytest.approx(5.0)


# ---------------------------------------------------------------- solver


def test_budget_zero():
    sol = solve(ArcccInstance(5, DESK.candidates, DESK.costs, 0.0))
    np.testing.assert_allclose(sol.weights, 0)
    assert sol.lambda2 == pytest.approx(0, abs=1e-12)


def test_budget_covers_everything():
    sol = solve(ArcccInstance(5, DESK.candidates, DESK.costs, 3.0))
    np.testing.assert_array_equal(sol.weights, 1)
    assert sol.iterations == 0 and sol.converged


def test_desk_instance_against_grid():
    grid = np.linspace(0, 1, 21)
    best = max(lambda2(DESK, w) for w in itertools.product(grid, repeat=3) if sum(w) <= 1.5 + 1e-12)
    for method in ("supergradient", "cutting-plane"):
        sol = solve(DESK, method=method)
        assert sol.lambda2 >= best - 1e-3
        assert sol.feasibility_gap <= 1e-9


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_against_sdp(seed):
    inst = random_instance(seed)
    opt = sdp_oracle(inst)
    cp_sol = solve(inst, method="cutting-plane")
    assert cp_sol.lambda2 == pytest.approx(opt, abs=1e-5)
    assert cp_sol.lambda2 + cp_sol.optimality_gap >= opt - 1e-6
    sg = solve(inst, method="supergradient", max_iters=3000)
    assert sg.lambda2 <= opt + 1e-7
    assert sg.lambda2 >= opt - 0.05 * max(1.0, opt)
    assert sg.feasibility_gap <= 1e-9


def test_history_monotone():
    sol = solve(random_instance(4), max_iters=300)
    assert all(b >= a for a, b in zip(sol.history, sol.history[1:]))


def test_bad_method():
    with pytest.raises(ValueError):
        solve(DESK, method="newton")


# ---------------------------------------------------------------- recovery pieces


def test_zipf_hypergraph():
    G = zipf_hypergraph(seed=0)
    assert is_connected(G) and len(G.multiplicities()) == 30
    assert max(G.multiplicities().values()) <= 8


def test_recovery_instance_budget():
    G = Hypergraph(5, 3, ((0, 1, 2), (0, 1, 2), (0, 1, 2), (0, 1, 2), (2, 3, 4)))
    inst, edges, w = recovery_instance(G)
    assert edges == [(0, 1, 2), (2, 3, 4)]
    np.testing.assert_allclose(w, [1.0, 0.25 ** (1 / 3)])
    assert inst.budget == pytest.approx(1.0 * 1.0 + 0.25 ** (1 / 3) * 2.0)
    assert len(inst.candidates) == 10
    np.testing.assert_allclose(inst.costs[2:], 2.0)


def test_postprocess():
    np.testing.assert_allclose(postprocess(np.array([0.5, 5e-5, 0.25])), [1.0, 0.0, 0.5])
    np.testing.assert_array_equal(postprocess(np.zeros(3)), 0)
