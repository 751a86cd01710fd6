import numpy as np

from hyperconn.hypergraph import Hypergraph
from hyperconn.proptest_suite import (
    DIRECTED_CHECKS,
    UNDIRECTED_CHECKS,
    check_main_bound,
    check_not_weak,
    random_instance,
    run_all,
    _rng,
)


def test_full_suite_seed_42():
    rep = run_all(seed=42, trials=200)
    assert rep.ok, "\n".join(m for v in rep.counterexamples.values() for m in v[:3])
    for name in list(UNDIRECTED_CHECKS) + list(DIRECTED_CHECKS) + ["oracle", "tensor_algebra"]:
        assert rep.counts[name] == 200


def test_instances_reproducible():
    a = random_instance(_rng(42, 7))
    b = random_instance(_rng(42, 7))
    assert a == b


def test_instances_include_repeats():
    reps = sum(random_instance(_rng(1, t)).num_edges > len(set(random_instance(_rng(1, t)).edges))
               for t in range(100))
    assert reps > 10


def test_disconnected_directed_example():
    D = Hypergraph(6, 3, ((0, 1, 2), (3, 4, 5)), directed=True)
    assert check_not_weak(D, np.random.default_rng(0)) == []


def test_check_catches_violation(monkeypatch):
    # a broken spectral routine must surface as a counterexample
    import hyperconn.proptest_suite as ps
    monkeypatch.setattr(ps, "algebraic_connectivity", lambda G: 1e6)
    G = Hypergraph(5, 3, ((0, 1, 2), (2, 3, 4)))
    assert check_main_bound(G, np.random.default_rng(0))


def test_subset_selection():
    rep = run_all(seed=1, trials=3, checks={"psd"})
    assert set(rep.counts) == {"psd"}
