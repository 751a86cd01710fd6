"""Structured and random uniform hypergraphs.

The structured families follow the 1-based cyclic convention ``v_{a//n}``:
index ``a`` is reduced mod ``n`` into ``1..n``. Internally everything is 0-based.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .hypergraph import Hypergraph


def _cyc(a: int, n: int) -> int:
    """0-based vertex for the 1-based cyclic index ``a`` on ``n`` vertices."""
    return (a - 1) % n


def hyperring(n: int) -> Hypergraph:
    """3-uniform hyperring: ``{v_i, v_{i+1}, v_{i+2}}`` for ``i = 1..n`` (cyclic)."""
    if n < 5:
        raise ValueError("hyperring needs n >= 5 so consecutive triples stay distinct")
    edges = [(_cyc(i, n), _cyc(i + 1, n), _cyc(i + 2, n)) for i in range(1, n + 1)]
    return Hypergraph(n, 3, tuple(edges))


def complete_hypergraph(n: int, r: int = 3) -> Hypergraph:
    if not 2 <= r <= n:
        raise ValueError("need 2 <= r <= n")
    return Hypergraph(n, r, tuple(itertools.combinations(range(n), r)))


def complete_star(n: int) -> Hypergraph:
    """``{v_i, v_j, v_{n+1}}`` for all ``1 <= i < j <= n``; the centre is vertex ``n``."""
    if n < 2:
        raise ValueError("complete star needs n >= 2")
    return Hypergraph(n + 1, 3, tuple((i, j, n) for i, j in itertools.combinations(range(n), 2)))


def _ring_families(n: int, offset: int) -> list[tuple[int, int, int]]:
    """Step-1 and step-2 rings on the block ``offset .. offset+n-1``.

    The step-2 family walks ``i = 2k`` for ``k = 1..n``. For odd ``n`` this is
    the plain ring ``{v_i, v_{i+2}, v_{i+4}}``; for even ``n`` it stays on the
    even-indexed vertices and repeats triples (``n = 6`` yields one triple six
    times, ``n = 8`` four triples twice each). This is the construction that
    reproduces the published multi-star connectivity values for even ``n``.
    """
    out = []
    for i in range(1, n + 1):
        out.append(tuple(offset + _cyc(i + s, n) for s in (0, 1, 2)))
    for k in range(1, n + 1):
        i = 2 * k
        out.append(tuple(offset + _cyc(i + s, n) for s in (0, 2, 4)))
    return out


def multi_star(n: int, hubs: int = 1) -> Hypergraph:
    """Star between two halves of ``n`` vertices through ``hubs`` centre vertices,
    plus step-1 and step-2 rings on each half.

    Vertices ``0..n-1`` and ``n..2n-1`` are the halves; hubs are ``2n, 2n+1``.
    """
    if n < 5:
        raise ValueError("multi-star needs n >= 5")
    if hubs not in (1, 2):
        raise ValueError("hubs must be 1 or 2")
    edges: list[tuple[int, ...]] = []
    for t in range(hubs):
        edges += [(i, j, 2 * n + t) for i in range(n) for j in range(n, 2 * n)]
    edges += _ring_families(n, 0)
    edges += _ring_families(n, n)
    return Hypergraph(2 * n + hubs, 3, tuple(edges))


def _sample_subsets(n: int, r: int, count: int, rng: np.random.Generator) -> list[tuple[int, ...]]:
    total = math.comb(n, r)
    if count > total:
        raise ValueError(f"cannot draw {count} distinct {r}-subsets of {n} vertices (only {total})")
    if count < 0:
        raise ValueError("edge count must be non-negative")
    if total <= 200_000:
        combos = list(itertools.combinations(range(n), r))
        picks = rng.choice(total, size=count, replace=False)
        return [combos[k] for k in sorted(picks)]
    seen: set[tuple[int, ...]] = set()
    out = []
    while len(out) < count:
        e = tuple(sorted(int(v) for v in rng.choice(n, size=r, replace=False)))
        if e not in seen:
            seen.add(e)
            out.append(e)
    return out


def random_uniform(n: int, r: int, edge_count: int, seed: int | None = 0) -> Hypergraph:
    """``edge_count`` distinct ``r``-subsets drawn uniformly without replacement."""
    rng = np.random.default_rng(seed)
    return Hypergraph(n, r, tuple(_sample_subsets(n, r, edge_count, rng)))


def random_directed(n: int, r: int, edge_count: int, seed: int | None = 0) -> Hypergraph:
    """Distinct ``r``-subsets as above, each with a uniformly chosen head."""
    rng = np.random.default_rng(seed)
    edges = []
    for e in _sample_subsets(n, r, edge_count, rng):
        h = e[int(rng.integers(r))]
        edges.append(tuple(v for v in e if v != h) + (h,))
    return Hypergraph(n, r, tuple(edges), directed=True)
