"""Greedy hyperedge adding and rewiring driven by the Fiedler-vector score.

The score of a candidate hyperedge ``S`` is ``x^T L_S x = |S| sum x_i^2 - (sum x_i)^2``.
For a fixed set of other members this is convex in each coordinate, so the
unconstrained maximiser over ``r``-subsets is a union of the ``k`` smallest and
``r - k`` largest entries of ``x``. Existing hyperedges break that shortcut, so
:func:`best_addition` searches a pool of extreme vertices exhaustively and
widens the pool until a bound certifies nothing outside it can do better.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .hypergraph import Hypergraph
from .spectral import algebraic_connectivity, spectrum

# Relative slack used when comparing scores for ties.
SCORE_TIE_TOL = 1e-12
MAX_ENUMERATION = 5_000_000


def subset_score(x: np.ndarray, S: Sequence[int]) -> float:
    v = np.asarray(x, dtype=float)[list(S)]
    return float(len(v) * (v @ v) - v.sum() ** 2)


def _scores(x: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    v = x[subsets]
    return subsets.shape[1] * np.einsum("ij,ij->i", v, v) - v.sum(axis=1) ** 2


def _best_in(x, combos, forbidden, tol):
    """Best (score, lexicographically smallest subset) over ``combos`` minus ``forbidden``."""
    if len(combos) == 0:
        return None
    sc = _scores(x, combos)
    order = np.lexsort(tuple(combos[:, k] for k in reversed(range(combos.shape[1]))) + (-sc,))
    best = None
    for k in order:
        s = float(sc[k])
        if best is not None and s < best[0] - tol:
            break
        cand = tuple(int(v) for v in combos[k])
        if cand in forbidden:
            continue
        if best is None or s > best[0] + tol or (abs(s - best[0]) <= tol and cand < best[1]):
            best = (s, cand)
    return best


def _outside_bound(x: np.ndarray, order: np.ndarray, p: int, r: int) -> float:
    """Max score of any ``r``-subset containing a vertex outside the pool.

    For a fixed member ``c`` the best completion uses extreme order statistics
    of the remaining vertices, which for a middle ``c`` are the global extremes.
    """
    xs = x[order]
    n = len(xs)
    middle = xs[p:n - p]
    if middle.size == 0:
        return -math.inf
    best = -math.inf
    for k in range(r):
        others = np.concatenate([xs[:k], xs[n - (r - 1 - k):] if r - 1 - k > 0 else xs[:0]])
        s1, s2 = others.sum(), others @ others
        tot = r * (s2 + middle**2) - (s1 + middle) ** 2
        best = max(best, float(tot.max()))
    return best


def best_addition(G: Hypergraph, x, exclude: Iterable[Sequence[int]] = ()) -> tuple[tuple[int, ...], float]:
    """Absent ``(m+1)``-subset with the largest score; ties go to the lexicographically smallest."""
    if G.directed:
        raise ValueError("hyperedge addition scoring is defined for undirected hypergraphs")
    x = np.asarray(x, dtype=float)
    n, r = G.n, G.size
    if x.shape != (n,):
        raise ValueError("score vector must have one entry per vertex")
    forbidden = set(G.edges) | {tuple(sorted(int(v) for v in e)) for e in exclude}
    if len(set(forbidden)) >= math.comb(n, r):
        raise ValueError("no absent hyperedge remains")
    tol = SCORE_TIE_TOL * max(1.0, float(np.max(np.abs(x))) ** 2 * r * r)
    order = np.argsort(x, kind="stable")
    p = r
    while True:
        if 2 * p >= n:
            pool = np.arange(n)
        else:
            pool = np.sort(np.concatenate([order[:p], order[n - p:]]))
        if math.comb(len(pool), r) > MAX_ENUMERATION:
            raise ValueError("candidate search exceeds the enumeration budget")
        combos = np.array(list(itertools.combinations(pool.tolist(), r)), dtype=np.intp)
        best = _best_in(x, combos, forbidden, tol)
        if len(pool) == n:
            assert best is not None
            return best[1], best[0]
        # strict margin so a tie outside the pool cannot win the lexicographic break
        if best is not None and best[0] > _outside_bound(x, order, p, r) + tol:
            return best[1], best[0]
        p *= 2


def worst_existing(G: Hypergraph, x) -> tuple[tuple[int, ...], float]:
    """Existing hyperedge with the smallest score; ties go to the lexicographically smallest."""
    if G.num_edges == 0:
        raise ValueError("hypergraph has no hyperedges")
    x = np.asarray(x, dtype=float)
    sc = _scores(x, G.edge_array())
    tol = SCORE_TIE_TOL * max(1.0, float(np.max(np.abs(x))) ** 2 * G.size**2)
    low = float(sc.min())
    picks = [G.edges[k] for k in np.flatnonzero(sc <= low + tol)]
    e = min(picks)
    return e, subset_score(x, e)


@dataclass
class RewireStep:
    added: tuple[int, ...]
    a_before: float
    a_after: float
    score_added: float
    removed: tuple[int, ...] | None = None
    score_removed: float | None = None


@dataclass
class RewireReport:
    mode: str
    steps: list[RewireStep] = field(default_factory=list)
    stopped_early: bool = False
    reason: str = ""

    def to_dict(self) -> dict:
        return {"mode": self.mode, "stopped_early": self.stopped_early, "reason": self.reason,
                "steps": [asdict(s) for s in self.steps]}

    def trajectory(self) -> list[tuple[int, float]]:
        if not self.steps:
            return []
        return [(0, self.steps[0].a_before)] + [(i + 1, s.a_after) for i, s in enumerate(self.steps)]


def rewire(G: Hypergraph, N: int, mode: str = "add") -> tuple[Hypergraph, RewireReport]:
    """Run ``N`` greedy iterations. ``mode`` is ``"add"`` or ``"rewire"``.

    In rewire mode the lowest-scoring hyperedge is removed first and the new
    hyperedge may not be the one just removed.
    """
    if mode not in ("add", "rewire"):
        raise ValueError("mode must be 'add' or 'rewire'")
    if N < 0:
        raise ValueError("N must be non-negative")
    report = RewireReport(mode)
    for _ in range(N):
        sp = spectrum(G)
        x, a0 = sp.fiedler, sp.algebraic_connectivity
        removed = score_removed = None
        H = G
        if mode == "rewire":
            if G.num_edges == 0:
                report.stopped_early, report.reason = True, "no hyperedge left to remove"
                break
            removed, score_removed = worst_existing(G, x)
            H = G.remove_edge(removed)
        try:
            added, score = best_addition(H, x, exclude=[removed] if removed else [])
        except ValueError as exc:
            report.stopped_early, report.reason = True, str(exc)
            break
        G = H.add_edge(added)
        report.steps.append(RewireStep(added, a0, algebraic_connectivity(G), score, removed, score_removed))
    return G, report
