"""Dense tensors and the hypergraph-compatible tensor product.

This module is the brute-force reference path. Every sparse computation in
the package (Laplacian assembly, quadratic forms, hypergraph products) is
checked against it on small instances, so clarity wins over speed here.

For ``A`` of order ``m+1`` and ``B`` of order ``k+1``, both of dimension ``n``::

    C[i1..im, j] = sum_t A[i1..im, t] * sum_{j1..jk} B[j1..jk, j] * [t in {j1..jk}]

The inner sum over ``B`` is the ``n x n`` matrix returned by
:func:`linear_representation`, so the product is a contraction of the last
axis of ``A`` with ``phi(B)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

# n^order guard; the oracle is meant for n <= 8, order <= 4 but a few checks
# (5-uniform on 6 vertices) are slightly larger.
MAX_DENSE_ENTRIES = 200_000


@dataclass(frozen=True)
class DenseTensor:
    """Order-``order`` real tensor with every axis of length ``dim``.

    Values are stored as a C-ordered (row-major) numpy array of shape
    ``(dim,) * order``; index tuples are 0-based.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float, order="C")
        if arr.ndim < 1:
            raise ValueError("tensor order must be >= 1")
        n = arr.shape[0]
        if n < 1 or any(s != n for s in arr.shape):
            raise ValueError(f"tensor must be cubical, got shape {arr.shape}")
        if arr.size > MAX_DENSE_ENTRIES:
            raise ValueError(
                f"dense tensor with {arr.size} entries exceeds the oracle limit {MAX_DENSE_ENTRIES}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def order(self) -> int:
        return self.values.ndim

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    @classmethod
    def zeros(cls, order: int, dim: int) -> "DenseTensor":
        return cls(np.zeros((dim,) * order))

    def __add__(self, other: "DenseTensor") -> "DenseTensor":
        return DenseTensor(self.values + other.values)

    def __sub__(self, other: "DenseTensor") -> "DenseTensor":
        return DenseTensor(self.values - other.values)

    def __mul__(self, scalar: float) -> "DenseTensor":
        return DenseTensor(self.values * scalar)

    __rmul__ = __mul__

    def nonzero_entries(self) -> dict[tuple[int, ...], float]:
        return {tuple(int(i) for i in idx): float(self.values[idx]) for idx in zip(*np.nonzero(self.values))}


def diagonal_tensor(values, order: int) -> DenseTensor:
    """Tensor with ``d[i,...,i] = values[i]`` and zeros elsewhere."""
    if order < 2:
        raise ValueError("diagonal tensors need order >= 2")
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    arr = np.zeros((n,) * order)
    for i, v in enumerate(values):
        arr[(i,) * order] = v
    return DenseTensor(arr)


def identity_tensor(order: int, n: int) -> DenseTensor:
    """Right identity of the product: ``A * I == A`` for every ``A`` of this order."""
    return diagonal_tensor(np.ones(n), order)


def linear_representation(A: DenseTensor) -> np.ndarray:
    """Matrix ``phi(A)`` of the row-vector map ``x -> x^T A``.

    Row ``k`` is ``e_k^T A``, so ``vector_tensor_product(x, A) == x @ phi(A)``.
    Entry ``[t, j]`` sums ``A[i1..im, j]`` over index tuples containing ``t``,
    each tuple counted once however often ``t`` repeats in it.
    """
    if A.order < 2:
        raise ValueError("linear representation needs order >= 2")
    n, m = A.dim, A.order - 1
    phi = np.zeros((n, n))
    for head in itertools.product(range(n), repeat=m):
        row = A.values[head]
        if not row.any():
            continue
        for t in set(head):
            phi[t] += row
    return phi


def tensor_product(A: DenseTensor, B: DenseTensor) -> DenseTensor:
    """The hypergraph-compatible product ``A * B``; result has the order of ``A``.

    ``A`` may have order 1, in which case this is the vector-tensor product.
    """
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    if B.order == 1:
        # k = 0: the indicator over an empty index set is never true
        return DenseTensor(np.zeros_like(A.values))
    return DenseTensor(np.tensordot(A.values, linear_representation(B), axes=([-1], [0])))


def vector_tensor_product(x, A: DenseTensor) -> np.ndarray:
    """Row vector ``x^T A`` with ``(x^T A)_j = sum A[i1..im, j] (x_i1 + ... + x_im)``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (A.dim,):
        raise ValueError(f"vector of length {x.shape} does not match tensor dimension {A.dim}")
    return tensor_product(DenseTensor(x), A).values.copy()


def quadratic_form(x, A: DenseTensor) -> float:
    """``(x^T A) x``."""
    x = np.asarray(x, dtype=float)
    return float(vector_tensor_product(x, A) @ x)
