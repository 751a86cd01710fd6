"""Spectral connectivity of uniform hypergraphs via a hypergraph-compatible tensor product."""

from .hypergraph import Hypergraph, Multigraph, laplacian_matrix
from .spectral import SpectralSummary, algebraic_connectivity, fiedler_vector, spectrum
from .tensor_core import DenseTensor, tensor_product

__all__ = [
    "DenseTensor",
    "Hypergraph",
    "Multigraph",
    "SpectralSummary",
    "algebraic_connectivity",
    "fiedler_vector",
    "laplacian_matrix",
    "spectrum",
    "tensor_product",
]
__version__ = "0.1.0"
