"""Inertia of partial transposes of bipartite positive semidefinite matrices."""
__version__ = "0.1.0"

from ._core import BACKEND
from .linalg import EigenDecomposition, SvdDecomposition, eig_hermitian, rank, svd
from .ptrans import (
    BipartiteDims,
    Inertia,
    ProductVector,
    inertia,
    is_product_vector,
    partial_transpose,
    pencil_product_vectors,
)

__all__ = [
    "BACKEND", "BipartiteDims", "EigenDecomposition", "Inertia", "ProductVector", "SvdDecomposition",
    "eig_hermitian", "inertia", "is_product_vector", "partial_transpose", "pencil_product_vectors",
    "rank", "svd", "__version__",
]
