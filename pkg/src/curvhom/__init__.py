"""Exact computations for curved algebras, critical loci and twisted de Rham complexes.

The submodules are imported lazily by users; the names below are the ones
most scripts need.
"""

__version__ = "0.1.0"

from ._backend import BACKEND  # noqa: E402
from .linalg import SparseMatrix, rank  # noqa: E402
from .poly import Generator, PolyElement, TruncatedPolyAlgebra  # noqa: E402
from .complexes import ChainComplex, cohomology_dims  # noqa: E402

__all__ = [
    "BACKEND",
    "ChainComplex",
    "Generator",
    "PolyElement",
    "SparseMatrix",
    "TruncatedPolyAlgebra",
    "cohomology_dims",
    "rank",
]
