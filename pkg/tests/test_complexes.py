import pytest

from curvhom.complexes import (ChainComplex, ComplexError, FilteredComplex, brutal_filtration,
                               cohomology_dims, spectral_sequence)
from curvhom.linalg import SparseMatrix


def koszul_one(n):
    """0 -> Q^n --(sum)--> Q -> 0 in degrees 0, 1."""
    return ChainComplex({0: n, 1: 1}, {0: SparseMatrix(1, n, [(0, j, 1) for j in range(n)])})


def test_cohomology():
    assert cohomology_dims(koszul_one(3)) == {0: 2, 1: 0}


def test_square_zero_enforced():
    d0 = SparseMatrix.from_dense([[1]])
    d1 = SparseMatrix.from_dense([[1]])
    with pytest.raises(ComplexError):
        ChainComplex({0: 1, 1: 1, 2: 1}, {0: d0, 1: d1})


def test_spectral_sequence_converges_on_brutal_filtration():
    c = koszul_one(4)
    pages = spectral_sequence(FilteredComplex(c, brutal_filtration(c)), r_max=4)
    h = cohomology_dims(c)
    assert all(pages[-1].total(n) == h.get(n, 0) for n in c.degrees())
    assert pages[-1].to_csv().startswith("p,q,dim")
