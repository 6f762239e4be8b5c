import pytest

from curvhom.exprparse import to_element
from curvhom.mf import (MatrixFactorization, MFHomComplex, koszul_mf, mf_direct_sum, mf_hom_cohomology,
                        mf_shift, mf_tensor, mf_validate, mf_zero)
from curvhom.poly import Generator, TruncatedPolyAlgebra


def ring(*names, trunc=6):
    return TruncatedPolyAlgebra([Generator(n) for n in names], trunc)


def square():
    R = ring("x")
    return R, to_element("x^2", R)


def test_end_of_x_x():
    R, f = square()
    a = koszul_mf(R, f, "x", "x")
    for D in (6, 8):
        r = mf_hom_cohomology(a, a, D)
        assert (r["even"], r["odd"]) == (1, 1) and r["stable"]


def test_invalid_factorization_has_witness():
    R, f = square()
    with pytest.raises(ValueError):
        koszul_mf(R, f, "x", "x^2")
    m = MatrixFactorization(R, f, (1, 1), [["x"]], [["x^2"]], check=False)
    rep = mf_validate(m)
    assert not rep["valid"] and rep["witness"]["got"] == "x^3"


def test_unit_factorization_is_contractible():
    R, f = square()
    triv = koszul_mf(R, f, "1", "x^2")
    a = koszul_mf(R, f, "x", "x")
    for src, tgt in ((triv, triv), (a, triv), (triv, a)):
        r = mf_hom_cohomology(src, tgt, 6)
        assert (r["even"], r["odd"]) == (0, 0)


def test_shift_is_an_involution_and_exchanges_parity():
    R = ring("x", "y")
    f = to_element("x*y", R)
    a = koszul_mf(R, f, "x", "y")
    assert mf_shift(mf_shift(a)) == a
    r = mf_hom_cohomology(a, a, 6)
    s = mf_hom_cohomology(a, mf_shift(a), 6)
    assert (r["even"], r["odd"]) == (1, 0)
    assert (s["even"], s["odd"]) == (r["odd"], r["even"])
    # the chain-level parts swap as well
    c, cs = MFHomComplex(a, a, 4), MFHomComplex(a, mf_shift(a), 4)
    assert len(c.even_basis) == len(cs.odd_basis)


def test_zero_and_direct_sum():
    R, f = square()
    a = koszul_mf(R, f, "x", "x")
    z = mf_zero(R, f)
    r = mf_hom_cohomology(a, z, 6)
    assert (r["even"], r["odd"]) == (0, 0)
    s = mf_direct_sum(a, koszul_mf(R, f, "1", "x^2"))
    r = mf_hom_cohomology(s, s, 6)
    assert (r["even"], r["odd"]) == (1, 1)


def test_knorrer_style_tensor():
    R = ring("x")
    f = to_element("x^3", R)
    a = koszul_mf(R, f, "x", "x^2")
    base = mf_hom_cohomology(a, a, 6)
    assert (base["even"], base["odd"]) == (1, 1)
    S = ring("y", "z")
    yz = koszul_mf(S, to_element("y*z", S), "y", "z")
    t = mf_tensor(a, yz)
    r = mf_hom_cohomology(t, t, 6)
    assert (r["even"], r["odd"]) == (1, 1)
    # with a single extra variable the dimensions double
    T = ring("y")
    yy = koszul_mf(T, to_element("y^2", T), "y", "y")
    t2 = mf_tensor(a, yy)
    r2 = mf_hom_cohomology(t2, t2, 6)
    assert (r2["even"], r2["odd"]) == (2, 2)


def test_json_roundtrip():
    R, f = square()
    a = koszul_mf(R, f, "x", "x")
    assert MatrixFactorization.from_json(a.to_json()) == a
