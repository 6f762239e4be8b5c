from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from curvhom.exprparse import to_element
from curvhom.linalg import WindowOverflow
from curvhom.poly import Generator, PolyElement, TruncatedPolyAlgebra
from curvhom.twisted import (GaussManin, LaurentForm, PotentialFamily, TwistedDeRham, d_partial, family_scan,
                             gm_flatness_check, gm_operator, hkr_check, milnor_number, random_cubic_family,
                             scan_csv, twisted_cohomology, wedge)


def pot(text, *names, trunc=24):
    alg = TruncatedPolyAlgebra([Generator(n) for n in (names or ("x",))], trunc)
    return to_element(text, alg)


@pytest.mark.parametrize("text,names,total", [
    ("x^2", ("x",), 1),
    ("x^3", ("x",), 2),
    ("x^4 - x", ("x",), 3),
    ("x^3 + y^2", ("x", "y"), 2),
    ("x^2*y + y^3", ("x", "y"), 4),
])
def test_twisted_dimension_is_milnor_number(text, names, total):
    W = pot(text, *names)
    r = twisted_cohomology(TwistedDeRham(W, 6))
    assert r["stable"]
    assert r["total"] == total == milnor_number(W)
    # everything sits in top form degree
    assert r["dims"][len(names)] == total


def test_zero_potential_is_de_rham():
    r = twisted_cohomology(TwistedDeRham(pot("0*x"), 5))
    assert r["dims"] == {0: 1, 1: 0}


def test_forms_algebra():
    x = {((1, 0), ()): Fraction(1)}
    dx = d_partial(x, [0, 1])
    assert dx == {((0, 0), (0,)): 1}
    y = {((0, 1), ()): Fraction(1)}
    dy = d_partial(y, [0, 1])
    assert wedge(dx, dy) == {((0, 0), (0, 1)): 1}
    assert wedge(dy, dx) == {((0, 0), (0, 1)): -1}
    assert wedge(dx, dx) == {}


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=15, deadline=None)
def test_euler_characteristic_of_truncation_ignores_w(coeffs):
    alg = TruncatedPolyAlgebra([Generator("x"), Generator("y")], 24)
    monos = [(2, 0), (1, 1), (0, 3), (3, 0)]
    W = PolyElement(alg, {m: Fraction(c) for m, c in zip(monos, coeffs) if c})
    e = TwistedDeRham(W, 5).quotient_complex_euler()
    assert e["chain"] == e["cohomology"] == 1


def test_hkr_intertwines_exactly():
    r = hkr_check(pot("x^2"), 6, 4)
    assert r["holds"] and r["words_checked"] > 100


def test_hkr_in_two_variables():
    r = hkr_check(pot("x^2*y + y^2", "x", "y"), 5, 3)
    assert r["holds"]


def test_gm_flat_for_standard_family():
    fam = PotentialFamily.parse("x^3 - t*x", grid=[0])
    r = gm_flatness_check(fam, 3, 3)
    assert r["flat"] and r["witness"] is None
    b = r["bracket_terms_nonzero"]
    assert b["[dW,dtW]"] == 0 and b["[dDR,dt]"] == 0
    assert b["[dDR,dtW]"] > 0 and b["[dW,dt]"] > 0
    assert r["middle_terms_cancel"]


@pytest.mark.parametrize("seed", range(3))
def test_gm_flat_for_random_families(seed):
    assert gm_flatness_check(random_cubic_family(2, seed), 2, 3)["flat"]


def test_gm_operator_matrix_and_window():
    fam = PotentialFamily.parse("x^3 - t*x")
    g = gm_operator(fam, 2, 3)
    m = g["matrix"]
    assert m.shape == (len(g["target"]), len(g["source"]))
    assert m.is_u_matrix()
    with pytest.raises(WindowOverflow):
        GaussManin(fam, 0)
    with pytest.raises(WindowOverflow):
        LaurentForm(1, {(2, ((0, 0), ())): 1})


def test_family_scan_constant():
    fam = PotentialFamily.parse("x^3 - t*x", grid=[-1, 0, 1, 2])
    r = family_scan(fam)
    assert r["verdict"] == "constant"
    assert [row["total"] for row in r["rows"]] == [2, 2, 2, 2]
    csv = scan_csv(r)
    assert csv.splitlines()[0] == "t,dim_even,dim_odd,stable"
    assert len(csv.splitlines()) == 5


def test_family_scan_detects_jump():
    # x^2 + t x^3 loses a critical point at t = 0
    fam = PotentialFamily.parse("x^2 + t*x^3", grid=[0, 1])
    r = family_scan(fam)
    assert r["verdict"] == "jump"


def test_specialization():
    fam = PotentialFamily.parse("x^3 - t*x", grid=[2])
    W = fam.at(2)
    assert W == to_element("x^3 - 2*x", W.alg)
