from fractions import Fraction

import pytest

from curvhom.exprparse import ParseError, to_element, variables
from curvhom.poly import Generator, KaehlerForm, PolyElement, TruncatedPolyAlgebra


def test_parse_and_arithmetic():
    f = to_element("x^3 - t*x + 1/2", trunc=8)
    assert f.coefficient((0, 0)) == Fraction(1, 2)
    assert variables("x^3 - t*x") == ["x", "t"]
    alg = TruncatedPolyAlgebra([Generator("x"), Generator("y")], 3)
    x, y = alg.gen("x"), alg.gen("y")
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x ** 2) * (y ** 2) == alg.zero()  # beyond the truncation


def test_parse_errors():
    with pytest.raises(ParseError):
        to_element("x^")
    alg = TruncatedPolyAlgebra([Generator("x")], 4)
    with pytest.raises(ParseError):
        to_element("y", alg)


def test_odd_generators_anticommute():
    alg = TruncatedPolyAlgebra([Generator("a", 1, 1), Generator("b", 1, 1)], 4)
    a, b = alg.gen("a"), alg.gen("b")
    assert a * b == -(b * a)
    assert a * a == alg.zero()


def test_partial_derivatives():
    alg = TruncatedPolyAlgebra([Generator("x"), Generator("y")], 6)
    f = to_element("x^3*y + 2*y^2", alg)
    assert f.partial("x") == to_element("3*x^2*y", alg)
    assert f.partial("y") == to_element("x^3 + 4*y", alg)


def test_de_rham_d_squares_to_zero():
    alg = TruncatedPolyAlgebra([Generator("x"), Generator("y"), Generator("z")], 6)
    f = KaehlerForm.from_function(to_element("x^2*y + y*z^3", alg))
    assert not f.d().d().terms
