from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from curvhom.dcrit import (CyclicLInfinity, CyclicityError, PlusModelData, adjoint_map, break_cyclicity,
                           build_plus_model, dcrit_cohomology, koszul_dga, plus_model_from_g,
                           potential_from_cyclic, random_cyclic, random_plus_model, total_potential,
                           verify_lemma_AX, verify_lemma_fg)
from curvhom.exprparse import to_element
from curvhom.poly import Generator, TruncatedPolyAlgebra


def one_dim(l2=3):
    return CyclicLInfinity(1, [[1]], {2: {(0, 0): [l2]}})


def test_cubic_potential_and_adjoint():
    data = one_dim(3)
    f = potential_from_cyclic(data, 6)
    assert f == to_element("x0^3/2", f.alg)
    (adj,) = adjoint_map(data, 6)
    assert adj == to_element("3*x0^2/2", adj.alg)
    assert f.partial("x0") == adj


def test_non_cyclic_input_rejected():
    bad = CyclicLInfinity(2, [[1, 0], [0, 1]], {2: {(0, 0): [0, 1]}})
    assert not bad.is_cyclic()
    with pytest.raises(CyclicityError):
        potential_from_cyclic(bad, 4)
    w = bad.cyclicity_witness()
    assert w["k"] == 2


@given(st.integers(1, 3), st.integers(2, 4), st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_gradient_identity_random(dim, order, seed):
    data = random_cyclic(dim, order, seed=seed)
    assert data.is_cyclic()
    r = verify_lemma_AX(data, 6)
    assert r["holds"] and r["max_deviation"] == "0"


def test_negative_control_has_witness():
    data = random_cyclic(2, 3, seed=7)
    broken = break_cyclicity(data, seed=1)
    r = verify_lemma_AX(broken, 6)
    assert not r["holds"]
    assert r["witness"]["component"] in (0, 1)


def test_negative_control_impossible_in_dim_one():
    with pytest.raises(ValueError):
        break_cyclicity(one_dim(), 0)


def test_json_roundtrip():
    data = random_cyclic(2, 3, seed=3)
    again = CyclicLInfinity.from_json(data.to_json())
    assert again.to_json() == data.to_json()


@pytest.mark.parametrize("text,expected", [
    ("x^3/3", {-1: 0, 0: 2}),
    ("x^2/2 + y^2/2", {-2: 0, -1: 0, 0: 1}),
    ("x^3/3 + y^2", {-2: 0, -1: 0, 0: 2}),
])
def test_dcrit_cohomology_is_milnor_algebra(text, expected):
    f = to_element(text, trunc=8)
    r = dcrit_cohomology(f, 6)
    assert r["stable"]
    assert {k: v for k, v in r["dims"].items()} == expected


def test_koszul_d_squares_to_zero():
    f = to_element("x^2*y + y^3", trunc=6)
    k = koszul_dga(f)
    k.complex.check_square_zero()
    assert k.differential_table()["xi_x"] == f.partial("x")


def test_plus_model_simple_example():
    # g = x * w * v on U = W1 = W2 = 1
    base = one_dim(2)
    data = plus_model_from_g(base, 1, 1, {((0,), 0, 0): 1})
    g = data.g(6)
    assert g == to_element("x0*v0*w0", g.alg)
    r = verify_lemma_fg(data, 4)
    assert r["holds"] and r["differentials_agree"]


def test_plus_model_with_trivial_normal_data():
    data = PlusModelData(random_cyclic(1, 3, seed=2), 0, 0)
    assert verify_lemma_fg(data, 4)["holds"]


def test_plus_model_consistency_enforced():
    base = one_dim(2)
    with pytest.raises(ValueError):
        PlusModelData(base, 1, 1, p1={2: {((0,), 0): [1]}}, p2={2: {((0,), 0): [2]}})


def test_plus_model_json_and_random():
    data = random_plus_model(1, 1, 1, seed=5)
    again = PlusModelData.from_json(data.to_json())
    assert again.to_json() == data.to_json()
    assert build_plus_model(data, 4).images == koszul_dga(total_potential(data, 4)).images
