from fractions import Fraction

import pytest

from curvhom.bar import (AugmentedAlgebraModulePair, FiniteAlgebra, antisymmetrization, antisymmetrize,
                         bar_boundary, bar_spectral_demo, bar_tor_dims, bounding_chain, monomial_algebra,
                         quotient_module, residue_module)


def pair(names, trunc, cap, M=None, N=None):
    alg, _ = monomial_algebra(names, trunc)
    m = quotient_module(alg, M, "right") if M else residue_module(alg, "right")
    n = quotient_module(alg, N, "left") if N else residue_module(alg, "left")
    return AugmentedAlgebraModulePair(alg, m, n, degree_cap=cap)


def test_dual_numbers_have_periodic_tor():
    r = bar_tor_dims(pair(["x"], 1, 8), window=6)
    for n in range(5):
        assert r["certified"][n]
        assert r["dims"][n] == 1
    assert not r["certified"][6]


def test_ground_field_tor():
    alg = FiniteAlgebra(["1"], {(0, 0): {0: 1}}, weights=[(0,)], commutative=True)
    p = AugmentedAlgebraModulePair(alg, residue_module(alg, "right"), residue_module(alg, "left"), degree_cap=4)
    r = bar_tor_dims(p, 4)
    assert r["dims"][0] == 1 and all(r["dims"][n] == 0 for n in range(1, 5))


def test_transversal_lines():
    # Q[x,y]/(y) and Q[x,y]/(x): Tor concentrated in degree 0 (weights below the truncation)
    r = bar_tor_dims(pair(["x", "y"], 4, 4, [[0, 1]], [[1, 0]]), window=5)
    certified = [n for n, ok in r["certified"].items() if ok]
    assert certified == [0, 1, 2, 3]
    assert r["dims"][0] == 1 and all(r["dims"][n] == 0 for n in certified[1:])


def test_residue_field_of_plane_is_exterior():
    r = bar_tor_dims(pair(["x", "y"], 3, 3), window=4)
    assert [r["dims"][n] for n in range(3)] == [1, 2, 1]


def test_tensor_dim_is_tor0():
    p = pair(["x", "y"], 2, 2, [[0, 1]], [[0, 1]])
    assert bar_tor_dims(p, 2)["dims"][0] == p.tensor_dim()


def test_antisymmetrization_lands_in_cycles_not_boundaries():
    p = pair(["x", "y"], 2, 2)
    mat, domain, targets = antisymmetrization(p, 2)
    assert mat.shape[1] == 1
    chain = {t: mat[i, 0] for i, t in enumerate(targets) if mat[i, 0]}
    assert bar_boundary(p, chain) == {}
    assert bounding_chain(p, chain) is None


def test_explicit_boundary_in_truncated_line():
    # over Q[x]/x^3: (1, x^2, 1) = d(-(1, x, x, 1))
    p = pair(["x"], 2, 4)
    y = bounding_chain(p, {(0, 2, 0): 1})
    assert y is not None
    assert bar_boundary(p, y) == {(0, 2, 0): 1}
    assert bar_boundary(p, {(0, 1, 1, 0): -1}) == {(0, 2, 0): 1}


def test_antisymmetrize_single():
    p = pair(["x"], 1, 4)
    assert antisymmetrize(p, 0, [{1: 1}]) == {(0, 1, 0): 1}


@pytest.mark.parametrize("args,window", [((["x"], 1, 4), 3), ((["x"], 2, 4), 2),
                                         ((["x", "y"], 2, 2, [[0, 1]], [[1, 0]]), 2)])
def test_spectral_demo_converges(args, window):
    r = bar_spectral_demo(pair(*args), window)
    assert r["converges"]
    assert r["e1_rows"] == [0]
    last = r["pages"][-1]
    assert sum(last.total(n) for n in r["total_cohomology"]) == sum(r["total_cohomology"].values())
