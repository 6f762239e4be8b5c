import pytest

from curvhom.ext_projective import (ProjectiveSetup, _euler, ci_twist_cohomology, ext_table,
                                    line_bundle_cohomology, model_slots)


@pytest.mark.parametrize("n,p,expected", [
    (3, 0, {0: 1}), (3, 5, {0: 56}), (3, -4, {3: 1}), (3, -1, {}), (3, -5, {3: 4}), (1, -2, {1: 1}),
])
def test_line_bundles(n, p, expected):
    assert line_bundle_cohomology(n, p) == expected


def test_line_bundle_rejects_bad_dimension():
    with pytest.raises(ValueError):
        line_bundle_cohomology(0, 1)


@pytest.fixture(scope="module")
def setup():
    return ProjectiveSetup(4, seed=0)


@pytest.mark.parametrize("p,expected", [(0, {0: 1, 2: 4}), (1, {0: 4, 2: 1}), (5, {0: 55}), (6, {0: 80})])
def test_complete_intersection_twists(setup, p, expected):
    assert ci_twist_cohomology(setup, p) == expected


@pytest.mark.parametrize("p", range(-8, 12))
def test_euler_conservation(setup, p):
    h = ci_twist_cohomology(setup, p)
    chi = sum((-1) ** q * v for q, v in h.items())
    assert chi == _euler(3, p) - _euler(3, p - 5)


def test_quintic_lives_on_hyperplane(setup):
    assert setup.q.alg.ngens == 4
    assert all(sum(m) == 5 for m in setup.q.terms)
    assert setup.reseeds == 0


def test_ext_table(setup):
    t = ext_table(setup)
    assert t.ext == [1, 59, 84, 1]
    assert set(t.e2) == model_slots(4)
    assert t.e2 == {(0, 0): 1, (1, 0): 59, (2, 0): 80, (0, 2): 4, (1, 2): 1}
    assert all(t.checks.values())
    assert "Ext: 1, 59, 84, 1" in t.grid()


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_seed_independence(seed):
    assert ext_table(ProjectiveSetup(4, seed=seed)).ext == [1, 59, 84, 1]


def test_degenerate_quintic_is_reseeded(monkeypatch, caplog):
    calls = {"n": 0}
    original = ProjectiveSetup.is_generic

    def flaky(self, *a, **k):
        calls["n"] += 1
        return False if calls["n"] == 1 else original(self, *a, **k)

    monkeypatch.setattr(ProjectiveSetup, "is_generic", flaky)
    with caplog.at_level("WARNING"):
        s = ProjectiveSetup(4, seed=10)
    assert s.reseeds == 1 and s.seed == 11
    assert "reseeding" in caplog.text
