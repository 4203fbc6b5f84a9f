import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dunkl import spectral as sp
from dunkl.root_data import build_root_system

TYPES = ["A1", "A2", "B2", "G2"]


@pytest.mark.parametrize("t", TYPES)
def test_sigma_prime_is_inverse_c_product(t):
    rs = build_root_system(t)
    lam = tuple(0.3 + 0.1 * i + 0.17j * (i + 1) for i in range(rs.rank))
    d = sp.sigma_densities(rs, (0.35,), lam)
    assert abs(d["sigma_prime"].value - d["one_over_ct_ct"]) < 1e-12 * abs(d["sigma_prime"].value)
    # with the normalized c-function the identity picks up c~(rho)^2
    ratio = d["one_over_c_c"] / d["sigma_prime"].value
    assert abs(ratio - d["c_tilde_rho"] ** 2) < 1e-10 * abs(ratio)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(TYPES), st.floats(0.05, 2.0), st.floats(-1, 1), st.floats(-1, 1))
def test_sigma_functional_equation(t, k, x, y):
    rs = build_root_system(t)
    lam = (0.31 + x * 0.5j, 0.47 + y * 0.4j)[: rs.rank]
    for i in range(rs.rank + 1):
        assert sp.sigma_functional_equation_residual(rs, (k,), lam, i) < 1e-10


def test_sigma_positive_on_imaginary_axis():
    rs = build_root_system("A2")
    for k in (0.4, -0.2):
        v = sp.sigma_densities(rs, (k,), (0.37j, 0.81j))["sigma_prime"].value
        assert abs(v.imag) < 1e-12 * abs(v) and v.real > 0


def test_integrability():
    A1, A2, G2 = (build_root_system(t) for t in ("A1", "A2", "G2"))
    assert sp.integrability_check(A1, (Fraction(-2, 5),))
    assert not sp.integrability_check(A1, (Fraction(-1, 2),))
    # A2 boundary at -1/h
    assert not sp.integrability_check(A2, (Fraction(-1, 3),))
    assert sp.integrability_check(A2, (Fraction(-33, 100),))
    assert sp.integrability_check(G2, (Fraction(1), Fraction(0)))


def test_rank_one_residual_points():
    A1 = build_root_system("A1")
    subs = sp.enumerate_residual(A1, (Fraction(-1, 4),))
    points = sorted(L.center for L in subs if L.distinguished)
    assert points == [(Fraction(-1, 4),), (Fraction(1, 4),)]
    dom = sp.enumerate_residual(A1, (Fraction(-1, 4),), dominance_filter=True)
    assert [L.center for L in dom if L.distinguished] == [(Fraction(-1, 4),)]


@pytest.mark.parametrize("t", ["A2", "B2", "G2"])
def test_rho_k_orbit_is_distinguished(t):
    rs = build_root_system(t)
    k = (Fraction(-1, 5),) * rs.orbit_count
    from dunkl.root_data import Multiplicity

    rho = Multiplicity(rs, k).rho
    pts = {L.center for L in sp.enumerate_residual(rs, k) if L.distinguished}
    for w in rs.weyl_group():
        assert w.act(rho) in pts


def test_residual_classification_random():
    rnd = random.Random(3)
    for t in TYPES:
        rs = build_root_system(t)
        for _ in range(5):
            k = tuple(Fraction(-rnd.randint(1, 30), rnd.randint(31, 90)) for _ in range(rs.orbit_count))
            for L in sp.enumerate_residual(rs, k):
                assert L.equality_holds and L.minus_center_in_orbit
                assert L.n_k >= L.codim


def test_residual_density_finite_and_positive():
    rs = build_root_system("B2")
    k = (Fraction(-1, 5), Fraction(-1, 7))
    for L in sp.enumerate_residual(rs, k, dominance_filter=True):
        for s in (0.3, 0.9):
            lam = tuple(float(c) + 1j * s * sum(float(d[i]) for d in L.directions) for i, c in enumerate(L.center))
            v = sp.residual_density(rs, k, L, lam).value
            assert math.isfinite(abs(v)) and v.real > 0 and abs(v.imag) < 1e-12 * abs(v)


def test_normal_crossing():
    res = sp.normal_crossing_residue([[1.0]], [-0.5], 2.0)
    assert res["det_form"] == pytest.approx(-2j * math.pi * 2.0)
    alphas = [[2.0, -1.0], [-1.0, 2.0]]
    res = sp.normal_crossing_residue(alphas, [-0.3, -0.4], 1.5, gamma=[-1.0, -1.0])
    assert abs(res["det_form"] - res["covolume_form"]) < 1e-12
    with pytest.raises(sp.OriginNotInAntidual):
        sp.normal_crossing_residue([[1.0]], [0.5], 1.0)
    with pytest.raises(sp.NotNormalCrossing):
        sp.normal_crossing_residue([[1.0, 0.0], [2.0, 0.0]], [-1, -1], 1.0)


@pytest.mark.parametrize("k", [-0.25, -0.1, -0.4])
def test_rank1_plancherel(k):
    res = sp.rank1_plancherel_checks(k)
    assert res["relative_error"] < 1e-6
    assert abs(res["gamma_form"] - res["closed_form"]) < 1e-10 * abs(res["closed_form"])


def test_rank1_plancherel_domain():
    with pytest.raises(sp.NotIntegrable):
        sp.rank1_plancherel_checks(-0.6)
    with pytest.raises(sp.NotIntegrable):
        sp.rank1_plancherel_checks(0.2)
