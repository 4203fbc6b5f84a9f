import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from dunkl import hypergeom as hg
from dunkl.cherednik import DunklContext
from dunkl.polynomials import E_by_intertwiners
from dunkl.root_data import build_root_system

A1 = build_root_system("A1")
A2 = build_root_system("A2")
B2 = build_root_system("B2")


def test_recurrence_is_solved():
    for rs, lam in ((A2, (0.37, 1.21)), (B2, (0.6, 0.45)), (build_root_system("G2"), (0.71, 0.33))):
        s = hg.gamma_table(rs, 0.3, lam, 12)
        assert s.table[(0,) * rs.rank] == 1
        assert s.recurrence_residual() < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.4, 1.5), st.floats(0.1, 2.0), st.floats(math.log(4) / 2, 2.0))
def test_phi_series_is_kummer_solution(k, t, h):
    # positive integer t is the pole set of the recurrence
    assume(abs(t - round(t)) > 1e-3)
    v, tail = hg.phi_eval(hg.phi_series(A1, k, (t,), 30), (h,))
    assert abs(v - hg.rank1_phi(k, t, (h,))) < 1e-10 + tail


def test_phi_pole_detected():
    with pytest.raises(hg.NearPole):
        hg.phi_series(A1, 0.3, (1.0,), 10)


def test_phi_is_eigenfunction_of_L():
    s = hg.phi_series(A2, 0.3, (0.37, 1.21), 14)
    Ls = hg.apply_L_series(A2, 0.3, s)
    g = np.array([[float(x) for x in r] for r in A2.weight_gram])
    lam, rho = np.array([0.37, 1.21]), np.array([0.3, 0.3])
    ev = lam @ g @ lam - rho @ g @ rho
    assert max(abs(Ls.terms.get(key, 0) - ev * c) for key, c in s.terms.items()) < 1e-10


def test_F_matches_gauss_function():
    for t in (0.7, 1.3):
        for ya in (3.0, 6.0):
            h = math.log(ya) / 2
            assert abs(hg.F(A1, 0.3, (t,), (h,), 40) - hg.rank1_F(0.3, t, (h,))) < 1e-10


def test_F_is_invariant_in_lambda():
    H = (0.8, 0.9)
    lam = np.array([0.31, 0.57])
    vals = []
    for w in A2.weyl_group():
        wl = np.array(w.matrix, dtype=float) @ lam
        vals.append(hg.F(A2, 0.3, tuple(wl), H, 24))
    assert max(abs(v - vals[0]) for v in vals) < 1e-9


def test_corrected_limit_formula():
    for k, t in ((-0.2, 0.37), (-0.2, 1.3), (0.25, 0.6)):
        # the leading correction near a = e is O(h^p), p = min(1, 1 - 2k)
        h, p = 1e-4, min(1.0, 1 - 2 * k)
        ex = (2 ** p * hg.rank1_phi(k, t, (h / 2,)) - hg.rank1_phi(k, t, (h,))) / (2 ** p - 1)
        assert abs(ex - hg.rank1_phi_limit(k, t)) < 1e-4


def test_quoted_limit_is_off_at_k_zero():
    # at k = 0 Phi = e^{lam - rho}, so the limit is 1; the quoted value gives -1/t
    t = 0.37
    assert abs(hg.rank1_phi(0.0, t, (1e-6,)) - 1) < 1e-5
    assert abs(hg.quoted_phi_limit(0.0, t) + 1 / t) < 1e-12
    assert abs(hg.rank1_phi_limit(0.0, t) - 1) < 1e-12


@pytest.mark.parametrize("rs,mu,H,tol", [
    (A2, (1, 1), (0.9, 1.1), 1e-12),
    (A2, (2, -1), (0.9, 1.1), 1e-12),
    (B2, (0, 1), (1.3, 0.8), 1e-9),
])
def test_G_reduces_to_E_at_polynomial_points(rs, mu, H, tol):
    kk = Fraction(3, 10)
    ctx = DunklContext.with_values(rs, (kk,))
    E = E_by_intertwiners(ctx, mu).body
    lam = [float(x) for x in ctx.eigenvalue(mu)]
    g = hg.G_nonsym(rs, float(kk), lam, H, depth=22)
    ref = E.evaluate(rs, H) / complex(E.value_at_identity())
    assert abs(g - ref) < tol


def test_G_rank_one_closed_form():
    for t in (0.7, 1.3):
        for ya in (3.0, 6.0):
            h = math.log(ya) / 2
            s = hg.G_nonsym(A1, 0.3, (t,), (h,), 40)
            c = hg.G_nonsym(A1, 0.3, (t,), (h,), method="closed")
            assert abs(s - c) < 1e-10


@pytest.mark.parametrize("which", [0, 1])
def test_intertwiners_act_on_G(which):
    assert hg.intertwiner_action_on_G_check(0.3, 0.7, which) < 1e-12


def test_kz_sign_convention():
    good = hg.kz_flat_section_residual_rank1(0.3, 0.7, 0.4, eps_sign=1)
    bad = hg.kz_flat_section_residual_rank1(0.3, 0.7, 0.4, eps_sign=-1)
    assert good < 1e-10
    assert bad > 1e-2
    # curvature vanishes for either sign
    for sgn in (1, -1):
        m = hg.kz_matrices(B2, 0.3, (0.4 + 0j, 0.9 + 0j), (0.7, 0.5), eps_sign=sgn)
        assert hg.kz_flatness_residual(m) < 1e-10


def test_G2_kz_flat():
    G2 = build_root_system("G2")
    m = hg.kz_matrices(G2, 0.3, (0.4 + 0j, 0.9 + 0j), (0.7, 0.5))
    assert hg.kz_flatness_residual(m) < 1e-10


def test_errors():
    with pytest.raises(hg.NotInPositiveChamber):
        hg.F(A2, 0.3, (0.3, 0.5), (-0.1, 0.5))
    with pytest.raises(hg.NonGenericSpectralParam):
        hg.F_tilde_series(A1, 0.3, (-2.0,), 10)
    with pytest.raises(hg.ResonantParameter):
        hg.G_nonsym(A1, 0.3, (0.3,), (0.5,))
    with pytest.raises(hg.SingularPoint):
        hg.kz_matrices(A2, 0.3, (0.3 + 0j, 0.5 + 0j), (0.4, 0.8))


def test_genericity_report():
    rep = hg.genericity_report(A2, (1.0, -3.0), 12)
    assert not rep.generic
    assert hg.genericity_report(A2, (0.3, 0.4), 12).generic
