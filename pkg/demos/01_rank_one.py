"""A tour of rank one, where every object has a classical closed form.

Run: python3 demos/01_rank_one.py
"""
import math
from fractions import Fraction

from dunkl import hypergeom as hg
from dunkl import spectral as sp
from dunkl.cherednik import DunklContext
from dunkl.polynomials import E_by_intertwiners, norm_and_evaluation
from dunkl.root_data import build_root_system

A1 = build_root_system("A1")

print("Nonsymmetric polynomials with symbolic k")
ctx = DunklContext.symbolic(A1)
for lam in (-2, -1, 1, 2):
    E = E_by_intertwiners(ctx, (lam,)).body
    print(f"  E({lam:+d}) = {E}    E(e) = {E.value_at_identity()}")

print("\nNorms from the product formula at k = 2")
ctx2 = DunklContext.with_values(A1, (Fraction(2),))
for w in A1.min_coset_reps((2,)):
    n2, val = norm_and_evaluation(ctx2, (2,), w)
    print(f"  lambda = {w.act((2,))}: ||E||^2 = {n2}, E(e) = {val}")

print("\nHarish-Chandra series against the Gauss function (k = 0.3, t = 0.7)")
series = hg.phi_series(A1, 0.3, (0.7,), 30)
for ya in (4, 8, 16):
    h = math.log(ya) / 2
    value, tail = hg.phi_eval(series, (h,))
    print(f"  a^alpha = {ya:2d}: series {value.real:.15f}  closed form {hg.rank1_phi(0.3, 0.7, (h,)).real:.15f}")

print("\nLimit at the identity, k = -0.2, t = 0.37")
print(f"  corrected value   {hg.rank1_phi_limit(-0.2, 0.37).real:.8f}")
print(f"  quoted c~(-l,1-k) {hg.quoted_phi_limit(-0.2, 0.37).real:.8f}")
print(f"  Phi at h = 1e-5   {hg.rank1_phi(-0.2, 0.37, (1e-5,)).real:.8f}")

print("\nPlancherel mass of the attractive case at k = -1/4")
res = sp.rank1_plancherel_checks(-0.25)
print(f"  quadrature {res['quadrature']:.12f}, closed form {res['closed_form']:.12f}")
