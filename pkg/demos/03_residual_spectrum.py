"""Residual subspaces in the attractive case and the integrability region.

Run: python3 demos/03_residual_spectrum.py
"""
from fractions import Fraction

from dunkl import spectral as sp
from dunkl.root_data import build_root_system

for label, k in (("A2", (Fraction(-1, 4),)), ("B2", (Fraction(-1, 5), Fraction(-1, 7))),
                 ("G2", (Fraction(-1, 9), Fraction(-1, 11)))):
    rs = build_root_system(label)
    subs = sp.enumerate_residual(rs, k, dominance_filter=True)
    print(f"{label}, k = {[str(v) for v in k]}, integrable: {sp.integrability_check(rs, k)}")
    for L in subs:
        kind = "point" if L.distinguished else f"dim {L.dim}"
        print(f"  {kind:6s} center {[str(c) for c in L.center]}  counts n_k={L.n_k} n_0={L.n_0} codim={L.codim}")

print("\nIntegrability boundary for A2 with equal k < 0 sits at -1/h = -1/3:")
A2 = build_root_system("A2")
for k in (Fraction(-3, 10), Fraction(-33, 100), Fraction(-1, 3), Fraction(-2, 5)):
    print(f"  k = {k}: {sp.integrability_check(A2, (k,))}")
