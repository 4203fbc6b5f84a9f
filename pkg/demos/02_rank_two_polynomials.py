"""Jacobi polynomials, shift operators and the hypergeometric function in A2.

Run: python3 demos/02_rank_two_polynomials.py
"""
from fractions import Fraction

from dunkl import hypergeom as hg
from dunkl.cherednik import DunklContext
from dunkl.polynomials import E_by_intertwiners, jacobi_P, shift_plus, weyl_character_identity_check
from dunkl.root_data import build_root_system

A2 = build_root_system("A2")
ctx = DunklContext.symbolic(A2)

P = jacobi_P(ctx, (1, 1))
print("P((1,1), k) =", P)
print("value at e  =", P.value_at_identity())

print("\nShift operator G_+ lowers (1,1) to 0 and raises k by one:")
print("  G_+(k) P((1,1), k) =", shift_plus(ctx, P))

print("\nCharacter formula P^-(lambda + delta, k) = Delta P(lambda, k + 1):")
for lam in [(0, 0), (1, 0), (0, 1)]:
    print(f"  lambda = {lam}: {weyl_character_identity_check(ctx, lam)}")

print("\nThe nonsymmetric hypergeometric function at a polynomial point (k = 3/10):")
k = Fraction(3, 10)
cnum = DunklContext.with_values(A2, (k,))
mu = (1, 1)
E = E_by_intertwiners(cnum, mu).body
lam = [float(x) for x in cnum.eigenvalue(mu)]
H = (0.9, 1.1)
print(f"  G(lambda~, k; a)    = {hg.G_nonsym(A2, float(k), lam, H, depth=22).real:.14f}")
print(f"  E(mu)(a) / E(mu)(e) = {(E.evaluate(A2, H) / complex(E.value_at_identity())).real:.14f}")
