"""Dunkl-Cherednik operators and the degenerate double affine Hecke algebra on C[H].

Vectors xi in the Cartan subalgebra are rational tuples in simple-coroot
coordinates (see :mod:`dunkl.root_data`).  Polynomials p on h* are dictionaries
``{exponent tuple: coefficient}`` in the coordinate functions
``x_j(lam) = lam(alpha_j^vee)``; ``p(T)`` substitutes ``T_{alpha_j^vee}`` for ``x_j``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy

from .laurent import LaurentPoly, divided_difference_monomial
from .root_data import ExtAffineWeylElement, Multiplicity, RootSystem
from .scalars import is_zero

__all__ = [
    "DunklContext",
    "NonReducedWord",
    "simple_coroot",
    "fundamental_coweight",
    "eigenvalue_map",
    "commutator_check",
]


class NonReducedWord(ValueError):
    pass


def simple_coroot(rs: RootSystem, i: int) -> tuple:
    return tuple(Fraction(int(j == i)) for j in range(rs.rank))


def fundamental_coweight(rs: RootSystem, i: int) -> tuple:
    """lambda_i^vee with alpha_j(lambda_i^vee) = delta_ij."""
    # alpha_j(xi) = sum_c cartan[c][j] xi_c ; solve cartan^T xi = e_i
    inv = rs.cartan_inverse  # inverse of cartan
    return tuple(inv[i][c] for c in range(rs.rank))


def _pair(vec, xi):
    return sum(a * b for a, b in zip(vec, xi) if a and b)


@lru_cache(maxsize=200000)
def _t_linear(rs: RootSystem, xi: tuple, lam: tuple, heckman: bool = False) -> tuple:
    """T_xi e^lam (or S_xi e^lam) as ((weight, (c_0, c_orbit0, c_orbit1)), ...).

    The coefficient of each weight is c_0 + sum_o c_o k_o with exact rationals.
    """
    width = 1 + rs.orbit_count
    out: dict = {}

    def add(mu, slot, val):
        row = out.setdefault(mu, [Fraction(0)] * width)
        row[slot] += val

    d = _pair(lam, xi)
    if d:
        add(lam, 0, Fraction(d))
    for r in rs.positive_roots:
        a_xi = _pair(r.weight, xi)
        if not a_xi:
            continue
        slot = 1 + r.orbit
        dd = divided_difference_monomial(rs, r, lam)
        if heckman:
            # 1/2 (1 + e^-alpha) * divided difference
            for mu, s in dd.items():
                add(mu, slot, Fraction(s) * a_xi / 2)
                add(tuple(x - y for x, y in zip(mu, r.weight)), slot, Fraction(s) * a_xi / 2)
        else:
            for mu, s in dd.items():
                add(mu, slot, Fraction(s) * a_xi)
            # - rho(k)(xi) contribution
            add(lam, slot, -Fraction(a_xi) / 2)
    return tuple((mu, tuple(row)) for mu, row in out.items() if any(row))


class DunklContext:
    """Root system plus multiplicity; all operators act on LaurentPoly."""

    def __init__(self, rs: RootSystem, k: Multiplicity):
        if k.rs != rs:
            raise ValueError("multiplicity belongs to a different root system")
        self.rs = rs
        self.k = k
        self.rho_k = k.rho

    @classmethod
    def symbolic(cls, rs: RootSystem) -> "DunklContext":
        return cls(rs, Multiplicity.symbolic(rs))

    @classmethod
    def with_values(cls, rs: RootSystem, values) -> "DunklContext":
        return cls(rs, Multiplicity(rs, values))

    def one(self) -> LaurentPoly:
        return LaurentPoly.constant(1, self.rs.rank)

    def _combine(self, row):
        val = row[0]
        for o, c in enumerate(row[1:]):
            if c:
                val = val + self.k.values[o] * c
        return val

    def _apply_linear(self, xi, f: LaurentPoly, heckman=False) -> LaurentPoly:
        xi = tuple(Fraction(x) for x in xi)
        out: dict = {}
        cache: dict = {}
        for lam, c in f.terms.items():
            for mu, row in _t_linear(self.rs, xi, lam, heckman):
                key = row
                if key not in cache:
                    cache[key] = self._combine(row)
                v = cache[key]
                if is_zero(v):
                    continue
                term = c * v
                out[mu] = out[mu] + term if mu in out else term
        return LaurentPoly(out)

    # operators --------------------------------------------------------------
    def T(self, xi, f: LaurentPoly) -> LaurentPoly:
        """Dunkl-Cherednik operator T_xi(k)."""
        return self._apply_linear(xi, f)

    def S(self, xi, f: LaurentPoly) -> LaurentPoly:
        """Dunkl-Heckman operator S_xi(k)."""
        return self._apply_linear(xi, f, heckman=True)

    def u(self, xi, f: LaurentPoly) -> LaurentPoly:
        """u_xi(k) f = 1/2 sum_{alpha>0} k_alpha alpha(xi) r_alpha f."""
        out = LaurentPoly()
        for r in self.rs.positive_roots:
            a_xi = _pair(r.weight, xi)
            if a_xi:
                out = out + f.reflect(self.rs, r).scale(self.k.of(r) * Fraction(a_xi) / 2)
        return out

    def pi(self, e: ExtAffineWeylElement, f: LaurentPoly) -> LaurentPoly:
        """pi(t_lam w) f = e^lam w(f)."""
        return f.w_act(e.fin).shift(e.trans)

    def rho_pairing(self, xi):
        return _pair(self.rho_k, xi)

    def eigenvalue(self, lam) -> tuple:
        return eigenvalue_map(self.rs, self.k, lam)

    # polynomials in the T operators ------------------------------------------
    def poly_T(self, poly: dict, f: LaurentPoly) -> LaurentPoly:
        """p(T) f for p = {exponents: coefficient} in x_j = alpha_j^vee."""
        out = LaurentPoly()
        n = self.rs.rank
        for exps, coef in poly.items():
            g = f
            for j in range(n):
                for _ in range(exps[j]):
                    g = self.T(simple_coroot(self.rs, j), g)
            out = out + g.scale(coef)
        return out

    # intertwiners ------------------------------------------------------------------
    def affine_k(self, i: int):
        if i == 0:
            return self.k.k0
        return self.k.of(self.rs.simple_roots[i - 1])

    def a_action(self, i: int, f: LaurentPoly) -> LaurentPoly:
        """a_i acting through T: a_i = alpha_i^vee (i > 0), a_0 = 1 - theta^vee."""
        if i == 0:
            theta_vee = tuple(Fraction(c) for c in self.rs.theta.coroot)
            return f - self.T(theta_vee, f)
        return self.T(simple_coroot(self.rs, i - 1), f)

    def intertwiner(self, i: int, f: LaurentPoly) -> LaurentPoly:
        """I_i = r_i a_i + k_i."""
        ri = self.rs.affine_simple_reflection(i)
        return self.pi(ri, self.a_action(i, f)) + f.scale(self.affine_k(i))

    def apply_word(self, omega: ExtAffineWeylElement, word, f: LaurentPoly,
                   check_reduced: bool = True) -> LaurentPoly:
        """I_w f for w = omega r_{i_1} ... r_{i_l}; the rightmost factor acts first."""
        if check_reduced:
            e = ExtAffineWeylElement.from_word(self.rs, omega, word)
            if e.length != len(word):
                raise NonReducedWord(f"word {list(word)} is not reduced")
        g = f
        for i in reversed(word):
            g = self.intertwiner(i, g)
        return self.pi(omega, g)

    def apply_element(self, e: ExtAffineWeylElement, f: LaurentPoly) -> LaurentPoly:
        omega, word = e.reduced_word
        return self.apply_word(omega, word, f, check_reduced=False)

    def d_factor(self, e: ExtAffineWeylElement):
        """d(w, k) = prod over the inversion set of a(-rho(k))."""
        out = 1
        for idx, n in e.inversion_set():
            r = self.rs.roots[idx]
            val = -self.rs.pairing(self.rho_k, r.coroot) + n
            out = out * val
        return out


def eigenvalue_map(rs: RootSystem, k: Multiplicity, lam) -> tuple:
    """lam~ = lam + 1/2 sum_{alpha>0} k_alpha eps(lam(alpha^vee)) alpha, eps(0) = -1."""
    out = [x for x in lam]
    for r in rs.positive_roots:
        eps = 1 if rs.pairing(lam, r.coroot) > 0 else -1
        kv = k.of(r)
        for i in range(rs.rank):
            if r.weight[i]:
                out[i] = out[i] + kv * Fraction(eps * r.weight[i], 2)
    return tuple(out)


def commutator_check(ctx: DunklContext, xi, eta, test_degree: int, heckman=False) -> bool:
    """[T_xi, T_eta] e^lam = 0 for every |lam| <= test_degree (S instead of T if asked)."""
    from .root_data import all_weights_in_ball

    op = ctx.S if heckman else ctx.T
    for lam in all_weights_in_ball(ctx.rs, test_degree):
        f = LaurentPoly.monomial(lam)
        if op(xi, op(eta, f)) != op(eta, op(xi, f)):
            return False
    return True


# polynomial helpers for Hecke-relation checks -------------------------------------

def poly_transform(rs: RootSystem, poly: dict, e: ExtAffineWeylElement) -> dict:
    """p^e(lam) = p(e^{-1} lam) for e in W^e acting affinely on h*."""
    n = rs.rank
    xs = sympy.symbols(f"x0:{n}")
    einv = e.inverse
    # coordinates of e^{-1}(lam) as affine functions of lam
    lin = einv.fin.act(xs)
    img = [sympy.expand(lin[j] + einv.trans[j]) for j in range(n)]
    expr = sum(
        (sympy.Rational(str(Fraction(c))) if not isinstance(c, int) else c)
        * sympy.Mul(*[img[j] ** exps[j] for j in range(n)])
        for exps, c in poly.items()
    )
    return _to_dict(sympy.expand(expr), xs)


def poly_divided(rs: RootSystem, poly: dict, i: int) -> dict:
    """(p - p^{r_i}) / a_i as a polynomial dictionary."""
    n = rs.rank
    xs = sympy.symbols(f"x0:{n}")
    p = _to_expr(poly, xs)
    q = _to_expr(poly_transform(rs, poly, rs.affine_simple_reflection(i)), xs)
    if i == 0:
        a = 1 - sum(c * x for c, x in zip(rs.theta.coroot, xs))
    else:
        a = xs[i - 1]
    num = sympy.Poly(sympy.expand(p - q), *xs)
    den = sympy.Poly(a, *xs)
    quo, rem = sympy.div(num, den)
    assert rem.is_zero
    return _to_dict(quo.as_expr(), xs)


def _to_expr(poly: dict, xs):
    return sum(
        sympy.Rational(str(Fraction(c))) * sympy.Mul(*[x ** e for x, e in zip(xs, exps)])
        for exps, c in poly.items()
    )


def _to_dict(expr, xs) -> dict:
    if expr == 0:
        return {}
    P = sympy.Poly(expr, *xs)
    return {
        tuple(m): Fraction(int(c.p), int(c.q)) for m, c in zip(P.monoms(), P.coeffs())
    }
