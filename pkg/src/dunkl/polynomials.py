"""Nonsymmetric and symmetric Jacobi polynomials, c-functions, shift operators,
and the Jack specialization."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special

from .cherednik import DunklContext, fundamental_coweight, simple_coroot
from .laurent import (
    LaurentPoly,
    NonIntegerMultiplicity,
    divide_by_delta,
    inner_product_int_k,
    is_invariant,
    is_skew,
    weyl_denominator,
)
from .root_data import Multiplicity, RootSystem, WeylElement, build_root_system
from .scalars import RatFunc, is_zero

__all__ = [
    "NonsymPoly",
    "NonGenericParameters",
    "EigenvalueCollision",
    "NotDominant",
    "NotRegular",
    "PoleAtArgument",
    "PartitionTooLong",
    "ImageNotSkew",
    "ImageNotInvariant",
    "E_by_intertwiners",
    "E_by_triangular_solve",
    "E_by_gram_schmidt",
    "c_tilde",
    "c_star",
    "c_functions",
    "norm_and_evaluation",
    "jacobi_P",
    "jacobi_Pminus",
    "weyl_character",
    "weyl_character_identity_check",
    "shift_plus",
    "shift_minus",
    "jacobi_value_at_e",
    "jack_expand",
]


class NonGenericParameters(ValueError):
    pass


class EigenvalueCollision(ValueError):
    pass


class NotDominant(ValueError):
    pass


class NotRegular(ValueError):
    pass


class PoleAtArgument(ZeroDivisionError):
    pass


class PartitionTooLong(ValueError):
    pass


class ImageNotSkew(AssertionError):
    pass


class ImageNotInvariant(AssertionError):
    pass


@dataclass(frozen=True)
class NonsymPoly:
    lam: tuple
    k: Multiplicity
    body: LaurentPoly
    method: str

    def value_at_identity(self):
        return self.body.value_at_identity()


_E_CACHE: dict = {}
_E_LOCK = threading.Lock()


def _cache_key(ctx: DunklContext, lam, method):
    return (ctx.rs.label, tuple(str(v) for v in ctx.k.values), tuple(lam), method)


def _cached(method):
    def deco(fn):
        def wrapper(ctx, lam, *args, **kwargs):
            key = _cache_key(ctx, lam, method)
            hit = _E_CACHE.get(key)
            if hit is not None:
                return hit
            out = fn(ctx, lam, *args, **kwargs)
            with _E_LOCK:
                _E_CACHE.setdefault(key, out)
            return out

        wrapper.__name__ = fn.__name__
        wrapper.__doc__ = fn.__doc__
        return wrapper

    return deco


# three constructions of E(lam, k) ------------------------------------------------

@_cached("intertwiner")
def E_by_intertwiners(ctx: DunklContext, lam) -> NonsymPoly:
    """E(lam, k) from I_w(1) = d(w, k) E(w(0), k), w shortest with w(0) = lam."""
    lam = tuple(lam)
    w = ctx.rs.shortest_with_origin_image(lam)
    d = ctx.d_factor(w)
    if is_zero(d):
        raise NonGenericParameters(f"d(w, k) vanishes for lambda = {lam}")
    omega, word = w.reduced_word
    f = ctx.apply_word(omega, word, ctx.one(), check_reduced=False)
    lead = f[lam]
    if lead != d:
        raise AssertionError(f"leading coefficient {lead} differs from d(w,k) = {d}")
    body = f.scale(1 / lead) if not isinstance(lead, int) else f.scale(Fraction(1, lead))
    return NonsymPoly(lam, ctx.k, body, "intertwiner")


@_cached("triangular")
def E_by_triangular_solve(ctx: DunklContext, lam) -> NonsymPoly:
    """Solve T_xi E = lam~(xi) E on the ⊴-ideal below lam, xi = fundamental coweights."""
    rs = ctx.rs
    lam = tuple(lam)
    ideal = rs.cher_ideal(lam)
    xis = [fundamental_coweight(rs, i) for i in range(rs.rank)]
    spec = {mu: ctx.eigenvalue(mu) for mu in [lam] + ideal}

    def ev(mu, xi):
        return sum(a * b for a, b in zip(spec[mu], xi) if b)

    images = [{mu: ctx.T(xi, LaurentPoly.monomial(mu)) for mu in [lam] + ideal} for xi in xis]
    coeffs = {lam: 1}
    for nu in ideal:
        for i, xi in enumerate(xis):
            gap = ev(lam, xi) - ev(nu, xi)
            if not is_zero(gap):
                break
        else:
            raise EigenvalueCollision(f"lam~ = nu~ for lam = {lam}, nu = {nu}")
        total = 0
        for mu, c in coeffs.items():
            t = images[i][mu][nu]
            if not is_zero(t):
                total = total + c * t
        coeffs[nu] = total / gap
    body = LaurentPoly(coeffs)
    for i, xi in enumerate(xis):
        if ctx.T(xi, body) != body.scale(ev(lam, xi)):
            raise AssertionError(f"eigen-equation fails for xi_{i}")
    return NonsymPoly(lam, ctx.k, body, "triangular")


@_cached("gram_schmidt")
def E_by_gram_schmidt(ctx: DunklContext, lam) -> NonsymPoly:
    """Orthogonalize e^lam against e^mu, mu ⊴ lam, in (.,.)_k (integer k >= 0)."""
    k = ctx.k
    if not k.is_integral_nonneg():
        raise NonIntegerMultiplicity("Gram-Schmidt needs integer k >= 0")
    lam = tuple(lam)
    ideal = ctx.rs.cher_ideal(lam)
    if not ideal:
        return NonsymPoly(lam, k, LaurentPoly.monomial(lam), "gram_schmidt")
    mono = {mu: LaurentPoly.monomial(mu) for mu in [lam] + ideal}
    mat = [[inner_product_int_k(mono[nu], mono[mu], k) for nu in ideal] for mu in ideal]
    rhs = [-inner_product_int_k(mono[lam], mono[mu], k) for mu in ideal]
    sol = _solve_exact(mat, rhs)
    body = LaurentPoly({lam: 1, **dict(zip(ideal, sol))})
    return NonsymPoly(lam, k, body, "gram_schmidt")


def _solve_exact(mat, rhs):
    n = len(rhs)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(mat, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n] for row in a]


# c-functions ----------------------------------------------------------------------

def _delta_w(w: WeylElement, root) -> int:
    """0 if alpha in w^{-1} R_+ (i.e. w alpha > 0), else 1."""
    return 0 if w.root_image(root).positive else 1


def _int_k(v) -> int | None:
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    if isinstance(v, RatFunc) and v.is_constant() and v.constant_value().denominator == 1:
        return int(v.constant_value())
    return None


def _rising(y, n):
    out = Fraction(1)
    for j in range(n):
        out *= y + j
    return out


def _gamma_ratio(a, b) -> complex:
    """Gamma(a) / Gamma(b); poles of the numerator give signed infinities."""
    ra = special.rgamma(a)
    rb = special.rgamma(b)
    if ra == 0:
        return complex(math.copysign(math.inf, float(np.real(rb)) or 1.0))
    return complex(rb / ra)


def c_tilde(rs: RootSystem, k: Multiplicity, w: WeylElement, lam, exact: bool | None = None):
    """c~_w(lam, k) = prod_{alpha>0} Gamma(x + d) / Gamma(x + k + d), x = lam(alpha^vee)."""
    ks = [_int_k(v) for v in k.values]
    use_exact = all(v is not None and v >= 0 for v in ks) if exact is None else exact
    if use_exact:
        out = Fraction(1)
        for r in rs.positive_roots:
            x = Fraction(rs.pairing(lam, r.coroot))
            den = _rising(x + _delta_w(w, r), ks[r.orbit])
            if den == 0:
                raise PoleAtArgument(f"c~ has a pole at lam = {lam}")
            out /= den
        return out
    out = 1 + 0j
    for r in rs.positive_roots:
        x = complex(rs.pairing(lam, r.coroot))
        d = _delta_w(w, r)
        out *= _gamma_ratio(x + d, x + complex(k.of(r)) + d)
    return out


def c_star(rs: RootSystem, k: Multiplicity, w: WeylElement, lam, exact: bool | None = None):
    """c*_w(lam, k) = prod_{alpha>0} Gamma(-x - k + d) / Gamma(-x + d)."""
    ks = [_int_k(v) for v in k.values]
    use_exact = all(v is not None and v >= 0 for v in ks) if exact is None else exact
    if use_exact:
        out = Fraction(1)
        for r in rs.positive_roots:
            x = Fraction(rs.pairing(lam, r.coroot))
            kk = ks[r.orbit]
            den = _rising(-x - kk + _delta_w(w, r), kk)
            if den == 0:
                raise PoleAtArgument(f"c* has a pole at lam = {lam}")
            out /= den
        return out
    out = 1 + 0j
    for r in rs.positive_roots:
        x = complex(rs.pairing(lam, r.coroot))
        d = _delta_w(w, r)
        out *= _gamma_ratio(-x - complex(k.of(r)) + d, -x + d)
    return out


def c_functions(rs: RootSystem, k: Multiplicity, w: WeylElement, lam, exact=None) -> dict:
    return {"c_tilde": c_tilde(rs, k, w, lam, exact), "c_star": c_star(rs, k, w, lam, exact)}


def norm_and_evaluation(ctx: DunklContext, lam, w: WeylElement) -> tuple:
    """(||E(w lam)||^2, E(w lam)(e)) from the closed product formulas."""
    rs, k = ctx.rs, ctx.k
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise NotDominant(lam)
    stab = [i for i, x in enumerate(lam) if x == 0]
    if any(not w.root_image(rs.simple_roots[i]).positive for i in stab):
        raise ValueError("w is not a minimal coset representative for W_lam")
    ww = w * rs.stabilizer_longest(lam)
    shifted = tuple(a + b for a, b in zip(lam, k.rho))
    neg = tuple(-x for x in shifted)
    norm2 = c_star(rs, k, ww, neg) / c_tilde(rs, k, ww, shifted)
    value = c_tilde(rs, k, rs.longest_element, k.rho) / c_tilde(rs, k, ww, shifted)
    return norm2, value


# Jacobi polynomials ---------------------------------------------------------------

def _E(ctx, lam):
    return E_by_intertwiners(ctx, lam).body


def jacobi_P(ctx: DunklContext, lam) -> LaurentPoly:
    """P(lam, k) = sum_{w in W^lam} E^w(lam, k) where E^w = w(E)."""
    rs = ctx.rs
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise NotDominant(lam)
    e = _E(ctx, lam)
    out = LaurentPoly()
    for w in rs.min_coset_reps(lam):
        out = out + e.w_act(w)
    return out


def jacobi_Pminus(ctx: DunklContext, lam) -> LaurentPoly:
    """P^-(lam, k) = sum_{w in W} sign(w) E^w(lam, k)."""
    rs = ctx.rs
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise NotDominant(lam)
    if not rs.is_regular(lam):
        raise NotRegular(lam)
    e = _E(ctx, lam)
    out = LaurentPoly()
    for w in rs.weyl_group():
        out = out + e.w_act(w).scale(w.sign)
    return out


def weyl_character(rs: RootSystem, lam) -> LaurentPoly:
    shifted = tuple(a + b for a, b in zip(lam, rs.rho))
    alt = LaurentPoly({w.act(shifted): w.sign for w in rs.weyl_group()})
    return divide_by_delta(alt, rs)


def _ctx_shift(ctx: DunklContext, delta) -> DunklContext:
    return DunklContext(ctx.rs, Multiplicity.shifted(ctx.k, delta))


def weyl_character_identity_check(ctx: DunklContext, lam) -> bool:
    """P^-(lam + delta, k) == Delta * P(lam, k + 1)."""
    rs = ctx.rs
    lhs = jacobi_Pminus(ctx, tuple(a + b for a, b in zip(lam, rs.rho)))
    rhs = weyl_denominator(rs) * jacobi_P(_ctx_shift(ctx, 1), lam)
    return lhs == rhs


def _pi_pm(ctx: DunklContext, f: LaurentPoly, sign: int) -> LaurentPoly:
    g = f
    for r in ctx.rs.positive_roots:
        xi = tuple(Fraction(c) for c in r.coroot)
        g = ctx.T(xi, g) + g.scale(sign * ctx.k.of(r))
    return g


def shift_plus(ctx: DunklContext, f: LaurentPoly) -> LaurentPoly:
    """G_+(k) f = Delta^{-1} prod_{alpha>0} (T_{alpha^vee}(k) + k_alpha) f."""
    if not is_invariant(ctx.rs, f):
        raise ValueError("shift_plus expects a W-invariant polynomial")
    g = _pi_pm(ctx, f, +1)
    if not is_skew(ctx.rs, g):
        raise ImageNotSkew("pi^+(k)(T) f is not W-skew")
    return divide_by_delta(g, ctx.rs)


def shift_minus(ctx_kp1: DunklContext, f: LaurentPoly) -> LaurentPoly:
    """G_-(k+1) f = prod_{alpha>0} (T_{alpha^vee}(k) - k_alpha)(Delta f); ctx is at k+1."""
    if not is_invariant(ctx_kp1.rs, f):
        raise ValueError("shift_minus expects a W-invariant polynomial")
    ctx = _ctx_shift(ctx_kp1, -1)
    g = _pi_pm(ctx, weyl_denominator(ctx.rs) * f, -1)
    if not is_invariant(ctx.rs, g):
        raise ImageNotInvariant("pi^-(k)(T)(Delta f) is not W-invariant")
    return g


def jacobi_value_at_e(ctx: DunklContext, lam):
    """P(lam, k, e) = c~(rho(k), k) / c~(lam + rho(k), k) (integer k)."""
    rs, k = ctx.rs, ctx.k
    shifted = tuple(a + b for a, b in zip(lam, k.rho))
    return c_tilde(rs, k, rs.identity, k.rho) / c_tilde(rs, k, rs.identity, shifted)


# Jack polynomials --------------------------------------------------------------------

def _partition_to_weight(part, n):
    p = list(part) + [0] * (n - len(part))
    return tuple(p[i] - p[i + 1] for i in range(n - 1))


def _weight_to_partition(lam, size, n):
    # nu_i - nu_{i+1} = lam_i, |nu| = size
    tail = sum((i + 1) * lam[i] for i in range(n - 1))
    last = Fraction(size - tail, n)
    assert last.denominator == 1 and last >= 0
    nu = [int(last)]
    for i in reversed(range(n - 1)):
        nu.insert(0, nu[0] + lam[i])
    return tuple(x for x in nu if x)


def _hook_factors(part):
    """c_lambda(b) = alpha * arm(b) + leg(b) + 1 as (arm, leg + 1) pairs."""
    conj = [sum(1 for p in part if p > j) for j in range(part[0])] if part else []
    out = []
    for i, row in enumerate(part):
        for j in range(row):
            out.append((row - j - 1, conj[j] - i - 1 + 1))
    return out


def jack_expand(partition, n: int) -> dict:
    """J_lambda(x; alpha) in monomial symmetric functions of n variables.

    Returns {nu: {"v": {power: coeff}, "v_tilde": {...}, "v_tilde_nu": {...}}}
    with polynomials in alpha as {exponent: Fraction}.  ``v_tilde`` divides by
    u_lambda, ``v_tilde_nu`` by u_nu (the augmented monomial convention).
    """
    import sympy

    part = tuple(x for x in partition if x)
    if len(part) > n:
        raise PartitionTooLong(f"{partition} has more than {n} parts")
    size = sum(part)
    if n == 1:
        return {part: {"v": {0: Fraction(1)}, "v_tilde": {0: Fraction(1)},
                       "v_tilde_nu": {0: Fraction(1)}}}
    rs = build_root_system(f"A{n - 1}")
    ctx = DunklContext.symbolic(rs)
    lam = _partition_to_weight(part, n)
    P = jacobi_P(ctx, lam)
    alpha, kk = sympy.symbols("alpha k")
    hook = sympy.Integer(1)
    for arm, legp1 in _hook_factors(part):
        hook *= alpha * arm + legp1
    u_lam = math.prod(math.factorial(part.count(v)) for v in set(part))
    out = {}
    for mu, coef in P.terms.items():
        if not rs.is_dominant(mu):
            continue
        nu = _weight_to_partition(mu, size, n)
        u_nu = math.prod(math.factorial(nu.count(v)) for v in set(nu))
        expr = sympy.sympify(str(coef).replace("**", "^").replace("^", "**"), locals={"k": kk})
        v = sympy.cancel(sympy.together(expr.subs(kk, 1 / alpha) * hook))
        num, den = sympy.fraction(v)
        if sympy.Poly(den, alpha).degree() != 0:
            raise AssertionError(f"J coefficient is not a polynomial in alpha: {v}")
        poly = sympy.Poly(sympy.expand(num / den), alpha)
        vd = {m[0]: Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())}
        out[nu] = {
            "v": vd,
            "v_tilde": {e: c / u_lam for e, c in vd.items()},
            "v_tilde_nu": {e: c / u_nu for e, c in vd.items()},
        }
    return out


def is_nonneg_integral(poly: dict) -> bool:
    return all(c.denominator == 1 and c >= 0 for c in poly.values())
