"""Sparse Laurent polynomials C[H] with the Weyl group action.

A :class:`LaurentPoly` maps weights (integer tuples in fundamental-weight
coordinates) to scalars.  Zero coefficients are never stored.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

from .root_data import Multiplicity, Root, RootSystem, WeylElement
from .scalars import is_zero, scalar_to_str

__all__ = [
    "LaurentPoly",
    "NotSkew",
    "NotDivisible",
    "NonIntegerMultiplicity",
    "DeltaNotInLattice",
    "divided_difference",
    "divided_difference_monomial",
    "weyl_denominator",
    "weyl_denominator_alternating",
    "divide_by_delta",
    "inner_product_int_k",
    "delta_k",
    "is_invariant",
    "is_skew",
    "monomial_symmetric",
]


class NotSkew(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


class NonIntegerMultiplicity(ValueError):
    pass


class DeltaNotInLattice(ValueError):
    pass


class LaurentPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for w, c in dict(terms).items():
                if not is_zero(c):
                    t[tuple(w)] = c
        self.terms = t

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def monomial(cls, weight, coef=1) -> "LaurentPoly":
        return cls({tuple(weight): coef})

    @classmethod
    def constant(cls, c, rank: int) -> "LaurentPoly":
        return cls({(0,) * rank: c})

    # container protocol ---------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __getitem__(self, weight):
        return self.terms.get(tuple(weight), 0)

    def support(self) -> set:
        return set(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # ring operations -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            if w in out:
                s = out[w] + c
                if is_zero(s):
                    del out[w]
                else:
                    out[w] = s
            else:
                out[w] = c
        return LaurentPoly._raw(out)

    def __neg__(self):
        return LaurentPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "LaurentPoly":
        if is_zero(s):
            return LaurentPoly()
        return LaurentPoly({w: c * s for w, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                out[w] = out[w] + c1 * c2 if w in out else c1 * c2
        return LaurentPoly(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, s):
        return LaurentPoly({w: c / s for w, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        rank = len(next(iter(self.terms))) if self.terms else 0
        out = LaurentPoly.constant(1, rank)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms))

    def shift(self, weight) -> "LaurentPoly":
        """Multiplication by e^weight."""
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(w, weight)): c for w, c in self.terms.items()}
        )

    def map_coefficients(self, fn) -> "LaurentPoly":
        return LaurentPoly({w: fn(c) for w, c in self.terms.items()})

    # actions -----------------------------------------------------------------
    def w_act(self, w: WeylElement) -> "LaurentPoly":
        """e^lam -> e^{w lam}."""
        return LaurentPoly._raw({w.act(lam): c for lam, c in self.terms.items()})

    def reflect(self, rs: RootSystem, root: Root) -> "LaurentPoly":
        return LaurentPoly._raw({rs.reflect(root, lam): c for lam, c in self.terms.items()})

    def bar(self) -> "LaurentPoly":
        """Complex conjugation on the compact torus: e^lam -> e^-lam, coefficients conjugated."""
        out = {}
        for w, c in self.terms.items():
            if isinstance(c, (complex, float)):
                c = c.conjugate()
            elif hasattr(c, "conjugate") and not isinstance(c, (int, Fraction)):
                c = c.conjugate()
            out[tuple(-x for x in w)] = c
        return LaurentPoly._raw(out)

    def constant_term(self):
        rank = len(next(iter(self.terms))) if self.terms else 0
        return self.terms.get((0,) * rank, 0)

    def value_at_identity(self):
        """f(e): the sum of all coefficients."""
        total = 0
        for c in self.terms.values():
            total = total + c
        return total

    def evaluate(self, rs: RootSystem, point, values: dict | None = None) -> complex:
        """f(a) where ``point`` is H in simple-coroot coordinates and a = exp(H)."""
        from .scalars import to_complex

        total = 0j
        for lam, c in self.terms.items():
            total += to_complex(c, values) * cmath.exp(sum(x * h for x, h in zip(lam, point)))
        return total

    # display --------------------------------------------------------------------
    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: t[0])

    def to_json(self) -> list:
        return [[list(w), scalar_to_str(c)] for w, c in self.sorted_terms()]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"({scalar_to_str(c)})*e^{list(w)}" for w, c in self.sorted_terms()]
        return " + ".join(parts)


# divided differences ----------------------------------------------------------

def divided_difference_monomial(rs: RootSystem, root: Root, lam) -> dict:
    """(1 - e^-alpha)^-1 (1 - r_alpha) e^lam as a {weight: int} dictionary."""
    m = rs.pairing(lam, root.coroot)
    a = root.weight
    if m == 0:
        return {}
    if m > 0:
        return {tuple(x - j * y for x, y in zip(lam, a)): 1 for j in range(m)}
    top = rs.reflect(root, lam)
    return {tuple(x - j * y for x, y in zip(top, a)): -1 for j in range(-m)}


def divided_difference(rs: RootSystem, root: Root, f: LaurentPoly) -> LaurentPoly:
    if not root.positive:
        raise ValueError("divided differences are taken along positive roots")
    out: dict = {}
    for lam, c in f.terms.items():
        for mu, s in divided_difference_monomial(rs, root, lam).items():
            term = c if s == 1 else -c
            out[mu] = out[mu] + term if mu in out else term
    return LaurentPoly(out)


# Weyl denominator ----------------------------------------------------------------

@lru_cache(maxsize=None)
def weyl_denominator(rs: RootSystem) -> LaurentPoly:
    """Delta = e^delta prod_{alpha>0} (1 - e^-alpha)."""
    if not all(Fraction(x).denominator == 1 for x in rs.rho):
        raise DeltaNotInLattice(rs.label)
    out = LaurentPoly.monomial(rs.rho, 1)
    for r in rs.positive_roots:
        out = out * LaurentPoly({(0,) * rs.rank: 1, tuple(-x for x in r.weight): -1})
    return out


def weyl_denominator_alternating(rs: RootSystem) -> LaurentPoly:
    """sum_w sign(w) e^{w delta}."""
    return LaurentPoly({w.act(rs.rho): w.sign for w in rs.weyl_group()})


def _orbit_with_signs(rs: RootSystem, lam) -> dict:
    """Map mu in W lam to the sign of some w with w lam = mu (lam regular)."""
    lam = tuple(lam)
    signs = {lam: 1}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for r in rs.simple_roots:
                nu = rs.reflect(r, mu)
                if nu not in signs:
                    signs[nu] = -signs[mu]
                    nxt.append(nu)
        frontier = nxt
    return signs


def is_invariant(rs: RootSystem, f: LaurentPoly) -> bool:
    return all(f.reflect(rs, r) == f for r in rs.simple_roots)


def is_skew(rs: RootSystem, f: LaurentPoly) -> bool:
    return all(f.reflect(rs, r) == -f for r in rs.simple_roots)


def monomial_symmetric(rs: RootSystem, lam, coef=1) -> LaurentPoly:
    return LaurentPoly({mu: coef for mu in rs.orbit(lam)})


def divide_by_delta(p: LaurentPoly, rs: RootSystem) -> LaurentPoly:
    """Exact quotient of a W-skew polynomial by Delta.

    Divides successively by (1 - e^-alpha) along each positive root: along every
    line mu + Z alpha the quotient coefficients are partial sums, and a nonzero
    final partial sum means the division is not exact.
    """
    if not is_skew(rs, p):
        raise NotSkew("polynomial is not W-skew")
    q = p.shift(tuple(-x for x in rs.rho))
    for r in rs.positive_roots:
        q = _divide_one_minus(q, rs, r)
    return q


def _divide_one_minus(f: LaurentPoly, rs: RootSystem, root: Root) -> LaurentPoly:
    a = root.weight
    c = root.coroot
    lines: dict = {}
    for mu, coef in f.terms.items():
        # position along the line: pairing with alpha^vee changes by 2 per step
        t = rs.pairing(mu, c)
        base = tuple(x - Fraction(t, 2) * y for x, y in zip(mu, a))
        lines.setdefault(base, []).append((t, mu, coef))
    out = {}
    for entries in lines.values():
        entries.sort(key=lambda e: -e[0])  # highest along alpha first
        top_t, top_mu = entries[0][0], entries[0][1]
        coeffs = {t: coef for t, _, coef in entries}
        span = (top_t - entries[-1][0]) // 2
        running = 0
        for j in range(span + 1):
            running = running + coeffs.get(top_t - 2 * j, 0)
            if j < span and not is_zero(running):
                out[tuple(x - j * y for x, y in zip(top_mu, a))] = running
        if not is_zero(running):
            raise NotDivisible("not divisible by 1 - e^-alpha")
    return LaurentPoly(out)


# constant term inner product ---------------------------------------------------

def _as_int(v) -> int:
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    from .scalars import RatFunc

    if isinstance(v, RatFunc) and v.is_constant() and v.constant_value().denominator == 1:
        return int(v.constant_value())
    raise NonIntegerMultiplicity(f"multiplicity {v!r} is not a nonnegative integer")


@lru_cache(maxsize=None)
def _delta_k_cached(rs: RootSystem, ks: tuple) -> LaurentPoly:
    rank = rs.rank
    out = LaurentPoly.constant(1, rank)
    for r in rs.positive_roots:
        kv = ks[r.orbit]
        factor = LaurentPoly({(0,) * rank: 2, r.weight: -1, tuple(-x for x in r.weight): -1})
        for _ in range(kv):
            out = out * factor
    return out


def delta_k(rs: RootSystem, k: Multiplicity) -> LaurentPoly:
    """prod_{alpha>0} ((1-e^alpha)(1-e^-alpha))^{k_alpha} for integer k >= 0."""
    ks = tuple(_as_int(v) for v in k.values)
    if any(v < 0 for v in ks):
        raise NonIntegerMultiplicity("negative multiplicity")
    return _delta_k_cached(rs, ks)


def inner_product_int_k(f: LaurentPoly, g: LaurentPoly, k: Multiplicity):
    """(f, g)_k = CT(f * bar(g) * delta_k), normalized so that vol(T) = 1."""
    dk = delta_k(k.rs, k)
    total = 0
    gb = g.bar()
    for mu, a in f.terms.items():
        for nu, b in gb.terms.items():
            # need coefficient of e^{-(mu+nu)} in delta_k
            key = tuple(-(x + y) for x, y in zip(mu, nu))
            c = dk.terms.get(key)
            if c is not None:
                total = total + a * b * c
    return total
