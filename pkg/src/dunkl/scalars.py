"""Coefficient fields.

Three kinds of scalars flow through the library:

* ``fractions.Fraction`` (and plain ``int``) for exact rational work,
* :class:`RatFunc`, a reduced rational function in the multiplicity
  indeterminates with rational coefficients,
* ``float``/``complex`` for the numeric layer.

All algebra is written against the ordinary arithmetic operators, so any of
them can be used as the coefficient type of a Laurent polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import flint

__all__ = [
    "RatFunc",
    "RatFuncField",
    "symbolic_field",
    "specialize",
    "scalar_to_str",
    "parse_scalar",
    "is_zero",
    "to_complex",
]


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, int):
        return flint.fmpq(x)
    if isinstance(x, Rational):
        return flint.fmpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


class RatFuncField:
    """Field Q(k_1, ..., k_m) of rational functions in named indeterminates."""

    def __init__(self, names):
        self.names = tuple(names)
        if not self.names:
            raise ValueError("at least one indeterminate is required")
        self.ctx = flint.fmpq_mpoly_ctx.get(self.names, "lex")
        self._one = self.ctx.from_dict({(0,) * len(self.names): 1})

    def __repr__(self):
        return f"RatFuncField({', '.join(self.names)})"

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and other.names == self.names

    def __hash__(self):
        return hash(self.names)

    def gens(self):
        return tuple(RatFunc(self, g, self._one, normalized=True) for g in self.ctx.gens())

    def gen(self, name):
        return self.gens()[self.names.index(name)]

    def __call__(self, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            if x.field != self:
                raise ValueError("mixing rational functions over different fields")
            return x
        return RatFunc(self, self._one * _fmpq(x), self._one, normalized=True)


@lru_cache(maxsize=None)
def symbolic_field(names) -> RatFuncField:
    """Cached field constructor; ``names`` is a tuple of strings."""
    return RatFuncField(tuple(names))


class RatFunc:
    """Reduced fraction num/den with a monic denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: RatFuncField, num, den, normalized=False):
        self.field = field
        if not normalized:
            if den.is_zero():
                raise ZeroDivisionError("rational function with zero denominator")
            if num.is_zero():
                num, den = num * 0, field._one
            elif not den.is_constant():
                g = num.gcd(den)
                if not g.is_constant():
                    num = num / g
                    den = den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        self.num = num
        self.den = den

    # coercion -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise ValueError("mixing rational functions over different fields")
            return other
        if isinstance(other, (int, Rational, flint.fmpq)):
            return self.field(other)
        return None

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return Fraction(0)
        c = self.num.coeffs()[0]
        return Fraction(int(c.p), int(c.q))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den.is_constant():
                return RatFunc(self.field, self.num + o.num, self.den, normalized=True)
            return RatFunc(self.field, self.num + o.num, self.den)
        return RatFunc(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den, normalized=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, flint.fmpq)):
            c = _fmpq(other)
            if c == 0:
                return self.field(0)
            return RatFunc(self.field, self.num * c, self.den, normalized=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_constant() and o.den.is_constant():
            return RatFunc(self.field, self.num * o.num, self.den, normalized=True)
        return RatFunc(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational, flint.fmpq)):
            c = _fmpq(other)
            if c == 0:
                raise ZeroDivisionError("division by zero")
            return RatFunc(self.field, self.num / c, self.den, normalized=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.field, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self.field(1) / self) ** (-n)
        return RatFunc(self.field, self.num ** n, self.den ** n, normalized=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((str(self.num), str(self.den)))

    def __bool__(self):
        return not self.num.is_zero()

    def conjugate(self):
        # indeterminates are real parameters
        return self

    # evaluation ---------------------------------------------------------
    def subs(self, values: dict):
        """Substitute exact rationals for some or all indeterminates."""
        vals = {n: _fmpq(v) for n, v in values.items() if n in self.field.names}
        if not vals:
            return self
        if len(vals) == len(self.field.names):
            args = [vals[n] for n in self.field.names]
            d = self.den(*args)
            if d == 0:
                raise ZeroDivisionError("specialization hits a pole")
            q = self.num(*args) / d
            return Fraction(int(q.p), int(q.q))
        num = self.num.subs(vals)
        den = self.den.subs(vals)
        return RatFunc(self.field, num, den)

    def evalf(self, values: dict) -> complex:
        args = [complex(values[n]) for n in self.field.names]
        return _eval_poly_complex(self.num, args) / _eval_poly_complex(self.den, args)

    def __str__(self):
        num, den = _integral_pair(self.num, self.den)
        n = _poly_str(num)
        if den.is_one():
            return n
        d = _poly_str(den)
        if len(num.coeffs()) > 1:
            n = f"({n})"
        if any(ch in d for ch in "*+-"):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


def _integral_pair(num, den):
    """Scale num/den to coprime integer coefficients for display."""
    from math import gcd, lcm

    coeffs = list(num.coeffs()) + list(den.coeffs())
    scale = lcm(*[int(c.q) for c in coeffs]) if coeffs else 1
    ints = [int(c.p) * (scale // int(c.q)) for c in coeffs]
    g = gcd(*ints) if ints else 1
    factor = flint.fmpq(scale, g or 1)
    return num * factor, den * factor


def _poly_str(p) -> str:
    s = str(p)
    return s.replace(" ", "").replace("^", "**")


def _eval_poly_complex(p, args) -> complex:
    total = 0j
    for exps, c in zip(p.monoms(), p.coeffs()):
        term = complex(int(c.p)) / int(c.q)
        for a, e in zip(args, exps):
            if e:
                term *= a ** int(e)
        total += term
    return total


# helpers shared by every module -----------------------------------------

def is_zero(x) -> bool:
    if isinstance(x, RatFunc):
        return x.num.is_zero()
    return x == 0


def specialize(x, values: dict):
    """Substitute exact values for indeterminates; pass other scalars through."""
    if isinstance(x, RatFunc):
        return x.subs(values)
    return x


def to_complex(x, values: dict | None = None) -> complex:
    if isinstance(x, RatFunc):
        if x.is_constant():
            return complex(x.constant_value())
        if values is None:
            raise ValueError("numeric value of a symbolic scalar needs parameter values")
        return x.evalf(values)
    return complex(x)


def scalar_to_str(x) -> str:
    """Exact string form: ``3/4``, ``(k+1)/(2*k+1)``; floats use repr."""
    if isinstance(x, RatFunc):
        return str(x)
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        if x.imag == 0:
            return repr(x.real)
        return repr(x)
    return repr(x)


def parse_scalar(text: str):
    """Parse ``"3/4"`` or ``"-2"`` to a Fraction, otherwise a float."""
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        return float(text)
