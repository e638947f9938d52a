"""Rational functions num/den of multivariate polynomials.

Normalization divides out the numeric content and any common monomial
factor and makes the leading coefficient of the denominator positive.  That
is canonical whenever the denominator is (a constant times) a monomial,
which covers every use in this package; no general polynomial gcd is
attempted.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .poly import MultiPoly


def _content_and_monomial(p: MultiPoly):
    """(numeric content, common exponent vector) of a nonzero polynomial."""
    nums = 0
    dens = 1
    common = None
    for e, c in p.terms.items():
        nums = gcd(nums, c.numerator)
        dens = dens * c.denominator // gcd(dens, c.denominator)
        common = e if common is None else tuple(min(a, b) for a, b in zip(common, e))
    return Fraction(nums, dens), common


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.vars != den.vars:
            raise ValueError("variable mismatch")
        if num.is_zero():
            self.num = num
            self.den = MultiPoly.const(num.vars, 1)
            return
        cn, mn = _content_and_monomial(num)
        cd, md = _content_and_monomial(den)
        shared = tuple(min(a, b) for a, b in zip(mn, md))
        scale = cn / cd
        num = MultiPoly(
            num.vars,
            {
                tuple(a - b for a, b in zip(e, shared)): c / cn
                for e, c in num.terms.items()
            },
        )
        den = MultiPoly(
            den.vars,
            {
                tuple(a - b for a, b in zip(e, shared)): c / cd
                for e, c in den.terms.items()
            },
        )
        # fold the numeric scale into the numerator, keep den's leading coeff +1
        _, lead_c = den.leading_term()
        if lead_c < 0:
            scale = -scale
            den = -den
        self.num = num * scale
        self.den = den

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFunc":
        return cls(p, MultiPoly.const(p.vars, 1))

    @classmethod
    def const(cls, variables, c) -> "RatFunc":
        return cls.from_poly(MultiPoly.const(variables, c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc.from_poly(other)
        return RatFunc.const(self.num.vars, other)

    def __add__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (RatFunc, MultiPoly, int, Fraction)):
            o = self._coerce(other)
            return self.num * o.den == o.num * self.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == MultiPoly.const(self.den.vars, 1):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"
