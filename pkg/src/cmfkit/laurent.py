"""Univariate Laurent polynomials with exact rational coefficients.

Finite support only: these are honest Laurent polynomials, never truncated
series.  Where an algorithm needs the inverse of a unit power series it asks
for it explicitly up to a stated exponent bound (``inverse_mod``), and the
caller is responsible for tracking that bound.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


class LaurentPoly:
    __slots__ = ("var", "terms")

    def __init__(self, var: str, terms: Mapping[int, Fraction] | None = None):
        self.var = var
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[int(k)] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean

    @classmethod
    def zero(cls, var: str) -> "LaurentPoly":
        return cls(var, {})

    @classmethod
    def const(cls, var: str, c) -> "LaurentPoly":
        return cls(var, {0: Fraction(c)})

    @classmethod
    def t(cls, var: str, k: int = 1, c=1) -> "LaurentPoly":
        return cls(var, {k: Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.var != other.var:
            raise ValueError("variable mismatch")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(self.var, other)
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k)
            s = c if s is None else s + c
            if s:
                t[k] = s
            elif k in t:
                del t[k]
        out = LaurentPoly.__new__(LaurentPoly)
        out.var, out.terms = self.var, t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out.var = self.var
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(self.var, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = Fraction(other)
            out = LaurentPoly.__new__(LaurentPoly)
            out.var = self.var
            out.terms = {k: v for k, w in self.terms.items() if (v := w * c)}
            return out
        self._check(other)
        t: dict[int, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                s = t.get(k)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    t[k] = s
                elif k in t:
                    del t[k]
        out = LaurentPoly.__new__(LaurentPoly)
        out.var, out.terms = self.var, t
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.var == other.var and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.var, tuple(sorted(self.terms.items()))))

    def valuation(self) -> int:
        """Smallest exponent with nonzero coefficient.  Zero input: error."""
        if not self.terms:
            raise ValueError("valuation of zero")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("max exponent of zero")
        return max(self.terms)

    def coeff(self, k: int) -> Fraction:
        return self.terms.get(k, Fraction(0))

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t**k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.var = self.var
        out.terms = {e + k: c for e, c in self.terms.items()}
        return out

    def truncate(self, prec: int) -> "LaurentPoly":
        """Drop exponents >= prec."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.var = self.var
        out.terms = {e: c for e, c in self.terms.items() if e < prec}
        return out

    def even_part(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out.var = self.var
        out.terms = {e: c for e, c in self.terms.items() if e % 2 == 0}
        return out

    def is_even(self) -> bool:
        return all(e % 2 == 0 for e in self.terms)

    def substitute_square(self) -> "LaurentPoly":
        """p(t) -> p(t**2); doubles every exponent."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.var = self.var
        out.terms = {2 * e: c for e, c in self.terms.items()}
        return out

    def inverse_mod(self, prec: int) -> "LaurentPoly":
        """Inverse of this element, correct modulo t**prec.

        Requires the leading (lowest) coefficient to be nonzero, which over a
        field is automatic for any nonzero element; the result has valuation
        -valuation(self).
        """
        if not self.terms:
            raise ZeroDivisionError("inverse of zero")
        v = self.valuation()
        lead = self.terms[v]
        # u = self / (lead * t^v) is a unit power series with constant term 1
        u = {e - v: c / lead for e, c in self.terms.items()}
        # invert 1 + n(t) by the recursive formula up to the needed order
        need = prec + v  # we want error O(t^prec) after shifting back by -v
        inv = {0: Fraction(1)}
        ordered = sorted(e for e in u if e > 0)
        for k in range(1, max(1, need + 1)):
            acc = Fraction(0)
            for e in ordered:
                if e > k:
                    break
                c2 = inv.get(k - e)
                if c2:
                    acc += u[e] * c2
            if acc:
                inv[k] = -acc
        out = LaurentPoly(
            self.var, {e - v: c / lead for e, c in inv.items() if e - v < prec}
        )
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                body = str(c)
            else:
                mag = f"{self.var}" if e == 1 else f"{self.var}^{e}"
                if c == 1:
                    body = mag
                elif c == -1:
                    body = "-" + mag
                else:
                    body = f"{c}*{mag}"
            bits.append(body)
        s = bits[0]
        for b in bits[1:]:
            s += " - " + b[1:] if b.startswith("-") else " + " + b
        return s

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def laurent_val(p: LaurentPoly) -> int:
    """Order of vanishing: smallest exponent carrying a nonzero coefficient."""
    return p.valuation()


def even_odd_split(p: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Write p(t) = even(t) + t*odd(t) with both parts supported on even exponents."""
    ev = {}
    od = {}
    for e, c in p.terms.items():
        if e % 2 == 0:
            ev[e] = c
        else:
            od[e - 1] = c
    return LaurentPoly(p.var, ev), LaurentPoly(p.var, od)
