"""Sparse exact multivariate polynomials.

Coefficients are ``fractions.Fraction`` by default, but any field element
supporting ``+ - * / ==`` and truthiness works (cyclotomic numbers, rational
functions).  Exponent vectors are tuples of non-negative ints, one slot per
variable.  No zero coefficient is ever stored; the zero polynomial has an
empty term map.

Term order is degree-lexicographic: compare total degree first, then the
exponent vector itself.  Printing and hashing use this canonical order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms: Mapping | None = None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            for exps, c in terms.items():
                if c:
                    e = tuple(exps)
                    if len(e) != len(self.vars):
                        raise ValueError("exponent vector length mismatch")
                    clean[e] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def const(cls, variables, c):
        variables = tuple(variables)
        if not isinstance(c, Fraction) and isinstance(c, int):
            c = Fraction(c)
        return cls(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, variables, name, exp: int = 1):
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = exp
        return cls(variables, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, variables, exps, c=Fraction(1)):
        return cls(variables, {tuple(exps): c})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def is_unit_local(self) -> bool:
        """Unit of the local ring at the origin: nonzero constant term."""
        return bool(self.constant_term())

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        out = MultiPoly.__new__(MultiPoly)
        out.vars, out.terms = self.vars, t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            out = MultiPoly.__new__(MultiPoly)
            out.vars = self.vars
            out.terms = {e: v for e, c in self.terms.items() if (v := c * other)}
            return out
        self._check(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = t.get(e)
                if s is None:
                    if c:
                        t[e] = c
                else:
                    s = s + c
                    if s:
                        t[e] = s
                    else:
                        del t[e]
        out = MultiPoly.__new__(MultiPoly)
        out.vars, out.terms = self.vars, t
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(self.vars, Fraction(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items(), key=lambda t: _deglex_key(t[0])))))

    def __bool__(self):
        return bool(self.terms)

    # -- structure ---------------------------------------------------------

    def leading_term(self):
        """(exps, coeff) maximal in deg-lex order.  Zero polynomial: error."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_deglex_key)
        return e, self.terms[e]

    def truncate(self, order: int) -> "MultiPoly":
        """Drop every term of total degree >= order."""
        out = MultiPoly.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = {e: c for e, c in self.terms.items() if sum(e) < order}
        return out

    def homogeneous_part(self, d: int) -> "MultiPoly":
        out = MultiPoly.__new__(MultiPoly)
        out.vars = self.vars
        out.terms = {e: c for e, c in self.terms.items() if sum(e) == d}
        return out

    def subs(self, mapping: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials for variables.  Unmapped variables persist."""
        target_vars = None
        for v in mapping.values():
            target_vars = v.vars
            break
        if target_vars is None:
            return self
        imgs = []
        for name in self.vars:
            if name in mapping:
                imgs.append(mapping[name])
            else:
                imgs.append(MultiPoly.var(target_vars, name))
        result = MultiPoly.zero(target_vars)
        for e, c in self.terms.items():
            term = MultiPoly.const(target_vars, c)
            for img, k in zip(imgs, e):
                if k:
                    term = term * img**k
            result = result + term
        return result

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    # -- printing / parsing -------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r})"


def _deglex_key(exps):
    return (sum(exps), exps)


# -- exact division --------------------------------------------------------


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly | None:
    """Return p/q when q divides p exactly, else None."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return MultiPoly.zero(p.vars)
    p._check(q)
    qe, qc = q.leading_term()
    quot = MultiPoly.zero(p.vars)
    rem = p
    while not rem.is_zero():
        re_, rc = rem.leading_term()
        diff = tuple(a - b for a, b in zip(re_, qe))
        if any(d < 0 for d in diff):
            return None
        t = MultiPoly.monomial(p.vars, diff, rc / qc)
        quot = quot + t
        rem = rem - t * q
    return quot


def divide_out(p: MultiPoly, q: MultiPoly) -> tuple[int, MultiPoly]:
    """Extract the largest power of q from p: p = q**e * cofactor, q ∤ cofactor."""
    if q.is_zero():
        raise ValueError("cannot divide out the zero polynomial")
    if q.is_constant():
        raise ValueError("cannot divide out a unit")
    e = 0
    cof = p
    if p.is_zero():
        return 0, p
    while True:
        nxt = exact_div(cof, q)
        if nxt is None:
            return e, cof
        e += 1
        cof = nxt


# -- text grammar -----------------------------------------------------------

_NUM_RE = re.compile(r"\d+")


def format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    return str(c)


def format_poly(p: MultiPoly) -> str:
    """Canonical rendering: deg-lex descending, explicit '*', '^' for exp >= 2."""
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), key=lambda t: _deglex_key(t[0]), reverse=True)
    pieces = []
    for i, (e, c) in enumerate(items):
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        factors = []
        for name, k in zip(p.vars, e):
            if k == 1:
                factors.append(name)
            elif k >= 2:
                factors.append(f"{name}^{k}")
        if not factors:
            body = format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_coeff(mag)] + factors)
        if i == 0:
            pieces.append("-" + body if neg else body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


class PolyParseError(ValueError):
    pass


def parse_poly(text: str, variables: Iterable[str]) -> MultiPoly:
    """Parse the polynomial grammar: signed sum of terms ``c*x^a*y^b``.

    '*' and '^1' are optional, coefficients are integers or p/q, whitespace
    is insignificant.  Round-trips with :func:`format_poly` on canonical form.
    """
    variables = tuple(variables)
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise PolyParseError("empty polynomial text")
    names = sorted(variables, key=len, reverse=True)
    pos = 0
    result = MultiPoly.zero(variables)
    sign = 1
    n = len(s)
    # leading sign
    while pos < n and s[pos] in "+-":
        if s[pos] == "-":
            sign = -sign
        pos += 1
    while pos < n:
        coeff = Fraction(sign)
        exps = [0] * len(variables)
        seen_any = False
        seen_coeff = False
        while pos < n and s[pos] not in "+-":
            ch = s[pos]
            if ch == "*":
                pos += 1
                continue
            if ch.isdigit():
                if (seen_any or seen_coeff) and s[pos - 1] != "*":
                    raise PolyParseError(f"unexpected number at {pos} in {text!r}")
                m = _NUM_RE.match(s, pos)
                num = int(m.group())
                pos = m.end()
                if pos < n and s[pos] == "/":
                    pos += 1
                    m2 = _NUM_RE.match(s, pos)
                    if not m2:
                        raise PolyParseError(f"missing denominator in {text!r}")
                    coeff = coeff * Fraction(num, int(m2.group()))
                    pos = m2.end()
                else:
                    coeff = coeff * num
                seen_coeff = True
                continue
            matched = None
            for name in names:
                if s.startswith(name, pos):
                    matched = name
                    break
            if matched is None:
                raise PolyParseError(f"unknown symbol at {pos} in {text!r}")
            pos += len(matched)
            k = 1
            if pos < n and s[pos] == "^":
                pos += 1
                m = _NUM_RE.match(s, pos)
                if not m:
                    raise PolyParseError(f"missing exponent in {text!r}")
                k = int(m.group())
                pos = m.end()
            exps[variables.index(matched)] += k
            seen_any = True
        if not seen_any and not seen_coeff:
            raise PolyParseError(f"empty term in {text!r}")
        result = result + MultiPoly.monomial(variables, exps, coeff)
        sign = 1
        while pos < n and s[pos] in "+-":
            if s[pos] == "-":
                sign = -sign
            pos += 1
    return result


# -- jets --------------------------------------------------------------------


class Jet:
    """Truncated polynomial: all stored terms have total degree < order.

    Arithmetic discards overflow eagerly, which keeps jet computations
    bounded in memory regardless of how many products are chained.
    """

    __slots__ = ("base", "order")

    def __init__(self, base: MultiPoly, order: int):
        if order <= 0:
            raise ValueError("jet order must be positive")
        self.base = base.truncate(order)
        self.order = order

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError("jet order mismatch")
            return other.base
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(self.base.vars, other)

    def __add__(self, other):
        return Jet(self.base + self._coerce(other), self.order)

    def __sub__(self, other):
        return Jet(self.base - self._coerce(other), self.order)

    def __mul__(self, other):
        return Jet(self.base * self._coerce(other), self.order)

    def __neg__(self):
        return Jet(-self.base, self.order)

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.order == other.order and self.base == other.base
        return NotImplemented

    def __hash__(self):
        return hash((self.base, self.order))

    def __repr__(self):
        return f"Jet({format_poly(self.base)!r}, order={self.order})"


def _exact_degree_vectors(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for k in range(d + 1):
        for rest in _exact_degree_vectors(nvars - 1, d - k):
            yield (k,) + rest


def monomials_below(nvars: int, order: int):
    """All exponent vectors with total degree < order, deg-lex ascending."""
    return [e for d in range(order) for e in _exact_degree_vectors(nvars, d)]
