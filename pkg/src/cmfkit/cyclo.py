"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is a vector of rationals of length phi(n), the coefficients of
1, zeta, ..., zeta^(phi(n)-1) after reduction modulo the n-th cyclotomic
polynomial.  That reduced form is canonical, so equality and hashing are
structural.  Square roots needed by the binary polyhedral groups come from
Gauss sums: sqrt(2) lives in Q(zeta_8), sqrt(5) in Q(zeta_5).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list, list]:
    """Division with remainder for dense univariate rational polynomials."""
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) < len(b):
            break
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = c
        for i, bc in enumerate(b):
            a[i + d] -= c * bc
        while a and not a[-1]:
            a.pop()
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[Fraction, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    # x^n - 1 = prod over d | n of Phi_d
    num = [Fraction(0)] * (n + 1)
    num[0] = Fraction(-1)
    num[n] = Fraction(1)
    for d in range(1, n):
        if n % d == 0:
            phi_d = list(cyclotomic_poly(d))
            num, rem = _poly_divmod(num, phi_d)
            if any(rem):
                raise ArithmeticError("cyclotomic division failure")
    while len(num) > 1 and not num[-1]:
        num.pop()
    return tuple(num)


class CycloNumber:
    """Element of Q(zeta_n) in reduced canonical form."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        self.n = n
        deg = euler_phi(n)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = _reduce_mod_cyclotomic(cs, n)
        cs += [Fraction(0)] * (deg - len(cs))
        if len(cs) != deg:
            raise ValueError("coefficient vector too long after reduction")
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, n: int) -> "CycloNumber":
        return cls(n, [])

    @classmethod
    def one(cls, n: int) -> "CycloNumber":
        return cls(n, [Fraction(1)])

    @classmethod
    def rational(cls, n: int, c) -> "CycloNumber":
        return cls(n, [Fraction(c)])

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloNumber":
        """zeta_n ** k."""
        k %= n
        v = [Fraction(0)] * (k + 1)
        v[k] = Fraction(1)
        return cls(n, v)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, CycloNumber):
            if other.n != self.n:
                raise ValueError("conductor mismatch")
            return other
        return CycloNumber.rational(self.n, other)

    def __add__(self, other):
        o = self._coerce(other)
        return CycloNumber(self.n, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        prod = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    prod[i + j] += a * b
        return CycloNumber(self.n, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return CycloNumber.rational(self.n, other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = CycloNumber.one(self.n)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def inverse(self) -> "CycloNumber":
        """Field inverse via the extended Euclidean algorithm mod Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = list(cyclotomic_poly(self.n))
        a = list(self.coeffs)
        while a and not a[-1]:
            a.pop()
        # extended euclid: s*a + t*phi = gcd
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            q, r = _poly_divmod(r0, r1)
            # s_new = s0 - q*s1
            s_new = list(s0) + [Fraction(0)] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qc in enumerate(q):
                if not qc:
                    continue
                for j, sc in enumerate(s1):
                    if sc:
                        s_new[i + j] -= qc * sc
            r0, r1 = r1, r
            s0, s1 = s1, s_new
        # r0 = gcd, a nonzero constant since Phi_n is irreducible
        while r0 and not r0[-1]:
            r0.pop()
        if len(r0) != 1:
            raise ArithmeticError("element not invertible; conductor not squarefree-reduced?")
        g = r0[0]
        return CycloNumber(self.n, [c / g for c in s0])

    def multiplicative_order(self, cap: int = 10000) -> int:
        """Order of this element in the unit group, scanning up to cap."""
        acc = self
        one = CycloNumber.one(self.n)
        for k in range(1, cap + 1):
            if acc == one:
                return k
            acc = acc * self
        raise ValueError("order exceeds cap")

    def __eq__(self, other):
        if isinstance(other, CycloNumber):
            return self.n == other.n and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == CycloNumber.rational(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        return f"CycloNumber(n={self.n}, {list(self.coeffs)})"


def _reduce_mod_cyclotomic(cs: list[Fraction], n: int) -> list[Fraction]:
    phi = list(cyclotomic_poly(n))
    _, rem = _poly_divmod(cs, phi)
    return rem


def sqrt2_in_q8() -> CycloNumber:
    """sqrt(2) = zeta_8 + zeta_8^7 as an element of Q(zeta_8)."""
    return CycloNumber.zeta(8, 1) + CycloNumber.zeta(8, 7)


def sqrt5_in_q5() -> CycloNumber:
    """sqrt(5) = 1 + 2*zeta_5 + 2*zeta_5^4 as an element of Q(zeta_5)."""
    return (
        CycloNumber.one(5)
        + CycloNumber.zeta(5, 1) * 2
        + CycloNumber.zeta(5, 4) * 2
    )
