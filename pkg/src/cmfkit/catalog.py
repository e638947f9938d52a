"""Pre-verified matrix-factorization families and quotient-module helpers.

Every constructor returns a validated MatrixFactorization; nothing here is
assumed, each pair is checked on construction.  Where a displayed pair in
the source literature fails the defining identity by a sign or lettering
pattern, the catalog carries the corrected partner (the one the identity
forces) and reports the discrepancy instead of silently matching.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .mf import HypersurfaceSpec, MatrixFactorization
from .pmatrix import PolyMatrix
from .poly import MultiPoly, parse_poly
from .ratfunc import RatFunc

# -- ambient rings -------------------------------------------------------------


@lru_cache(maxsize=None)
def ring_an(n: int) -> HypersurfaceSpec:
    """k[u,v,w] / (u*v - w^n), the cyclic quotient surface ring."""
    v = ("u", "v", "w")
    f = parse_poly(f"u*v - w^{n}", v)
    return HypersurfaceSpec(v, f, (f,))


@lru_cache(maxsize=None)
def ring_an_curve(n: int) -> HypersurfaceSpec:
    """k[x,y] / (y^2 - x^(2n)), the curve case with two branches."""
    v = ("x", "y")
    f = parse_poly(f"y^2 - x^{2 * n}", v)
    minus = parse_poly(f"y - x^{n}", v)
    plus = parse_poly(f"y + x^{n}", v)
    return HypersurfaceSpec(v, f, (minus, plus))


@lru_cache(maxsize=None)
def ring_ainf() -> HypersurfaceSpec:
    v = ("x", "y", "z")
    f = parse_poly("x*y", v)
    return HypersurfaceSpec(v, f, (parse_poly("x", v), parse_poly("y", v)))


@lru_cache(maxsize=None)
def ring_dinf() -> HypersurfaceSpec:
    v = ("x", "y", "z")
    f = parse_poly("x^2*y - z^2", v)
    return HypersurfaceSpec(v, f, (f,))


@lru_cache(maxsize=None)
def ring_xyz() -> HypersurfaceSpec:
    """k[x,y,z] / (x*y*z), the three-plane hypersurface."""
    v = ("x", "y", "z")
    f = parse_poly("x*y*z", v)
    return HypersurfaceSpec(
        v, f, (parse_poly("x", v), parse_poly("y", v), parse_poly("z", v))
    )


def _m(ring: HypersurfaceSpec, rows: list[list[str]]) -> PolyMatrix:
    return PolyMatrix([[ring.poly(s) for s in row] for row in rows])


# -- rank-one family over the cyclic quotient ----------------------------------


def family_an(n: int, l: int) -> MatrixFactorization:
    """phi_l = [[u, -w^(n-l)], [-w^l, v]] over u*v - w^n, for 1 <= l < n."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not 1 <= l < n:
        raise ValueError("need 1 <= l < n")
    ring = ring_an(n)
    phi = _m(ring, [["u", f"-w^{n - l}"], [f"-w^{l}", "v"]])
    psi = _m(ring, [["v", f"w^{n - l}"], [f"w^{l}", "u"]])
    return MatrixFactorization(ring, phi, psi)


def family_an_curve(n: int, sign: int) -> MatrixFactorization:
    """1x1 pair (y + sign*x^n, y - sign*x^n) over y^2 - x^(2n)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ring = ring_an_curve(n)
    s = "+" if sign == 1 else "-"
    o = "-" if sign == 1 else "+"
    phi = _m(ring, [[f"y {s} x^{n}".replace(" ", "")]])
    psi = _m(ring, [[f"y {o} x^{n}".replace(" ", "")]])
    return MatrixFactorization(ring, phi, psi)


# -- the two-plane surface ------------------------------------------------------


def family_ainf(n: int) -> MatrixFactorization:
    """phi_n = [[y, z^n], [0, x]] over x*y, for n >= 1."""
    if n < 1:
        raise ValueError("need n >= 1")
    ring = ring_ainf()
    phi = _m(ring, [["y", f"z^{n}"], ["0", "x"]])
    psi = _m(ring, [["x", f"-z^{n}"], ["0", "y"]])
    return MatrixFactorization(ring, phi, psi)


def family_ainf_component(which: int) -> MatrixFactorization:
    """The two normalization components: 1 -> (y, x), 2 -> (x, y)."""
    ring = ring_ainf()
    if which == 1:
        return MatrixFactorization(ring, _m(ring, [["y"]]), _m(ring, [["x"]]))
    if which == 2:
        return MatrixFactorization(ring, _m(ring, [["x"]]), _m(ring, [["y"]]))
    raise ValueError("component index must be 1 or 2")


# -- the pinch-point surface ----------------------------------------------------


def family_dinf_alpha() -> MatrixFactorization:
    ring = ring_dinf()
    phi = _m(ring, [["z", "x*y"], ["x", "z"]])
    psi = _m(ring, [["-z", "x*y"], ["x", "-z"]])
    return MatrixFactorization(ring, phi, psi)


def family_dinf_beta() -> MatrixFactorization:
    ring = ring_dinf()
    phi = _m(ring, [["x^2", "z"], ["z", "y"]])
    psi = _m(ring, [["y", "-z"], ["-z", "x^2"]])
    return MatrixFactorization(ring, phi, psi)


def family_dinf_gamma(m: int) -> MatrixFactorization:
    """4x4 rank-two pair; the minus partner flips only the z signs."""
    if m < 1:
        raise ValueError("need m >= 1")
    ring = ring_dinf()
    phi = _m(
        ring,
        [
            ["z", "x*y", "0", f"-y^{m + 1}"],
            ["x", "z", f"y^{m}", "0"],
            ["0", "0", "z", "x*y"],
            ["0", "0", "x", "z"],
        ],
    )
    psi = _m(
        ring,
        [
            ["-z", "x*y", "0", f"-y^{m + 1}"],
            ["x", "-z", f"y^{m}", "0"],
            ["0", "0", "-z", "x*y"],
            ["0", "0", "x", "-z"],
        ],
    )
    return MatrixFactorization(ring, phi, psi)


def family_dinf_delta(m: int) -> MatrixFactorization:
    if m < 1:
        raise ValueError("need m >= 1")
    ring = ring_dinf()
    phi = _m(
        ring,
        [
            ["z", "x*y", f"-y^{m}", "0"],
            ["x", "z", "0", f"y^{m}"],
            ["0", "0", "z", "x*y"],
            ["0", "0", "x", "z"],
        ],
    )
    psi = _m(
        ring,
        [
            ["-z", "x*y", f"-y^{m}", "0"],
            ["x", "-z", "0", f"y^{m}"],
            ["0", "0", "-z", "x*y"],
            ["0", "0", "x", "-z"],
        ],
    )
    return MatrixFactorization(ring, phi, psi)


# -- family registry (CLI surface) ----------------------------------------------

FAMILY_TABLE = [
    ("an", "an:<n>:<l>", "2x2 rank-one pair over u*v - w^n, 1 <= l < n, n >= 2"),
    ("an-curve", "an-curve:<n>:<+1|-1>", "1x1 branch pair over y^2 - x^(2n), n >= 1"),
    ("ainf", "ainf:<n>", "2x2 pair [[y, z^n], [0, x]] over x*y, n >= 1"),
    ("ainf-comp", "ainf-comp:<1|2>", "1x1 normalization components over x*y"),
    ("dinf-alpha", "dinf-alpha", "2x2 normalization pair over x^2*y - z^2"),
    ("dinf-beta", "dinf-beta", "2x2 ideal (x^2, z) pair over x^2*y - z^2"),
    ("dinf-gamma", "dinf-gamma:<m>", "4x4 rank-two pair over x^2*y - z^2, m >= 1"),
    ("dinf-delta", "dinf-delta:<m>", "4x4 rank-two pair over x^2*y - z^2, m >= 1"),
]


def family(spec: str) -> MatrixFactorization:
    """Parse a family id like 'an:4:2' or 'dinf-gamma:3' and build it."""
    parts = spec.split(":")
    name, args = parts[0], parts[1:]
    try:
        if name == "an":
            return family_an(int(args[0]), int(args[1]))
        if name == "an-curve":
            return family_an_curve(int(args[0]), int(args[1]))
        if name == "ainf":
            return family_ainf(int(args[0]))
        if name == "ainf-comp":
            return family_ainf_component(int(args[0]))
        if name == "dinf-alpha":
            return family_dinf_alpha()
        if name == "dinf-beta":
            return family_dinf_beta()
        if name == "dinf-gamma":
            return family_dinf_gamma(int(args[0]))
        if name == "dinf-delta":
            return family_dinf_delta(int(args[0]))
    except (IndexError, ValueError) as exc:
        raise ValueError(f"bad family spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown family {name!r}")


# -- the elliptic rank-one family -----------------------------------------------

_PARAMS = ("a", "b", "c")
_XYZ = ("x", "y", "z")
_SIX = _PARAMS + _XYZ


def _nested(text: str) -> MultiPoly:
    """Parse text in a,b,c,x,y,z into an (x,y,z)-polynomial with Q(a,b,c)
    coefficients."""
    p6 = parse_poly(text, _SIX)
    terms: dict = {}
    for e, c in p6.terms.items():
        abc, xyz_e = e[:3], e[3:]
        cf = RatFunc.from_poly(MultiPoly.monomial(_PARAMS, abc, c))
        if xyz_e in terms:
            terms[xyz_e] = terms[xyz_e] + cf
        else:
            terms[xyz_e] = cf
    return MultiPoly(_XYZ, terms)


def _adjugate3(m: PolyMatrix) -> PolyMatrix:
    e = m.entries

    def c2(r1, c1, r2, c2_):
        return e[r1][c1] * e[r2][c2_] - e[r1][c2_] * e[r2][c1]

    rows = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    idx = [0, 1, 2]
    for i in range(3):
        for j in range(3):
            rs = [r for r in idx if r != j]
            cs = [c for c in idx if c != i]
            minor = e[rs[0]][cs[0]] * e[rs[1]][cs[1]] - e[rs[0]][cs[1]] * e[rs[1]][cs[0]]
            rows[i][j] = minor if (i + j) % 2 == 0 else -minor
    return PolyMatrix(rows)


def eg_e6_displayed_partner() -> PolyMatrix:
    """The partner matrix as commonly displayed (kept verbatim for comparison)."""
    rows = [
        ["a^2*y*z - b*c*x^2", "c^2*x*y - a*b*z^2", "b^2*x*y - a*c*y^2"],
        ["b^2*x*y - a*c*z^2", "a^2*y*z - b*c*y^2", "c^2*y*z - a*b*x^2"],
        ["c^2*x*z - a*b*y^2", "b^2*y*z - a*c*x^2", "a^2*x*y - b*c*z^2"],
    ]
    return PolyMatrix([[_nested(s) for s in row] for row in rows])


def eg_e6_target() -> MultiPoly:
    """-(a*b*c) * (x^3 + y^3 + z^3 + tau*x*y*z) with tau = -(a^3+b^3+c^3)/(a*b*c)."""
    return _nested(
        "-a*b*c*x^3 - a*b*c*y^3 - a*b*c*z^3"
        " + a^3*x*y*z + b^3*x*y*z + c^3*x*y*z"
    )


def eg_e6_pair() -> tuple[PolyMatrix, PolyMatrix, bool]:
    """Symbolic rank-one pair over w = x^3 + y^3 + z^3 + tau*x*y*z.

    Entries live in Q(a,b,c)[x,y,z] with tau = -(a^3+b^3+c^3)/(a*b*c)
    eliminated, so that phi*psi = psi*phi = -(a*b*c)*w * Id holds exactly:
    phi is a Latin-square matrix of linear forms and psi its classical
    adjugate.  The returned flag records whether the commonly displayed
    partner agrees with the computed adjugate (it does not; the display
    scrambles letters, and the adjugate is the ground truth).
    """
    phi = PolyMatrix(
        [
            [_nested("a*x"), _nested("b*y"), _nested("c*z")],
            [_nested("c*y"), _nested("a*z"), _nested("b*x")],
            [_nested("b*z"), _nested("c*x"), _nested("a*y")],
        ]
    )
    psi = _adjugate3(phi)
    displayed = eg_e6_displayed_partner()
    matches = _matches_after_scaling(psi, displayed)
    return phi, psi, matches


def _matches_after_scaling(computed: PolyMatrix, displayed: PolyMatrix) -> bool:
    """Does displayed = lambda * computed for a single scalar lambda?"""
    lam = None
    for i in range(computed.rows):
        for j in range(computed.cols):
            p, q = computed.entries[i][j], displayed.entries[i][j]
            if p.is_zero() != q.is_zero():
                return False
            if p.is_zero():
                continue
            if set(p.terms) != set(q.terms):
                return False
            for e, c in p.terms.items():
                ratio = q.terms[e] / c
                if lam is None:
                    lam = ratio
                elif ratio != lam:
                    return False
    return lam is not None


# -- cyclic quotient module generators -------------------------------------------


def cyclic_module_generators(
    n: int, m: int, l: int, degree_bound: int
) -> list[tuple[int, int]]:
    """Minimal monomial generators of the weight-l module over the invariant ring.

    The module is spanned by the monomials x1^i * x2^j with i + m*j = l (mod n);
    the invariant ring is spanned by those with i + m*j = 0 (mod n).  Brute
    force: scan qualifying monomials by increasing total degree and drop any
    that is an invariant-monomial multiple of a retained one.  Returns the
    exponent pairs (i, j), sorted.
    """
    from math import gcd

    if not (0 < m < n):
        raise ValueError("need 0 < m < n")
    if gcd(n, m) != 1:
        raise ValueError("need gcd(n, m) = 1")
    if not (1 <= l <= n):
        raise ValueError("need 1 <= l <= n")

    def weight(i, j):
        return (i + m * j) % n

    target = l % n
    retained: list[tuple[int, int]] = []
    for d in range(degree_bound + 1):
        for i in range(d + 1):
            j = d - i
            if weight(i, j) != target:
                continue
            reducible = False
            for (gi, gj) in retained:
                di, dj = i - gi, j - gj
                if di >= 0 and dj >= 0 and (di or dj) and weight(di, dj) == 0:
                    reducible = True
                    break
            if not reducible:
                retained.append((i, j))
    return sorted(retained)
