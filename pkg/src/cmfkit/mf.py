"""Matrix factorizations of hypersurface equations.

A matrix factorization of f is a pair (phi, psi) of square matrices over the
ambient polynomial ring with phi*psi = psi*phi = f*I, checked exactly on
construction.  The cokernel of phi is then a maximal Cohen-Macaulay module
over the hypersurface ring, and all module-level reasoning in this package
happens through such pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .pmatrix import PolyMatrix, block_diag, identity, poly_det, scalar_matrix
from .poly import MultiPoly, divide_out, exact_div, monomials_below

# -- errors ------------------------------------------------------------------


class MFError(Exception):
    pass


class IdentityFails(MFError):
    """phi*psi = f*I failed; carries the first offending position."""

    def __init__(self, i: int, j: int, residual: MultiPoly, side: str):
        self.i = i
        self.j = j
        self.residual = residual
        self.side = side
        super().__init__(f"{side} identity fails at ({i}, {j}): residual {residual}")


class DetNotDividing(MFError):
    pass


class NoSolutionAtBound(MFError):
    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"no completion with entries of degree <= {bound}")


class CofactorNotUnit(MFError):
    pass


class RingMismatch(MFError):
    pass


# -- ring spec ---------------------------------------------------------------


@dataclass(frozen=True)
class HypersurfaceSpec:
    """Ambient variables, the equation f, and optionally its irreducible factors."""

    variables: tuple[str, ...]
    f: MultiPoly
    irreducible_factors: tuple[MultiPoly, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.f.vars != self.variables:
            raise ValueError("f not over the declared variables")
        if self.f.is_zero() or self.f.is_constant():
            raise ValueError("f must be a nonzero non-unit")
        if self.irreducible_factors is not None:
            fac = tuple(self.irreducible_factors)
            object.__setattr__(self, "irreducible_factors", fac)
            prod = MultiPoly.const(self.variables, 1)
            for g in fac:
                if g.is_zero() or g.is_constant():
                    raise ValueError("factors must be non-units")
                prod = prod * g
            q = exact_div(self.f, prod)
            if q is None or not q.is_unit_local():
                raise ValueError("factor product does not match f up to a unit")
            for i in range(len(fac)):
                for j in range(i + 1, len(fac)):
                    r = exact_div(fac[i], fac[j])
                    if r is not None and r.is_unit_local():
                        raise ValueError("factors must be pairwise non-associate")

    def zero(self) -> MultiPoly:
        return MultiPoly.zero(self.variables)

    def one(self) -> MultiPoly:
        return MultiPoly.const(self.variables, 1)

    def reduced_equation(self) -> MultiPoly:
        """Product of the declared irreducible factors; f itself when absent.

        Generates the defining ideal of the hypersurface ring even when f
        carries a unit cofactor (local units do not change the ideal in the
        complete local ring).
        """
        if self.irreducible_factors is None:
            return self.f
        prod = self.one()
        for g in self.irreducible_factors:
            prod = prod * g
        return prod

    def poly(self, text: str) -> MultiPoly:
        from .poly import parse_poly

        return parse_poly(text, self.variables)


@dataclass(frozen=True)
class Multirank:
    exponents: tuple[int, ...]
    unit: MultiPoly


class MatrixFactorization:
    """Validated pair (phi, psi) with phi*psi = psi*phi = f*I."""

    __slots__ = ("ring", "size", "phi", "psi")

    def __init__(self, ring: HypersurfaceSpec, phi: PolyMatrix, psi: PolyMatrix):
        if not (phi.is_square() and psi.is_square() and phi.rows == psi.rows):
            raise MFError("phi and psi must be square of equal size")
        self.ring = ring
        self.size = phi.rows
        self.phi = phi
        self.psi = psi
        _check_identity(ring, phi, psi, "phi*psi")
        _check_identity(ring, psi, phi, "psi*phi")

    def __eq__(self, other):
        if not isinstance(other, MatrixFactorization):
            return NotImplemented
        return self.ring == other.ring and self.phi == other.phi and self.psi == other.psi

    def __hash__(self):
        return hash((self.ring.f, self.phi, self.psi))

    def __repr__(self):
        return f"MatrixFactorization(f={self.ring.f}, size={self.size})"


def _check_identity(ring: HypersurfaceSpec, a: PolyMatrix, b: PolyMatrix, side: str):
    prod = a * b
    n = prod.rows
    for i in range(n):
        for j in range(n):
            want = ring.f if i == j else ring.zero()
            residual = prod.entries[i][j] - want
            if not residual.is_zero():
                raise IdentityFails(i, j, residual, side)


# -- core operations -----------------------------------------------------------


def verify_mf(ring: HypersurfaceSpec, phi: PolyMatrix, psi: PolyMatrix) -> MatrixFactorization:
    """Validate the defining identity and wrap the pair."""
    return MatrixFactorization(ring, phi, psi)


def is_reduced(mf: MatrixFactorization) -> bool:
    """True when every entry of both matrices vanishes at the origin."""
    for mat in (mf.phi, mf.psi):
        for row in mat.entries:
            for e in row:
                if e.constant_term():
                    return False
    return True


def shift(mf: MatrixFactorization) -> MatrixFactorization:
    """Swap the pair; realizes the syzygy shift, an involution."""
    return MatrixFactorization(mf.ring, mf.psi, mf.phi)


def direct_sum(a: MatrixFactorization, b: MatrixFactorization) -> MatrixFactorization:
    if a.ring != b.ring:
        raise RingMismatch("direct sum over different hypersurfaces")
    z = a.ring.zero()
    return MatrixFactorization(
        a.ring, block_diag(a.phi, b.phi, z), block_diag(a.psi, b.psi, z)
    )


def trivial_mf(ring: HypersurfaceSpec, r: int = 1) -> MatrixFactorization:
    """(f*I_r, I_r): the factorization of a free module of rank r."""
    phi = scalar_matrix(r, ring.f, ring.zero())
    psi = identity(r, ring.one(), ring.zero())
    return MatrixFactorization(ring, phi, psi)


def multirank(mf: MatrixFactorization) -> Multirank:
    """Factor exponents of det(phi) along the declared irreducible factors.

    det(phi) = unit * prod(f_i ** r_i); the cofactor left after dividing out
    every factor must be a unit of the local ring, otherwise the factor list
    was not complete and CofactorNotUnit is raised.
    """
    if mf.ring.irreducible_factors is None:
        raise MFError("multirank needs irreducible_factors on the ring spec")
    det = poly_det(mf.phi)
    exps = []
    cof = det
    for g in mf.ring.irreducible_factors:
        e, cof = divide_out(cof, g)
        exps.append(e)
    if not cof.is_unit_local():
        raise CofactorNotUnit(f"non-unit cofactor {cof} after dividing out all factors")
    return Multirank(tuple(exps), cof)


# -- completion ----------------------------------------------------------------


def _solve_partner(
    ring: HypersurfaceSpec, phi: PolyMatrix, target: MultiPoly, degree_bound: int
) -> PolyMatrix | None:
    """Solve phi * psi = target * I for psi with entry degrees <= bound."""
    n = phi.rows
    nvars = len(ring.variables)
    monos = monomials_below(nvars, degree_bound + 1)
    nm = len(monos)

    def unknown(j, k, m):  # psi[j][k], coefficient of monomial m
        return (j * n + k) * nm + m

    row_map: dict[tuple[int, int, tuple], dict[int, Fraction]] = {}
    for i in range(n):
        for k in range(n):
            for j in range(n):
                p = phi.entries[i][j]
                for pe, pc in p.terms.items():
                    for mi, me in enumerate(monos):
                        tot = tuple(a + b for a, b in zip(pe, me))
                        row = row_map.setdefault((i, k, tot), {})
                        col = unknown(j, k, mi)
                        row[col] = row.get(col, Fraction(0)) + pc
    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    for (i, k, tot), row in row_map.items():
        rows.append({c: v for c, v in row.items() if v})
        rhs.append(target.terms.get(tot, Fraction(0)) if i == k else Fraction(0))

    sol = linalg.solve_system(rows, rhs, n * n * nm)
    if sol is None:
        return None
    entries = []
    for j in range(n):
        row = []
        for k in range(n):
            terms = {}
            for mi, me in enumerate(monos):
                c = sol.get(unknown(j, k, mi))
                if c:
                    terms[me] = c
            row.append(MultiPoly(ring.variables, terms))
        entries.append(row)
    return PolyMatrix(entries)


def complete_to_mf(
    ring: HypersurfaceSpec, phi: PolyMatrix, degree_bound: int
) -> MatrixFactorization:
    """Find psi with phi*psi = f*I, entries of total degree <= degree_bound.

    The unknown coefficients form an exact linear system over Q.  When
    det(phi) carries a non-constant unit cofactor u, no polynomial partner
    for f itself can exist (u is only invertible as a power series); the
    completion then targets (u*f)*I, which presents the same module over the
    same complete local ring, and the returned factorization lives over the
    spec with the equation rescaled by u.

    Raises DetNotDividing when det(phi) is not a unit times a product of
    powers of the declared factors (of f itself when no factor list is
    present), and NoSolutionAtBound when the bound is too small.
    """
    if not phi.is_square():
        raise MFError("phi must be square")
    det = poly_det(phi)
    if det.is_zero():
        raise DetNotDividing("det(phi) = 0")
    factors = ring.irreducible_factors or (ring.f,)
    cof = det
    for g in factors:
        _, cof = divide_out(cof, g)
    if not cof.is_unit_local():
        raise DetNotDividing(f"det(phi) has cofactor {cof}")

    psi = _solve_partner(ring, phi, ring.f, degree_bound)
    if psi is not None:
        return MatrixFactorization(ring, phi, psi)  # re-verifies both identities
    if not cof.is_constant():
        scaled = HypersurfaceSpec(
            ring.variables, cof * ring.f, ring.irreducible_factors
        )
        psi = _solve_partner(scaled, phi, scaled.f, degree_bound)
        if psi is not None:
            return MatrixFactorization(scaled, phi, psi)
    raise NoSolutionAtBound(degree_bound)


# -- equivalence search ---------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceCertificate:
    """Invertible S, T with S*phi_a = phi_b*T and T*psi_a = psi_b*S."""

    s: PolyMatrix
    t: PolyMatrix


def _const_matrix(m: PolyMatrix) -> list[list[Fraction]]:
    return [[e.constant_term() for e in row] for row in m.entries]


def _num_det(mat: list[list[Fraction]]) -> Fraction:
    n = len(mat)
    mat = [row[:] for row in mat]
    det = Fraction(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if mat[r][c]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        inv = Fraction(1) / mat[c][c]
        for r in range(c + 1, n):
            if mat[r][c]:
                f = mat[r][c] * inv
                for cc in range(c, n):
                    mat[r][cc] -= f * mat[c][cc]
    return det


def mf_equivalence_search(
    a: MatrixFactorization,
    b: MatrixFactorization,
    degree_bound: int,
    tries: int = 25,
    seed: int = 7,
) -> EquivalenceCertificate | None:
    """Search for an isomorphism certificate with entry degrees <= degree_bound.

    The intertwining conditions are linear in (S, T); a random point of the
    solution space is invertible whenever any solution is, so a handful of
    draws either produces a certificate or we report None (unknown -- not a
    disproof).
    """
    if a.ring != b.ring:
        raise RingMismatch("equivalence search over different hypersurfaces")
    if a.size != b.size:
        raise MFError("equivalence search needs equal sizes")
    n = a.size
    ring = a.ring
    nvars = len(ring.variables)
    monos = monomials_below(nvars, degree_bound + 1)
    nm = len(monos)
    total = 2 * n * n * nm

    def s_unknown(i, j, m):
        return (i * n + j) * nm + m

    def t_unknown(i, j, m):
        return n * n * nm + (i * n + j) * nm + m

    row_map: dict[tuple, dict[int, Fraction]] = {}

    def add(key, col, c):
        row = row_map.setdefault(key, {})
        row[col] = row.get(col, Fraction(0)) + c

    # S*phi_a - phi_b*T = 0   and   T*psi_a - psi_b*S = 0
    for i in range(n):
        for k in range(n):
            for j in range(n):
                p = a.phi.entries[j][k]
                for pe, pc in p.terms.items():
                    for mi, me in enumerate(monos):
                        tot = tuple(x + y for x, y in zip(pe, me))
                        add(("A", i, k, tot), s_unknown(i, j, mi), pc)
                q = b.phi.entries[i][j]
                for qe, qc in q.terms.items():
                    for mi, me in enumerate(monos):
                        tot = tuple(x + y for x, y in zip(qe, me))
                        add(("A", i, k, tot), t_unknown(j, k, mi), -qc)
                p2 = a.psi.entries[j][k]
                for pe, pc in p2.terms.items():
                    for mi, me in enumerate(monos):
                        tot = tuple(x + y for x, y in zip(pe, me))
                        add(("B", i, k, tot), t_unknown(i, j, mi), pc)
                q2 = b.psi.entries[i][j]
                for qe, qc in q2.terms.items():
                    for mi, me in enumerate(monos):
                        tot = tuple(x + y for x, y in zip(qe, me))
                        add(("B", i, k, tot), s_unknown(j, k, mi), -qc)

    rows = [{c: v for c, v in r.items() if v} for r in row_map.values()]
    basis = linalg.nullspace_basis(rows, total)
    if not basis:
        return None

    rng = random.Random(seed)

    def assemble(vec: dict[int, Fraction]):
        s_entries = []
        t_entries = []
        for i in range(n):
            srow = []
            trow = []
            for j in range(n):
                sterms = {}
                tterms = {}
                for mi, me in enumerate(monos):
                    c = vec.get(s_unknown(i, j, mi))
                    if c:
                        sterms[me] = c
                    c = vec.get(t_unknown(i, j, mi))
                    if c:
                        tterms[me] = c
                srow.append(MultiPoly(ring.variables, sterms))
                trow.append(MultiPoly(ring.variables, tterms))
            s_entries.append(srow)
            t_entries.append(trow)
        return PolyMatrix(s_entries), PolyMatrix(t_entries)

    candidates = list(basis)
    for _ in range(tries):
        vec: dict[int, Fraction] = {}
        if candidates:
            pick = candidates.pop(0)
            vec = dict(pick)
        else:
            for bvec in basis:
                w = rng.randint(-3, 3)
                if not w:
                    continue
                for c, v in bvec.items():
                    vec[c] = vec.get(c, Fraction(0)) + w * v
        if not vec:
            continue
        s, t = assemble(vec)
        if _num_det(_const_matrix(s)) and _num_det(_const_matrix(t)):
            # sanity: re-check the intertwining identities exactly
            if (s * a.phi == b.phi * t) and (t * a.psi == b.psi * s):
                return EquivalenceCertificate(s, t)
    return None
