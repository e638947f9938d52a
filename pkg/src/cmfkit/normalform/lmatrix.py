"""Laurent matrices with a tracked precision bound, plus the transformation
worksheet used by the reduction engines.

All reductions rewrite theta in place while accumulating the transformation
matrices, maintaining the invariant

    theta_original * f  =  F_i * theta_current      (modulo t**prec)

for every tracked side i.  Row operations therefore multiply F on the right
by the inverse elementary matrix; unit inverses are truncated at prec, which
is exactly the precision the final certificate is checked at.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..laurent import LaurentPoly


class NormalFormError(Exception):
    pass


class PrecisionExhausted(NormalFormError):
    pass


class LaurentMatrix:
    """Immutable grid of Laurent polynomials in one shared variable."""

    __slots__ = ("var", "rows", "cols", "entries", "prec")

    def __init__(self, var: str, entries, prec: int):
        grid = [list(r) for r in entries]
        self.var = var
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else 0
        for r in grid:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")
            for e in r:
                if not isinstance(e, LaurentPoly):
                    raise TypeError("entries must be LaurentPoly")
                if e.terms and max(e.terms) >= prec:
                    raise ValueError("entry exponent not below prec")
        self.entries = grid
        self.prec = prec

    @classmethod
    def from_exponent_maps(cls, var: str, grid, prec: int | None = None):
        ents = [[LaurentPoly(var, cell) for cell in row] for row in grid]
        if prec is None:
            hi = 0
            for row in ents:
                for e in row:
                    if e.terms:
                        hi = max(hi, e.max_exp())
            prec = hi + 1
        return cls(var, ents, prec)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (
            self.var == other.var
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def exponent_range(self) -> tuple[int, int]:
        lo, hi = 0, 0
        seen = False
        for row in self.entries:
            for e in row:
                if e.terms:
                    lo = min(lo, e.valuation()) if seen else e.valuation()
                    hi = max(hi, e.max_exp()) if seen else e.max_exp()
                    seen = True
        return (lo, hi) if seen else (0, 0)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"LaurentMatrix[{body}] (prec={self.prec})"


def lm_mul(a: list[list[LaurentPoly]], b: list[list[LaurentPoly]], var: str):
    ra, ca = len(a), len(a[0]) if a else 0
    rb, cb = len(b), len(b[0]) if b else 0
    if ca != rb:
        raise ValueError("shape mismatch")
    z = LaurentPoly.zero(var)
    out = []
    for i in range(ra):
        row = []
        for j in range(cb):
            acc = z
            for k in range(ca):
                if a[i][k].terms and b[k][j].terms:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def lm_identity(n: int, var: str):
    one = LaurentPoly.const(var, 1)
    z = LaurentPoly.zero(var)
    return [[one if i == j else z for j in range(n)] for i in range(n)]


def lm_truncate(grid, prec: int):
    return [[e.truncate(prec) for e in row] for row in grid]


def lm_det(grid, var: str) -> LaurentPoly:
    """Exact determinant by cofactor expansion (small sizes only)."""
    n = len(grid)
    if n == 0:
        return LaurentPoly.const(var, 1)
    if n == 1:
        return grid[0][0]
    if n == 2:
        return grid[0][0] * grid[1][1] - grid[0][1] * grid[1][0]
    acc = LaurentPoly.zero(var)
    for j in range(n):
        e = grid[0][j]
        if not e.terms:
            continue
        minor = [[grid[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = e * lm_det(minor, var)
        acc = acc + (-term if j % 2 else term)
    return acc


def lm_const_det(grid) -> Fraction:
    """Determinant of the constant-term part."""
    n = len(grid)
    mat = [[e.coeff(0) for e in row] for row in grid]
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
                fac = mat[r][c] * inv
                for cc in range(c, n):
                    mat[r][cc] -= fac * mat[c][cc]
    return det


def min_valuation(grid) -> int | None:
    v = None
    for row in grid:
        for e in row:
            if e.terms:
                w = e.valuation()
                v = w if v is None else min(v, w)
    return v


def rank_over_laurent(grid, var: str) -> int:
    """Rank over k((t)) by fraction-free elimination (no series division)."""
    work = [row[:] for row in grid]
    rows = len(work)
    cols = len(work[0]) if rows else 0
    rank = 0
    r0 = 0
    for c in range(cols):
        piv = None
        for r in range(r0, rows):
            if work[r][c].terms:
                piv = r
                break
        if piv is None:
            continue
        work[r0], work[piv] = work[piv], work[r0]
        pe = work[r0][c]
        for r in range(r0 + 1, rows):
            qe = work[r][c]
            if qe.terms:
                work[r] = [pe * work[r][k] - qe * work[r0][k] for k in range(cols)]
        rank += 1
        r0 += 1
        if r0 == rows:
            break
    return rank


class Worksheet:
    """Mutable reduction state: several theta sides sharing one column space.

    Side i carries its own row-transformation accumulator F_i; all sides
    share the column accumulator f.  Every public op preserves the invariant
    theta_orig_i * f = F_i * theta_i modulo t**prec.

    The accumulators are kept exact below prec + headroom: when the inputs
    contain negative exponents, transformation terms above prec still
    contribute below prec after multiplication, so they cannot be dropped at
    prec itself.
    """

    def __init__(
        self,
        thetas: list[list[list[LaurentPoly]]],
        var: str,
        prec: int,
        headroom: int = 0,
    ):
        self.var = var
        self.prec = prec
        self.tprec = prec + max(0, headroom)
        self.thetas = [[row[:] for row in th] for th in thetas]
        self.ncols = len(thetas[0][0]) if thetas and thetas[0] else 0
        for th in thetas:
            for row in th:
                if len(row) != self.ncols:
                    raise ValueError("column count mismatch across sides")
        self.F = [lm_identity(len(th), var) for th in self.thetas]
        self.f = lm_identity(self.ncols, var)

    # -- row operations on one side ------------------------------------------

    def row_swap(self, side: int, i: int, j: int):
        if i == j:
            return
        th = self.thetas[side]
        th[i], th[j] = th[j], th[i]
        F = self.F[side]
        for r in range(len(F)):
            F[r][i], F[r][j] = F[r][j], F[r][i]

    def row_addmul(self, side: int, i: int, j: int, mu: LaurentPoly):
        """row_i += mu * row_j with val(mu) >= 0; F picks up the inverse op."""
        if not mu.terms:
            return
        if mu.valuation() < 0:
            raise NormalFormError("row operation with negative valuation")
        th = self.thetas[side]
        th[i] = [
            (th[i][k] + mu * th[j][k]).truncate(self.tprec) for k in range(self.ncols)
        ]
        F = self.F[side]
        for r in range(len(F)):
            # F <- F * E^{-1}: col_j -= mu * col_i  ... E adds mu*row_j to row_i
            F[r][j] = (F[r][j] - mu * F[r][i]).truncate(self.tprec)

    def row_scale_unit(self, side: int, i: int, u: LaurentPoly):
        """row_i *= u for a unit u (val 0, nonzero constant term)."""
        if not u.terms or u.valuation() != 0:
            raise NormalFormError("row scale needs a unit of the power series ring")
        th = self.thetas[side]
        th[i] = [(u * e).truncate(self.tprec) for e in th[i]]
        uinv = u.inverse_mod(self.tprec)
        F = self.F[side]
        for r in range(len(F)):
            F[r][i] = (F[r][i] * uinv).truncate(self.tprec)

    # -- column operations (shared) --------------------------------------------

    def col_swap(self, i: int, j: int):
        if i == j:
            return
        for th in self.thetas:
            for row in th:
                row[i], row[j] = row[j], row[i]
        for row in self.f:
            row[i], row[j] = row[j], row[i]

    def col_addmul(self, i: int, j: int, mu: LaurentPoly):
        """col_i += mu * col_j (mu from the allowed coefficient field)."""
        if not mu.terms:
            return
        for th in self.thetas:
            for row in th:
                row[i] = (row[i] + mu * row[j]).truncate(self.tprec)
        for row in self.f:
            row[i] = (row[i] + mu * row[j]).truncate(self.tprec)

    def col_scale(self, i: int, u: LaurentPoly):
        """col_i *= u for u invertible over the Laurent field."""
        if not u.terms:
            raise NormalFormError("column scale by zero")
        for th in self.thetas:
            for row in th:
                row[i] = (row[i] * u).truncate(self.tprec)
        for row in self.f:
            row[i] = (row[i] * u).truncate(self.tprec)

    def entry(self, side: int, i: int, j: int) -> LaurentPoly:
        return self.thetas[side][i][j]

    def set_block(self, side: int, rows: list[int], cols: list[int], grid):
        th = self.thetas[side]
        for a, i in enumerate(rows):
            for b, j in enumerate(cols):
                th[i][j] = grid[a][b]

    def apply_block_certificate(
        self, side: int, rows, cols, f_block, F_block, new_block, claim_prec=None
    ):
        """Substitute a finished block: theta[rows x cols] <- new_block given
        old_block * f_block = F_block * new_block (mod claim_prec); rows/cols
        must be zero against the rest of the worksheet.

        Entries of the old block above claim_prec are dropped first: the
        certificate only speaks below claim_prec, and without the truncation
        the transform's negative powers would drag that invisible content
        into the certified window.
        """
        if claim_prec is None:
            claim_prec = self.prec
        th0 = self.thetas[side]
        for i in rows:
            for j in cols:
                th0[i][j] = th0[i][j].truncate(claim_prec)
        # f <- f * embed(f_block)
        for row in self.f:
            old = [row[c] for c in cols]
            for b, c in enumerate(cols):
                acc = LaurentPoly.zero(self.var)
                for a in range(len(cols)):
                    acc = acc + old[a] * f_block[a][b]
                row[c] = acc.truncate(self.tprec)
        F = self.F[side]
        for row in F:
            old = [row[r] for r in rows]
            for b, r in enumerate(rows):
                acc = LaurentPoly.zero(self.var)
                for a in range(len(rows)):
                    acc = acc + old[a] * F_block[a][b]
                row[r] = acc.truncate(self.tprec)
        self.set_block(side, rows, cols, new_block)
        # other sides: their entries in these columns must stay zero; the
        # column update theta * embed(f_block) preserves that because the
        # block columns only mix among themselves
        for sidx, th in enumerate(self.thetas):
            if sidx == side:
                continue
            for row in th:
                olds = [row[c] for c in cols]
                for b, c in enumerate(cols):
                    acc = LaurentPoly.zero(self.var)
                    for a in range(len(cols)):
                        acc = acc + olds[a] * f_block[a][b]
                    row[c] = acc.truncate(self.tprec)


class ColWorksheet:
    """Reduction state tracking only theta and the column transformation f.

    Row operations (invertible over the power series ring) need no
    bookkeeping: the row-side transformation F is reconstructed afterwards
    from theta_orig * f and the block diagonal.  Column operations are
    mirrored on f.  Cross-multiplied combinations keep all entries
    polynomial; unit inverses appear only in the final per-block
    normalizations.
    """

    def __init__(self, thetas, var: str, theta_trunc: int, f_trunc: int):
        self.var = var
        self.ttrunc = theta_trunc
        self.ftrunc = f_trunc
        self.thetas = [[row[:] for row in th] for th in thetas]
        self.ncols = len(thetas[0][0]) if thetas and thetas[0] else 0
        self.f = lm_identity(self.ncols, var)

    # row side ---------------------------------------------------------------

    def row_swap(self, side: int, i: int, j: int):
        th = self.thetas[side]
        if i != j:
            th[i], th[j] = th[j], th[i]

    def row_combine(self, side: int, r: int, src: int, a: LaurentPoly, b: LaurentPoly):
        """row_r <- a*row_r + b*row_src with a a unit of the series ring."""
        if not a.terms or a.valuation() != 0:
            raise NormalFormError("row combination needs a valuation-zero unit")
        if b.terms and b.valuation() < 0:
            raise NormalFormError("row combination with negative valuation")
        th = self.thetas[side]
        th[r] = [
            (a * th[r][k] + b * th[src][k]).truncate(self.ttrunc)
            for k in range(self.ncols)
        ]

    def row_scale(self, side: int, r: int, u: LaurentPoly):
        if not u.terms or u.valuation() != 0:
            raise NormalFormError("row scale needs a valuation-zero unit")
        th = self.thetas[side]
        th[r] = [(u * e).truncate(self.ttrunc) for e in th[r]]

    # column side --------------------------------------------------------------

    def col_swap(self, i: int, j: int):
        if i == j:
            return
        for th in self.thetas:
            for row in th:
                row[i], row[j] = row[j], row[i]
        for row in self.f:
            row[i], row[j] = row[j], row[i]

    def col_combine(self, c: int, src: int, alpha: LaurentPoly, beta: LaurentPoly):
        """col_c <- alpha*col_c + beta*col_src, alpha invertible over the field."""
        if not alpha.terms:
            raise NormalFormError("column combination needs invertible alpha")
        for th in self.thetas:
            for row in th:
                row[c] = (alpha * row[c] + beta * row[src]).truncate(self.ttrunc)
        for row in self.f:
            row[c] = (alpha * row[c] + beta * row[src]).truncate(self.ftrunc)

    def col_scale(self, c: int, g: LaurentPoly):
        if not g.terms:
            raise NormalFormError("column scale by zero")
        for th in self.thetas:
            for row in th:
                row[c] = (row[c] * g).truncate(self.ttrunc)
        for row in self.f:
            row[c] = (row[c] * g).truncate(self.ftrunc)
