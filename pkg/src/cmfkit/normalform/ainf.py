"""Reduction of a pair of Laurent matrices sharing one column space.

The transformation group is theta_i' = F_i^{-1} * theta_i * f with each F_i
invertible over the power series ring and a single f invertible over the
Laurent field.  Every valid pair decomposes into the column blocks
((1),()), ((),(1)), ((1),(1)), ((z^n),(1)), ((1),(z^n)).

Unlike the one-sided even/odd problem this one is solved fully
constructively: Smith reduction of the first side, Smith reduction of the
complementary columns of the second side, a weight-respecting Smith pass on
what remains, and a final normalization of each surviving column pair.
Decisions look only below prec; the worksheet keeps extra headroom so that
truncated series inverses cannot contaminate that window.
"""

from __future__ import annotations

from ..laurent import LaurentPoly
from .blocks import AInfBlock, AInfCertificate
from .lmatrix import (
    LaurentMatrix,
    NormalFormError,
    PrecisionExhausted,
    Worksheet,
    rank_over_laurent,
)


def ainf_validate(theta1: LaurentMatrix, theta2: LaurentMatrix) -> bool:
    if theta1.cols != theta2.cols:
        return False
    if theta1.rows == 0 or theta2.rows == 0 or theta1.cols == 0:
        return False
    if rank_over_laurent(theta1.entries, theta1.var) != theta1.rows:
        return False
    if rank_over_laurent(theta2.entries, theta2.var) != theta2.rows:
        return False
    stack = [row[:] for row in theta1.entries] + [row[:] for row in theta2.entries]
    return rank_over_laurent(stack, theta1.var) == theta1.cols


def default_prec(theta1: LaurentMatrix, theta2: LaurentMatrix) -> int:
    lo1, hi1 = theta1.exponent_range()
    lo2, hi2 = theta2.exponent_range()
    size = max(theta1.rows, theta2.rows, theta1.cols)
    return (max(hi1, hi2) - min(lo1, lo2)) + 4 * size + 4


def ainf_reduce(
    theta1: LaurentMatrix, theta2: LaurentMatrix, prec: int | None = None
) -> AInfCertificate:
    """Decompose the pair into canonical column blocks with a certificate."""
    if not ainf_validate(theta1, theta2):
        raise NormalFormError("input fails the rank conditions")
    explicit = prec is not None
    work = (
        prec
        if explicit
        else max(default_prec(theta1, theta2), theta1.prec, theta2.prec)
    )
    attempts = 1 if explicit else 3
    last: Exception | None = None
    for _ in range(attempts):
        try:
            cert = _reduce_once(theta1, theta2, work)
        except PrecisionExhausted as exc:
            last = exc
            work *= 2
            continue
        if cert.verify(theta1, theta2):
            return cert
        last = PrecisionExhausted("certificate failed verification; raising precision")
        work *= 2
    raise last if last is not None else PrecisionExhausted("reduction failed")


def _reduce_once(theta1: LaurentMatrix, theta2: LaurentMatrix, prec: int) -> AInfCertificate:
    var = theta1.var
    lo1, hi1 = theta1.exponent_range()
    lo2, hi2 = theta2.exponent_range()
    lo = min(lo1, lo2)
    hi = max(hi1, hi2)
    p = theta1.rows
    q = theta2.rows
    n = theta1.cols
    # internal working precision: negative scalings eat into the exactness
    # window; the moderate budget covers typical runs and the verify-and-retry
    # loop upstream covers the rest
    budget = 2 * (hi - lo) + 12
    wprec = prec + budget
    ws = Worksheet(
        [theta1.entries, theta2.entries], var, wprec, headroom=max(0, -lo) + 4
    )
    th1, th2 = ws.thetas
    inv_prec = ws.tprec + max(0, -lo) + 4

    def sig(e: LaurentPoly) -> LaurentPoly:
        # structural decisions only trust the window below the public prec
        return e.truncate(prec)

    def min_entry(side, rows, cols, weight=None):
        th = ws.thetas[side]
        best = None
        for i in rows:
            for j in cols:
                e = sig(th[i][j])
                if e.terms:
                    v = e.valuation() - (weight[j] if weight else 0)
                    if best is None or v < best[0] or (v == best[0] and (i, j) < best[1:]):
                        best = (v, i, j)
        return best

    def smith(side, rows, cols):
        th = ws.thetas[side]
        active_r = rows[:]
        active_c = cols[:]
        pivots = []
        while active_r and active_c:
            found = min_entry(side, active_r, active_c)
            if found is None:
                break
            v, i, j = found
            ws.row_scale_unit(side, i, th[i][j].shift(-v).inverse_mod(inv_prec))
            for r in active_r:
                if r != i and th[r][j].terms:
                    ws.row_addmul(side, r, i, -th[r][j].shift(-v))
            for c in active_c:
                if c != j and th[i][c].terms:
                    # column coefficients live in the full Laurent field
                    ws.col_addmul(c, j, -(th[i][c] * LaurentPoly.t(var, -v)))
            pivots.append((i, j, v))
            active_r.remove(i)
            active_c.remove(j)
        return pivots

    # stage 1: diagonalize side 1 completely
    piv1 = smith(0, list(range(p)), list(range(n)))
    if len(piv1) != p:
        raise PrecisionExhausted("side one lost rank at this precision")
    piv1.sort()
    for r in range(p):
        i, j, v = piv1[r]
        if j != r:
            ws.col_swap(r, j)
            for t in range(r + 1, p):
                ii, jj, vv = piv1[t]
                if jj == r:
                    piv1[t] = (ii, j, vv)
            piv1[r] = (i, r, v)
    weights = {}
    for r in range(p):
        e = sig(th1[r][r])
        if not e.terms:
            raise PrecisionExhausted("side-one pivot vanished during arrangement")
        weights[r] = e.valuation()

    # stage 2: Smith on the complementary columns of side 2
    piv2 = smith(1, list(range(q)), list(range(p, n)))
    if len(piv2) != n - p:
        raise PrecisionExhausted("stacked rank not visible at this precision")
    cpivot_rows = {i for (i, j, v) in piv2}
    cpivot = {j: (i, v) for (i, j, v) in piv2}

    # stage 2.5: kill the first p columns of side 2 along the stage-2 pivot rows
    for (i, j, v) in piv2:
        for k in range(p):
            w = th2[i][k]
            if w.terms:
                ws.col_addmul(k, j, -w.shift(-v))

    # stage 3: weight-respecting Smith on the remaining rows of side 2
    rest_rows = [r for r in range(q) if r not in cpivot_rows]
    active_r = rest_rows[:]
    active_c = list(range(p))
    pair_of_col: dict[int, tuple[int, int]] = {}  # col -> (side2 row, exponent)
    while active_r:
        best = min_entry(1, active_r, active_c, weight=weights)
        if best is None:
            raise PrecisionExhausted("side-two rows lost rank at this precision")
        _, i, j = best
        v = sig(th2[i][j]).valuation()
        ws.row_scale_unit(1, i, th2[i][j].shift(-v).inverse_mod(inv_prec))
        for r in active_r:
            if r != i and th2[r][j].terms:
                ws.row_addmul(1, r, i, -th2[r][j].shift(-v))
        for c in active_c:
            if c == j or not th2[i][c].terms:
                continue
            mu = -th2[i][c].shift(-v)
            ws.col_addmul(c, j, mu)
            # repair side 1: the op polluted theta1[j-th pivot row][c]
            pol = th1[j][c]
            if pol.terms:
                nu = pol.shift(-weights[c])
                if nu.valuation() < 0:
                    raise PrecisionExhausted("weighted pivot order violated")
                ws.row_addmul(0, j, c, -nu)
        pair_of_col[j] = (i, v)
        active_r.remove(i)
        active_c.remove(j)

    # stage 4: per-column normalization and block identification
    assignments = []  # (col, block, side1 row or None, side2 row or None)
    for k in range(p):
        a = weights[k]
        if k in pair_of_col:
            i2, c = pair_of_col[k]
            s = min(a, c)
            ws.col_scale(k, LaurentPoly.t(var, -s))
            a2, c2 = a - s, c - s
            if a2 == 0 and c2 == 0:
                blk = AInfBlock("reg")
            elif c2 == 0:
                blk = AInfBlock("z1", a2)
            else:
                blk = AInfBlock("z2", c2)
            assignments.append((k, blk, k, i2))
        else:
            ws.col_scale(k, LaurentPoly.t(var, -a))
            assignments.append((k, AInfBlock("comp1"), k, None))
    for j in range(p, n):
        i2, v = cpivot[j]
        ws.col_scale(j, LaurentPoly.t(var, -v))
        assignments.append((j, AInfBlock("comp2"), None, i2))

    # stage 5: arrange columns and rows into canonical block order
    assignments.sort(key=lambda t: (t[1], t[0]))
    for pos, (col, blk, r1, r2) in enumerate(assignments):
        if col != pos:
            ws.col_swap(pos, col)
            for t in range(pos + 1, len(assignments)):
                c2, b2, a2, b2r = assignments[t]
                if c2 == pos:
                    assignments[t] = (col, b2, a2, b2r)
        assignments[pos] = (pos, blk, r1, r2)
    want1 = [r1 for (_, blk, r1, _) in assignments if r1 is not None]
    cur = list(range(p))
    for pos, target in enumerate(want1):
        idx = cur.index(target)
        if idx != pos:
            ws.row_swap(0, pos, idx)
            cur[pos], cur[idx] = cur[idx], cur[pos]
    want2 = [r2 for (_, blk, _, r2) in assignments if r2 is not None]
    cur = list(range(q))
    for pos, target in enumerate(want2):
        idx = cur.index(target)
        if idx != pos:
            ws.row_swap(1, pos, idx)
            cur[pos], cur[idx] = cur[idx], cur[pos]

    blocks = [blk for (_, blk, _, _) in assignments]
    return AInfCertificate(
        blocks=blocks,
        F1=LaurentMatrix(var, ws.F[0], ws.tprec),
        F2=LaurentMatrix(var, ws.F[1], ws.tprec),
        f=LaurentMatrix(var, ws.f, ws.tprec),
        prec=prec,
    )
