"""Reduction of Laurent matrices to canonical blocks for the pinch-point case.

The transformation group is theta' = F^{-1} * theta * f with F invertible
over the power series ring (row side) and f invertible over the field of
even Laurent series (column side).  Valid matrices decompose into the
canonical blocks (1), (t), (1 t) and [[1, t], [t^d, 0]].

The engine is greedy: it peels minimal-valuation pivots, splitting canonical
blocks as they become isolated.  Configurations the greedy rules cannot
untangle are handled by a certified search: candidate block multisets are
enumerated and a transformation is solved for as an exact linear system.
Either way the result is verified against the input before being returned,
so a wrong guess can never escape.

Precision discipline: the worksheet keeps entries exact below prec plus a
headroom margin, because truncated series inverses leave error terms that
negative-power column scalings push downward.  All structural decisions
(pivot choice, zero tests) look only below prec, where entries are reliable.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement

from .. import linalg
from ..laurent import LaurentPoly, even_odd_split
from .blocks import (
    BLOCK_ONE,
    BLOCK_ONET,
    BLOCK_T,
    DInfBlock,
    DInfCertificate,
    dinf_block_diagonal,
    hook,
)
from .lmatrix import (
    ColWorksheet,
    LaurentMatrix,
    NormalFormError,
    PrecisionExhausted,
    lm_const_det,
    lm_det,
    lm_mul,
    lm_truncate,
    min_valuation,
    rank_over_laurent,
)

# -- validation --------------------------------------------------------------


def dinf_validate(theta: LaurentMatrix) -> bool:
    """Full row rank over k((t)) and full column rank of the even/odd stack
    over k((t^2))."""
    if theta.rows == 0 or theta.cols == 0:
        return False
    if rank_over_laurent(theta.entries, theta.var) != theta.rows:
        return False
    stack = []
    for row in theta.entries:
        stack.append([even_odd_split(e)[0] for e in row])
    for row in theta.entries:
        stack.append([even_odd_split(e)[1] for e in row])
    # all stack entries are supported on even exponents; the rank over the
    # even subfield equals the rank over the full Laurent field
    return rank_over_laurent(stack, theta.var) == theta.cols


def default_prec(theta: LaurentMatrix) -> int:
    lo, hi = theta.exponent_range()
    return (hi - lo) + 4 * max(theta.rows, theta.cols) + 4


# -- parity helpers ------------------------------------------------------------


def _parity_part(p: LaurentPoly, parity: int) -> LaurentPoly:
    return LaurentPoly(p.var, {e: c for e, c in p.terms.items() if e % 2 == parity})


# -- certified search -----------------------------------------------------------


def _solve_transport(
    m_grid, blocks: list[DInfBlock], var: str, prec: int, widen: int = 0
):
    """Find (f, F) with M*f = F*B (mod t**prec), f even and invertible over
    the Laurent field, F with nonnegative valuations and unit constant part.

    Returns (f_grid, F_grid) or None.  Everything is exact; candidate
    solutions are drawn from the nullspace of the matching equations and
    rejected unless both invertibility certificates hold.
    """
    k = len(m_grid)
    l = len(m_grid[0]) if k else 0
    b_grid = dinf_block_diagonal(blocks, var)
    if len(b_grid) != k or (k and len(b_grid[0]) != l):
        return None
    lo_m = min_valuation(m_grid)
    lo_b = min_valuation(b_grid)
    hi_m = max((e.max_exp() for row in m_grid for e in row if e.terms), default=0)
    hi_b = max((e.max_exp() for row in b_grid for e in row if e.terms), default=0)
    if lo_m is None or lo_b is None:
        return None
    spread = max(hi_m, hi_b) - min(lo_m, lo_b)
    w = spread + 4 + widen
    f_exps = [e for e in range(-w, w + 1) if e % 2 == 0]
    F_exps = list(range(0, w + 1))
    nf = len(f_exps)
    nF = len(F_exps)
    n_unknown = l * l * nf + k * k * nF

    def f_idx(i, j, a):
        return (i * l + j) * nf + a

    def F_idx(i, j, a):
        return l * l * nf + (i * k + j) * nF + a

    lo_eq = min(lo_m - w, 0)
    rows_map: dict[tuple[int, int, int], dict[int, Fraction]] = {}

    def add(i, j, e, col, c):
        if e >= prec or e < lo_eq:
            return
        row = rows_map.setdefault((i, j, e), {})
        row[col] = row.get(col, Fraction(0)) + c

    # (M f)_{ij} - (F B)_{ij} = 0
    for i in range(k):
        for j in range(l):
            for t in range(l):
                p = m_grid[i][t]
                for pe, pc in p.terms.items():
                    for a, fe in enumerate(f_exps):
                        add(i, j, pe + fe, f_idx(t, j, a), pc)
            for t in range(k):
                q = b_grid[t][j]
                for qe, qc in q.terms.items():
                    for a, Fe in enumerate(F_exps):
                        add(i, j, qe + Fe, F_idx(i, t, a), -qc)

    rows = [{c: v for c, v in r.items() if v} for r in rows_map.values()]
    basis = linalg.nullspace_basis(rows, n_unknown)
    if not basis:
        return None

    def assemble(vec):
        fg = [
            [
                LaurentPoly(var, {f_exps[a]: vec.get(f_idx(i, j, a), 0) for a in range(nf)})
                for j in range(l)
            ]
            for i in range(l)
        ]
        Fg = [
            [
                LaurentPoly(var, {F_exps[a]: vec.get(F_idx(i, j, a), 0) for a in range(nF)})
                for j in range(k)
            ]
            for i in range(k)
        ]
        return fg, Fg

    rng = random.Random(1729)
    trials = list(basis)
    for attempt in range(len(basis) + 30):
        if trials:
            vec = dict(trials.pop(0))
        else:
            vec = {}
            for bvec in basis:
                wgt = rng.randint(-3, 3)
                if not wgt:
                    continue
                for c, v in bvec.items():
                    vec[c] = vec.get(c, Fraction(0)) + wgt * v
        if not vec:
            continue
        fg, Fg = assemble(vec)
        if not lm_const_det(Fg):
            continue
        if not lm_det(fg, var).terms:
            continue
        return fg, Fg
    return None


def _candidate_multisets(k: int, l: int, max_depth: int):
    """Block multisets with total shape (k rows, l cols), cheap ones first."""
    o = l - k  # forced count of (1 t) blocks
    if o < 0:
        return
    top = (k - o) // 2 + 1 if k - o >= 0 else 0
    for h in range(0, top):
        s = k - o - 2 * h
        if s < 0:
            continue
        for hooks in combinations_with_replacement(range(1, max_depth + 1), h):
            for n_one in range(s + 1):
                blocks = (
                    [BLOCK_ONE] * n_one
                    + [BLOCK_T] * (s - n_one)
                    + [BLOCK_ONET] * o
                    + [hook(d) for d in hooks]
                )
                yield blocks


def _certified_search(m_grid, var: str, prec: int, ordered_candidates=None):
    """Enumerate candidate multisets for the region and certify one."""
    k = len(m_grid)
    l = len(m_grid[0]) if k else 0
    if k == 0:
        return [], [], []
    lo = min_valuation(m_grid)
    hi = max((e.max_exp() for row in m_grid for e in row if e.terms), default=0)
    if lo is None:
        raise PrecisionExhausted("active region vanished")
    max_depth = (hi - lo) + 2 * max(k, l) + 2
    candidates = list(
        ordered_candidates
        if ordered_candidates is not None
        else _candidate_multisets(k, l, max_depth)
    )
    for widen in (0, 8, 18):
        for blocks in candidates:
            sol = _solve_transport(m_grid, blocks, var, prec, widen=widen)
            if sol is not None:
                fg, Fg = sol
                return blocks, fg, Fg
    raise PrecisionExhausted("no certified decomposition of the residual block")


def _profile_counts(theta: LaurentMatrix):
    """Exact orbit invariants: the per-parity slice dimensions.

    N_a = dim of the image of {u in col-span over k((t^2)) : val(u) >= a} in
    the coefficient slice at exponent a.  Every canonical block contributes
    the same amount at every even a and at every odd a, so two slices
    determine the per-parity totals.
    """
    from .. import linalg as _lin

    lo, hi = theta.exponent_range()
    m, n = theta.rows, theta.cols
    P = (hi - lo) + m + n + 4
    out = []
    for a in (0, 1):
        cols = []
        half = P // 2
        for j in range(n):
            col = [theta.entries[i][j] for i in range(m)]
            for p in range(-2 * half, 2 * half + 1, 2):
                cols.append([e.shift(p) for e in col])
        # rank increment between exponent rows < a and <= a
        ech = _lin.SparseEchelon()

        def add_rows(upto, start):
            for eexp in range(start, upto + 1):
                for i in range(m):
                    row = {}
                    for cidx, col in enumerate(cols):
                        c = col[i].coeff(eexp)
                        if c:
                            row[cidx] = c
                    if row:
                        ech.add_row(row)

        emin = lo - P - 1
        add_rows(a - 1, emin)
        r1 = ech.rank
        add_rows(a, a)
        out.append(ech.rank - r1)
    return out[0], out[1]


def _ordered_candidates(theta: LaurentMatrix, prec: int):
    """All block multisets for theta's shape, profile-consistent ones first."""
    m, n = theta.rows, theta.cols
    lo, hi = theta.exponent_range()
    max_depth = (hi - lo) + 2 * max(m, n) + 2
    omega = n - m
    preferred = []
    rest = []
    try:
        E, O = _profile_counts(theta)
    except Exception:
        E = O = None
    use_profile = E is not None and E + O == n and omega >= 0
    for blocks in _candidate_multisets(m, n, max_depth):
        if use_profile:
            h = sum(1 for b in blocks if b.kind == "hook")
            o_cnt = sum(1 for b in blocks if b.kind == "one")
            t_cnt = sum(1 for b in blocks if b.kind == "t")
            if o_cnt + omega + h == E and t_cnt + omega + h == O:
                preferred.append(blocks)
            else:
                rest.append(blocks)
        else:
            preferred.append(blocks)
    preferred.sort(key=lambda bs: (sum(1 for b in bs if b.kind == "hook"),
                                   sum(b.d for b in bs)))
    rest.sort(key=lambda bs: (sum(1 for b in bs if b.kind == "hook"),
                              sum(b.d for b in bs)))
    return preferred + rest


def _search_reduce(theta: LaurentMatrix, prec: int) -> DInfCertificate:
    """Certified search on the original exact matrix.

    Unlike a mid-reduction substitution, the input here carries no truncated
    series tails, so the solved transformation is the entire certificate.
    """
    var = theta.var
    blocks, fg, Fg = _certified_search(
        theta.entries, var, prec, ordered_candidates=_ordered_candidates(theta, prec)
    )
    hi_f = max((e.max_exp() for row in fg for e in row if e.terms), default=0)
    hi_F = max((e.max_exp() for row in Fg for e in row if e.terms), default=0)
    mx = max(hi_f, hi_F, prec) + 1
    return DInfCertificate(
        blocks=list(blocks),
        F=LaurentMatrix(var, Fg, mx),
        f=LaurentMatrix(var, fg, mx),
        prec=prec,
    )


# -- the greedy engine -----------------------------------------------------------


def _derive_F(theta: LaurentMatrix, f_grid, blocks: list[DInfBlock], prec: int):
    """Recover the row transformation from theta*f and the block layout.

    Block columns determine the corresponding F columns explicitly; the
    certificate checks afterwards certify validity, so no extra soundness
    burden rests here.
    """
    var = theta.var
    prod = lm_mul(theta.entries, f_grid, var)
    m = theta.rows
    z = LaurentPoly.zero(var)
    fcols: list[list[LaurentPoly]] = []
    c = 0
    for b in blocks:
        if b.kind == "one":
            fcols.append([prod[i][c] for i in range(m)])
            c += 1
        elif b.kind == "t":
            fcols.append([prod[i][c].shift(-1) for i in range(m)])
            c += 1
        elif b.kind == "onet":
            fcols.append([prod[i][c] for i in range(m)])
            c += 2
        else:  # hook(d): columns are (1, t) over (t^d, 0)
            colA = [prod[i][c + 1].shift(-1) for i in range(m)]
            colB = [
                (prod[i][c] - colA[i]).shift(-b.d) for i in range(m)
            ]
            fcols.append(colA)
            fcols.append(colB)
            c += 2
    F = [[fcols[j][i].truncate(prec) for j in range(len(fcols))] for i in range(m)]
    return F


def _parity_unit(p: LaurentPoly, d: int) -> LaurentPoly:
    """The d-parity part of p shifted to valuation zero (an even series)."""
    part = _parity_part(p, d % 2)
    return part.shift(-d)


def _reduce_once(theta: LaurentMatrix, prec: int) -> DInfCertificate:
    var = theta.var
    lo, hi = theta.exponent_range()
    m = theta.rows
    n = theta.cols
    # negative scalings at split time eat into the exactness window; the
    # moderate budget covers typical runs, the verify-and-retry loop the rest
    wprec = prec + 2 * (hi - lo) + 10
    ftrunc = prec + max(0, -lo) + (hi - lo) + 10
    ws = ColWorksheet([theta.entries], var, wprec, ftrunc)
    th = ws.thetas[0]
    blocks: list[DInfBlock] = []
    fr = fc = 0
    guard = 0
    inv_prec = wprec + max(0, -lo) + 4

    def sig(e: LaurentPoly) -> LaurentPoly:
        # structural decisions only trust the window below the public prec
        return e.truncate(prec)

    while fr < m:
        guard += 1
        if guard > 30 + 12 * m * n:
            return _search_reduce(theta, prec)
        best = None
        for i in range(fr, m):
            for j in range(fc, n):
                e = sig(th[i][j])
                if e.terms:
                    v = e.valuation()
                    if best is None or v < best[0] or (v == best[0] and (i, j) < best[1:]):
                        best = (v, i, j)
        if best is None:
            raise PrecisionExhausted("zero active rows; precision too small")
        d, pi, pj = best
        ws.row_swap(0, fr, pi)
        ws.col_swap(fc, pj)
        # clear the pivot column below by cross-multiplied combinations
        for r in range(fr + 1, m):
            q = th[r][fc]
            if q.terms:
                pv = th[fr][fc]
                ws.row_combine(0, r, fr, pv.shift(-d), -q.shift(-d))
        inner = 0
        while True:
            inner += 1
            if inner > 10 + 6 * n:
                return _search_reduce(theta, prec)
            pivot = th[fr][fc]
            piv_ev = _parity_unit(pivot, d)  # even unit
            # clear even-relative parts of the pivot row
            for c in range(fc + 1, n):
                q = th[fr][c]
                if q.terms:
                    q_ev = _parity_unit(q, d)
                    if q_ev.terms:
                        ws.col_combine(c, fc, piv_ev, -q_ev)
            leftovers = []
            for c in range(fc + 1, n):
                e = sig(th[fr][c])
                if e.terms:
                    leftovers.append((e.valuation(), c))
            if not leftovers:
                # lone pivot: normalize to (1) or (t)
                u = th[fr][fc].shift(-d)
                ws.row_scale(0, fr, u.inverse_mod(inv_prec))
                ws.col_scale(fc, LaurentPoly.t(var, -(d - d % 2)))
                blocks.append(BLOCK_ONE if d % 2 == 0 else BLOCK_T)
                fr += 1
                fc += 1
                break
            e, cstar = min(leftovers)
            ws.col_swap(fc + 1, cstar)
            second = th[fr][fc + 1]
            # clear the other leftovers against column fc+1 (all odd-relative)
            sec_unit = second.shift(-e)  # even series, unit
            for c in range(fc + 2, n):
                q = th[fr][c]
                if q.terms:
                    ws.col_combine(c, fc + 1, sec_unit, -q.shift(-e))
            below = []
            for r in range(fr + 1, m):
                q2 = sig(th[r][fc + 1])
                if q2.terms:
                    below.append((q2.valuation(), r))
            if not below:
                # split (1 t): kill the pivot's odd-relative part, normalize
                second = th[fr][fc + 1]
                pivot = th[fr][fc]
                p_od = _parity_part(pivot, (d + 1) % 2)
                if p_od.terms:
                    ws.col_combine(fc, fc + 1, second.shift(-e), -p_od.shift(-e))
                pivot = th[fr][fc]
                ws.col_scale(
                    fc,
                    (pivot.shift(-d).inverse_mod(inv_prec)
                     * LaurentPoly.t(var, d % 2 - d + 0)).truncate(ws.ftrunc),
                )
                second = th[fr][fc + 1]
                ws.col_scale(
                    fc + 1,
                    (second.shift(-e).inverse_mod(inv_prec)
                     * LaurentPoly.t(var, e % 2 - e)).truncate(ws.ftrunc),
                )
                if d % 2 == 1:
                    ws.col_swap(fc, fc + 1)
                blocks.append(BLOCK_ONET)
                fr += 1
                fc += 2
                break
            e2, r2 = min(below)
            if e2 < e:
                # the column's true partner sits deeper; kill the pivot-row entry
                q2 = th[r2][fc + 1]
                ws.row_combine(0, fr, r2, q2.shift(-e2), -second.shift(-e2))
                continue
            # e2 >= e: candidate hook partner
            q2 = th[r2][fc + 1]
            for r in range(fr + 1, m):
                if r == r2:
                    continue
                q = th[r][fc + 1]
                if q.terms:
                    ws.row_combine(0, r, r2, q2.shift(-e2), -q.shift(-e2))
            tail = [c for c in range(fc + 2, n) if sig(th[r2][c]).terms]
            if tail:
                return _search_reduce(theta, prec)
            ws.row_swap(0, fr + 1, r2)
            rows = [fr, fr + 1]
            cols = [fc, fc + 1]
            sub = [[sig(th[i][j]) for j in cols] for i in rows]
            found2, fg, Fg = _certified_search(sub, var, prec)
            # fold the block transformation into f; theta is updated for
            # bookkeeping but never consulted again for this block
            for row in ws.f:
                old = [row[c] for c in cols]
                for bidx, c in enumerate(cols):
                    acc = LaurentPoly.zero(var)
                    for aidx in range(2):
                        acc = acc + old[aidx] * fg[aidx][bidx]
                    row[c] = acc.truncate(ws.ftrunc)
            for th_side in ws.thetas:
                for row in th_side:
                    old = [row[c] for c in cols]
                    for bidx, c in enumerate(cols):
                        acc = LaurentPoly.zero(var)
                        for aidx in range(2):
                            acc = acc + old[aidx] * fg[aidx][bidx]
                        row[c] = acc.truncate(ws.ttrunc)
            blocks.extend(found2)
            fr += 2
            fc += 2
            break

    F = _derive_F(theta, ws.f, blocks, prec + max(0, -lo) + 4)
    mx = prec + max(0, -lo) + 8
    for row in ws.f:
        for e in row:
            if e.terms:
                mx = max(mx, e.max_exp() + 1)
    cert = DInfCertificate(
        blocks=blocks,
        F=LaurentMatrix(var, F, mx),
        f=LaurentMatrix(var, lm_truncate(ws.f, mx), mx),
        prec=prec,
    )
    return cert


def dinf_reduce(theta: LaurentMatrix, prec: int | None = None) -> DInfCertificate:
    """Decompose theta into canonical blocks with a verified certificate."""
    if not dinf_validate(theta):
        raise NormalFormError("input fails the rank conditions")
    explicit = prec is not None
    work = prec if explicit else max(default_prec(theta), theta.prec)
    attempts = 1 if explicit else 3
    last: Exception | None = None
    for _ in range(attempts):
        try:
            cert = _reduce_once(theta, work)
        except PrecisionExhausted as exc:
            last = exc
            work *= 2
            continue
        if cert.verify(theta):
            return cert
        last = PrecisionExhausted("certificate failed verification; raising precision")
        work *= 2
    raise last if last is not None else PrecisionExhausted("reduction failed")
