"""From canonical blocks to matrix factorizations.

The dictionary: for the two-plane surface x*y = 0 the column blocks map to
the component modules, the free module, and the [[y, z^n], [0, x]] family.
For the pinch point x^2*y - z^2 = 0 the 1x1 and 1x2 blocks map to the small
catalog members, and a hook of depth d maps to a rank-two module whose
presentation is recomputed from generators rather than copied: we build the
submodule generated by (0, x^(d+1)), (0, x^d*z), (x, z^d), (z, 0), solve for
its syzygies at a degree bound, and complete the syzygy matrix to a
factorization.  The result is certified against the catalog by an
equivalence search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import linalg
from ..catalog import (
    family_ainf,
    family_ainf_component,
    family_dinf_alpha,
    family_dinf_beta,
    family_dinf_gamma,
    family_dinf_delta,
    ring_dinf,
)
from ..mf import MatrixFactorization, MFError, complete_to_mf, mf_equivalence_search
from ..pmatrix import PolyMatrix, poly_det
from ..poly import MultiPoly, divide_out, monomials_below
from .blocks import AInfBlock, DInfBlock
from .lmatrix import LaurentMatrix, NormalFormError


@dataclass(frozen=True)
class FreeModuleMarker:
    """The block corresponds to a free module; no reduced factorization."""

    rank: int = 1


def ainf_block_to_mf(b: AInfBlock) -> MatrixFactorization | FreeModuleMarker:
    if b.kind == "reg":
        return FreeModuleMarker()
    if b.kind == "comp1":
        return family_ainf_component(1)
    if b.kind == "comp2":
        return family_ainf_component(2)
    if b.kind == "z1":
        return family_ainf(b.n)
    # z2: the other orientation of the same family
    mf = family_ainf(b.n)
    return MatrixFactorization(mf.ring, mf.psi, mf.phi)


def hook_module_generators(d: int) -> list[tuple[MultiPoly, MultiPoly]]:
    """Column generators of the rank-two module attached to a depth-d hook."""
    ring = ring_dinf()
    x = ring.poly("x")
    z = ring.poly("z")
    zero = ring.zero()
    return [
        (zero, ring.poly(f"x^{d + 1}")),
        (zero, ring.poly(f"x^{d}*z") if d else z),
        (x, ring.poly(f"z^{d}") if d else ring.one()),
        (z, zero),
    ]


def _syzygy_candidates(gens, degree_bound: int) -> list[list[MultiPoly]]:
    """Syzygies of the generator columns over the quotient ring, bounded degree.

    Solves G*v = f*w exactly; returns the v parts of a nullspace basis,
    constant-entry vectors dropped, sorted by entry degree.
    """
    ring = ring_dinf()
    nvars = len(ring.variables)
    monos = monomials_below(nvars, degree_bound + 1)
    nm = len(monos)
    ncomp = len(gens)  # columns of G
    f = ring.f

    def v_idx(c, m):
        return c * nm + m

    def w_idx(r, m):
        return ncomp * nm + r * nm + m

    total = (ncomp + 2) * nm
    rows_map: dict[tuple, dict[int, Fraction]] = {}

    def add(key, col, c):
        row = rows_map.setdefault(key, {})
        row[col] = row.get(col, Fraction(0)) + c

    for r in range(2):  # ambient rank two
        for c in range(ncomp):
            g = gens[c][r]
            for ge, gc in g.terms.items():
                for mi, me in enumerate(monos):
                    tot = tuple(a + b for a, b in zip(ge, me))
                    add((r, tot), v_idx(c, mi), gc)
        for fe, fc in f.terms.items():
            for mi, me in enumerate(monos):
                tot = tuple(a + b for a, b in zip(fe, me))
                add((r, tot), w_idx(r, mi), -fc)

    rows = [dict(r) for r in rows_map.values()]
    basis = linalg.nullspace_basis(rows, total)

    def vec_to_columns(vec):
        cols = []
        for c in range(ncomp):
            terms = {}
            for mi, me in enumerate(monos):
                val = vec.get(v_idx(c, mi))
                if val:
                    terms[me] = val
            cols.append(MultiPoly(ring.variables, terms))
        return cols

    out = []
    for vec in basis:
        cols = vec_to_columns(vec)
        if all(p.is_zero() for p in cols):
            continue
        out.append(cols)
    return out


_WEIGHTS = (1, 2, 2)  # x, y, z: makes x^2*y - z^2 weighted-homogeneous


def _wdeg(exps) -> int:
    return sum(w * e for w, e in zip(_WEIGHTS, exps))


def _homogeneous_split(cols, col_weights):
    """Split a syzygy vector into weighted-homogeneous syzygies.

    The generator columns are homogeneous for the shifted weights, so the
    defining equations split degree by degree and each graded part of a
    solution is again a solution.
    """
    ring = ring_dinf()
    parts: dict[int, list[dict]] = {}
    for c, p in enumerate(cols):
        for e, coeff in p.terms.items():
            sigma = _wdeg(e) + col_weights[c]
            slot = parts.setdefault(sigma, [dict() for _ in cols])
            slot[c][e] = coeff
    return [
        [MultiPoly(ring.variables, t) for t in slot] for _, slot in sorted(parts.items())
    ]


def _minimal_syzygy_matrix(d: int, bound: int) -> PolyMatrix:
    """Square minimal presentation of the hook module's syzygies.

    Candidates are split into weighted-homogeneous syzygies and selected by
    a graded span argument: a candidate is a new generator exactly when it
    is independent of the trivial syzygies and all bounded multiples of the
    generators already kept.
    """
    from ..linalg import SparseEchelon

    ring = ring_dinf()
    gens = hook_module_generators(d)
    col_weights = (d + 1, d + 2, 2 * d, 2 * d + 1)
    raw = _syzygy_candidates(gens, bound)
    seen = set()
    pool = []
    for cols in raw:
        for part in _homogeneous_split(cols, col_weights):
            if any(p.constant_term() for p in part):
                continue
            key = tuple(tuple(sorted(p.terms.items())) for p in part)
            if key in seen:
                continue
            seen.add(key)
            pool.append(part)
    pool.sort(
        key=lambda cols: max(
            (_wdeg(e) + col_weights[c] for c, p in enumerate(cols) for e in p.terms),
            default=0,
        )
    )

    enc_bound = 2 * bound + 6
    monos = monomials_below(3, enc_bound + 1)
    mono_index = {e: i for i, e in enumerate(monos)}
    nm = len(monos)

    def encode(cols):
        row = {}
        for c, p in enumerate(cols):
            for e, coeff in p.terms.items():
                idx = mono_index.get(e)
                if idx is None:
                    return None  # outside the encoding window, skip
                row[c * nm + idx] = coeff
        return row

    f = ring.f
    ech = SparseEchelon()
    # the trivial syzygies f*e_c and all their bounded monomial multiples
    for c in range(4):
        for me in monos:
            if sum(me) + 3 > enc_bound:
                continue
            prod = MultiPoly.monomial(ring.variables, me) * f
            vec = [ring.zero()] * 4
            vec[c] = prod
            row = encode(vec)
            if row:
                ech.add_row(row)

    kept = []
    for cols in pool:
        row = encode(cols)
        if row is None:
            continue
        if not ech.add_row(row):
            continue
        kept.append(cols)
        deg = max(p.total_degree() for p in cols)
        for me in monos:
            if not any(me):
                continue
            if sum(me) + deg > enc_bound:
                continue
            mono = MultiPoly.monomial(ring.variables, me)
            mult = encode([mono * p for p in cols])
            if mult:
                ech.add_row(mult)
        if len(kept) == 4:
            break
    if len(kept) != 4:
        raise NormalFormError("hook syzygies did not yield four generators")
    return PolyMatrix([[kept[j][i] for j in range(4)] for i in range(4)])


def dinf_block_to_mf(b: DInfBlock) -> MatrixFactorization | FreeModuleMarker:
    """Map a canonical block to its matrix factorization over x^2*y - z^2.

    Hooks are not copied from a table: the module generators are written
    down, a minimal square syzygy matrix is computed by a bounded-degree
    exact solve, completed to a factorization, and certified equivalent to
    the expected catalog member.  A result that fails any of those checks
    never escapes.
    """
    if b.kind == "one":
        return FreeModuleMarker()
    if b.kind == "t":
        return family_dinf_beta()
    if b.kind == "onet":
        return family_dinf_alpha()
    d = b.d
    ring = ring_dinf()
    m = d // 2
    target = family_dinf_gamma(m) if d % 2 == 0 else family_dinf_delta(m + 1)
    f = ring.f
    last_error = None
    for bound in (d // 2 + 3, d + 3):
        try:
            rho = _minimal_syzygy_matrix(d, bound)
        except NormalFormError as exc:
            last_error = exc
            continue
        det = poly_det(rho)
        if det.is_zero():
            continue
        e, cof = divide_out(det, f)
        if e != 2 or not (cof.is_constant() and cof.is_unit_local()):
            continue
        try:
            mf = complete_to_mf(ring, rho, bound + 2)
        except MFError as exc:
            last_error = exc
            continue
        cert = mf_equivalence_search(mf, target, 1)
        if cert is None:
            cert = mf_equivalence_search(mf, target, 2)
        if cert is not None:
            return mf
    raise NormalFormError(
        f"hook({d}) factorization did not certify against the catalog: {last_error}"
    )


def classify_dinf(theta: LaurentMatrix, prec: int | None = None):
    """Reduce and map each block; returns (certificate, list of results)."""
    from .dinf import dinf_reduce

    cert = dinf_reduce(theta, prec)
    return cert, [(b, dinf_block_to_mf(b)) for b in cert.blocks]


def classify_ainf(theta1: LaurentMatrix, theta2: LaurentMatrix, prec: int | None = None):
    from .ainf import ainf_reduce

    cert = ainf_reduce(theta1, theta2, prec)
    return cert, [(b, ainf_block_to_mf(b)) for b in cert.blocks]
