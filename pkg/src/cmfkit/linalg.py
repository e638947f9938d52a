"""Exact sparse linear algebra over the rationals.

Rows are dicts mapping column index -> nonzero Fraction.  Everything is
computed by exact Gauss-Jordan elimination; no tolerance appears anywhere.
The incremental pivoting scheme (fold each row into the current pivot set)
keeps memory proportional to the echelon form, which matters for the large
jet systems produced by the Ext solver.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


class SparseEchelon:
    """Reduced row echelon accumulator over Q."""

    def __init__(self):
        self.pivots: dict[int, dict[int, Fraction]] = {}  # pivot col -> row

    def reduce_row(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        """Eliminate all current pivots from row (row is not mutated)."""
        row = dict(row)
        # iterate until no pivot column remains in the row
        while row:
            hit = None
            for c in row:
                if c in self.pivots:
                    hit = c
                    break
            if hit is None:
                break
            factor = row.pop(hit)
            for c2, v2 in self.pivots[hit].items():
                if c2 == hit:
                    continue
                s = row.get(c2)
                s = -factor * v2 if s is None else s - factor * v2
                if s:
                    row[c2] = s
                elif c2 in row:
                    del row[c2]
        return row

    def add_row(self, row: dict[int, Fraction]) -> bool:
        """Fold a row in.  Returns True when it increased the rank."""
        row = self.reduce_row(row)
        if not row:
            return False
        pc = min(row)
        inv = Fraction(1) / row[pc]
        row = {c: v * inv for c, v in row.items()}
        # back-substitute into existing pivot rows
        for opc, orow in self.pivots.items():
            f = orow.get(pc)
            if f is None:
                continue
            for c2, v2 in row.items():
                if c2 == pc:
                    continue
                s = orow.get(c2)
                s = -f * v2 if s is None else s - f * v2
                if s:
                    orow[c2] = s
                elif c2 in orow:
                    del orow[c2]
            del orow[pc]
        self.pivots[pc] = row

        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows: Iterable[dict[int, Fraction]]) -> int:
    ech = SparseEchelon()
    for r in rows:
        ech.add_row(r)
    return ech.rank


def nullspace_dim(rows: Iterable[dict[int, Fraction]], ncols: int) -> int:
    return ncols - rank(rows)


def nullspace_basis(rows: Iterable[dict[int, Fraction]], ncols: int) -> list[dict[int, Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    ech = SparseEchelon()
    for r in rows:
        ech.add_row(r)
    piv = ech.pivots
    basis = []
    pivot_cols = set(piv)
    for j in range(ncols):
        if j in pivot_cols:
            continue
        vec = {j: Fraction(1)}
        for pc, row in piv.items():
            v = row.get(j)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def solve_system(
    rows: list[dict[int, Fraction]],
    rhs: list[Fraction],
    ncols: int,
) -> dict[int, Fraction] | None:
    """One particular solution of A x = b, or None when inconsistent.

    Free variables are set to zero.
    """
    if len(rows) != len(rhs):
        raise ValueError("rhs length mismatch")
    aug = ncols  # augmented column index
    ech = SparseEchelon()
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[aug] = b
        ech.add_row(row)
    sol: dict[int, Fraction] = {}
    for pc, row in ech.pivots.items():
        if pc == aug:
            return None  # 0 = 1 row: inconsistent
        v = row.get(aug)
        if v:
            sol[pc] = v
    return sol
