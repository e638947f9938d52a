"""Dense matrices over a commutative ring (polynomials, Laurent polynomials).

Entries are any objects supporting ring arithmetic.  Matrices are immutable
by convention: operations return fresh instances and never mutate the entry
grids they were built from.
"""

from __future__ import annotations

from itertools import permutations
from typing import Callable, Sequence


class PolyMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        grid = [list(r) for r in entries]
        if not grid:
            raise ValueError("matrix needs at least one row")
        w = len(grid[0])
        if any(len(r) != w for r in grid):
            raise ValueError("ragged matrix")
        self.rows = len(grid)
        self.cols = w
        self.entries = grid

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def col(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix(
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix([[-e for e in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, PolyMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in product")
            out = []
            for i in range(self.rows):
                row = []
                for j in range(other.cols):
                    acc = None
                    for k in range(self.cols):
                        term = self.entries[i][k] * other.entries[k][j]
                        acc = term if acc is None else acc + term
                    row.append(acc)
                out.append(row)
            return PolyMatrix(out)
        return PolyMatrix([[e * other for e in row] for row in self.entries])

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix([[e * c for e in row] for row in self.entries])

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.entries))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def map(self, fn: Callable) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.entries])

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"PolyMatrix[{body}]"


def identity(n: int, one, zero) -> PolyMatrix:
    return PolyMatrix([[one if i == j else zero for j in range(n)] for i in range(n)])


def scalar_matrix(n: int, value, zero) -> PolyMatrix:
    return PolyMatrix([[value if i == j else zero for j in range(n)] for i in range(n)])


def block_diag(a: PolyMatrix, b: PolyMatrix, zero) -> PolyMatrix:
    out = []
    for i in range(a.rows):
        out.append(a.row(i) + [zero] * b.cols)
    for i in range(b.rows):
        out.append([zero] * a.cols + b.row(i))
    return PolyMatrix(out)


def poly_det(m: PolyMatrix):
    """Determinant by cofactor expansion along the sparsest row.

    Exact over any commutative ring; intended for the small matrices this
    package manipulates (sizes stay below ten).
    """
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    return _det(m.entries)


def _is_zero_entry(e) -> bool:
    z = getattr(e, "is_zero", None)
    if z is not None:
        return z()
    return not e


def _det(grid):
    n = len(grid)
    if n == 1:
        return grid[0][0]
    if n == 2:
        return grid[0][0] * grid[1][1] - grid[0][1] * grid[1][0]
    # pick the row with the most zero entries for the expansion
    best = max(range(n), key=lambda i: sum(1 for e in grid[i] if _is_zero_entry(e)))
    result = None
    for j, e in enumerate(grid[best]):
        if _is_zero_entry(e):
            continue
        minor = [
            [grid[i][k] for k in range(n) if k != j] for i in range(n) if i != best
        ]
        term = e * _det(minor)
        if (best + j) % 2:
            term = -term
        result = term if result is None else result + term
    if result is None:
        # whole row of zeros
        z = grid[0][0]
        return z - z
    return result


def perm_sum_det(m: PolyMatrix):
    """Plain permutation-sum determinant, used as an independent cross-check."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    total = None
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        term = None
        for i in range(n):
            e = m.entries[i][perm[i]]
            term = e if term is None else term * e
        if sign < 0:
            term = -term
        total = term if total is None else total + term
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign
