"""Canonical blocks for the two reduction problems, and their certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..laurent import LaurentPoly, even_odd_split
from .lmatrix import (
    LaurentMatrix,
    NormalFormError,
    lm_const_det,
    lm_det,
    lm_mul,
    lm_truncate,
)

# -- block enumerations ----------------------------------------------------------


@dataclass(frozen=True, order=True)
class DInfBlock:
    """One of (1), (t), (1 t), [[1, t], [t^d, 0]]."""

    kind: str  # "one" | "t" | "onet" | "hook"
    d: int = 0

    def __post_init__(self):
        if self.kind not in ("one", "t", "onet", "hook"):
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.kind == "hook" and self.d < 1:
            raise ValueError("hook depth must be >= 1")
        if self.kind != "hook" and self.d:
            raise ValueError("only hooks carry a depth")

    @property
    def shape(self) -> tuple[int, int]:
        return {"one": (1, 1), "t": (1, 1), "onet": (1, 2), "hook": (2, 2)}[self.kind]

    def matrix(self, var: str) -> list[list[LaurentPoly]]:
        one = LaurentPoly.const(var, 1)
        t = LaurentPoly.t(var)
        z = LaurentPoly.zero(var)
        if self.kind == "one":
            return [[one]]
        if self.kind == "t":
            return [[t]]
        if self.kind == "onet":
            return [[one, t]]
        return [[one, t], [LaurentPoly.t(var, self.d), z]]

    def __str__(self):
        return {"one": "(1)", "t": "(t)", "onet": "(1 t)"}.get(
            self.kind, f"hook({self.d})"
        )


BLOCK_ONE = DInfBlock("one")
BLOCK_T = DInfBlock("t")
BLOCK_ONET = DInfBlock("onet")


def hook(d: int) -> DInfBlock:
    return DInfBlock("hook", d)


@dataclass(frozen=True, order=True)
class AInfBlock:
    """Column blocks of the two-sided problem.

    kind "comp1" = ((1), ()); "comp2" = ((), (1)); "reg" = ((1), (1));
    "z1" = ((z^n), (1)); "z2" = ((1), (z^n)).
    """

    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("comp1", "comp2", "reg", "z1", "z2"):
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.kind in ("z1", "z2") and self.n < 1:
            raise ValueError("power blocks need n >= 1")
        if self.kind in ("comp1", "comp2", "reg") and self.n:
            raise ValueError("only power blocks carry n")

    @property
    def shape(self) -> tuple[int, int, int]:
        """(rows on side 1, rows on side 2, columns)."""
        return {
            "comp1": (1, 0, 1),
            "comp2": (0, 1, 1),
            "reg": (1, 1, 1),
            "z1": (1, 1, 1),
            "z2": (1, 1, 1),
        }[self.kind]

    def side_entries(self, var: str) -> tuple[LaurentPoly | None, LaurentPoly | None]:
        one = LaurentPoly.const(var, 1)
        if self.kind == "comp1":
            return one, None
        if self.kind == "comp2":
            return None, one
        if self.kind == "reg":
            return one, one
        if self.kind == "z1":
            return LaurentPoly.t(var, self.n), one
        return one, LaurentPoly.t(var, self.n)

    def __str__(self):
        if self.kind == "z1":
            return f"(z1^{self.n}, 1)"
        if self.kind == "z2":
            return f"(1, z2^{self.n})"
        return {"comp1": "(1, .)", "comp2": "(., 1)", "reg": "(1, 1)"}[self.kind]


def dinf_block_diagonal(blocks: list[DInfBlock], var: str) -> list[list[LaurentPoly]]:
    z = LaurentPoly.zero(var)
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    grid = [[z] * cols for _ in range(rows)]
    r = c = 0
    for b in blocks:
        m = b.matrix(var)
        for i, row in enumerate(m):
            for j, e in enumerate(row):
                grid[r + i][c + j] = e
        r += b.shape[0]
        c += b.shape[1]
    return grid


def ainf_block_matrices(
    blocks: list[AInfBlock], var: str
) -> tuple[list[list[LaurentPoly]], list[list[LaurentPoly]]]:
    z = LaurentPoly.zero(var)
    p = sum(b.shape[0] for b in blocks)
    q = sum(b.shape[1] for b in blocks)
    n = len(blocks)
    g1 = [[z] * n for _ in range(p)]
    g2 = [[z] * n for _ in range(q)]
    r1 = r2 = 0
    for c, b in enumerate(blocks):
        e1, e2 = b.side_entries(var)
        if e1 is not None:
            g1[r1][c] = e1
            r1 += 1
        if e2 is not None:
            g2[r2][c] = e2
            r2 += 1
    return g1, g2


# -- certificates -----------------------------------------------------------------


@dataclass
class DInfCertificate:
    """F^{-1} * theta * f = block diagonal, verified modulo t**prec."""

    blocks: list[DInfBlock]
    F: LaurentMatrix
    f: LaurentMatrix
    prec: int

    def verify(self, theta: LaurentMatrix) -> bool:
        var = theta.var
        lhs = lm_truncate(lm_mul(theta.entries, self.f.entries, var), self.prec)
        diag = dinf_block_diagonal(self.blocks, var)
        rhs = lm_truncate(lm_mul(self.F.entries, diag, var), self.prec)
        if lhs != rhs:
            return False
        # F: nonnegative valuations and invertible constant part
        for row in self.F.entries:
            for e in row:
                if e.terms and e.valuation() < 0:
                    return False
        if not lm_const_det(self.F.entries):
            return False
        # f: even entries, invertible over the Laurent field
        for row in self.f.entries:
            for e in row:
                if not e.is_even():
                    return False
        if not lm_det(self.f.entries, var).terms:
            return False
        return True

    def block_multiset(self) -> tuple:
        return tuple(sorted(self.blocks))


@dataclass
class AInfCertificate:
    """F_i^{-1} * theta_i * f = block part i, verified modulo t**prec."""

    blocks: list[AInfBlock]
    F1: LaurentMatrix
    F2: LaurentMatrix
    f: LaurentMatrix
    prec: int

    def verify(self, theta1: LaurentMatrix, theta2: LaurentMatrix) -> bool:
        var = theta1.var
        b1, b2 = ainf_block_matrices(self.blocks, var)
        for theta, F, b in ((theta1, self.F1, b1), (theta2, self.F2, b2)):
            lhs = lm_truncate(lm_mul(theta.entries, self.f.entries, var), self.prec)
            rhs = lm_truncate(lm_mul(F.entries, b, var), self.prec)
            if lhs != rhs:
                return False
            for row in F.entries:
                for e in row:
                    if e.terms and e.valuation() < 0:
                        return False
            if not lm_const_det(F.entries):
                return False
        if not lm_det(self.f.entries, var).terms:
            return False
        return True

    def block_multiset(self) -> tuple:
        return tuple(sorted(self.blocks))
