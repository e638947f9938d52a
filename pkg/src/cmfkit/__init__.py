"""Exact workbench for matrix factorizations and Cohen-Macaulay modules
over surface singularities."""

from .poly import Jet, MultiPoly, divide_out, exact_div, parse_poly, format_poly
from .laurent import LaurentPoly, even_odd_split, laurent_val
from .pmatrix import PolyMatrix, poly_det
from .mf import (
    HypersurfaceSpec,
    MatrixFactorization,
    Multirank,
    complete_to_mf,
    direct_sum,
    is_reduced,
    mf_equivalence_search,
    multirank,
    shift,
    trivial_mf,
    verify_mf,
)

__version__ = "0.1.0"
