"""Exact linear algebra and number theory over Z and Q."""

from sandpile_dlp.exactmath.circulant import circulant_pinv_first_row
from sandpile_dlp.exactmath.linalg import (
    bareiss_det,
    bareiss_inverse,
    is_moore_penrose,
    matmul,
    pseudoinverse,
    transpose,
)
from sandpile_dlp.exactmath.numtheory import (
    InconsistentError,
    ResidueClass,
    crt_combine,
    egcd,
    solve_lin_diophantine,
)
from sandpile_dlp.exactmath.snf import SnfDecomposition, smith_normal_form

__all__ = [
    "InconsistentError",
    "ResidueClass",
    "SnfDecomposition",
    "bareiss_det",
    "bareiss_inverse",
    "circulant_pinv_first_row",
    "crt_combine",
    "egcd",
    "is_moore_penrose",
    "matmul",
    "pseudoinverse",
    "smith_normal_form",
    "solve_lin_diophantine",
    "transpose",
]
