"""Arbitrary-precision matrices, determinants and symmetric eigenvalues."""

import logging

from .linalg import (
    adaptive_solve,
    det_lu,
    frobenius_norm,
    guard_bits,
    permute_rows,
    permute_symmetric,
    sym_eigenvalues,
    trace,
)
from .types import (
    MIN_PRECISION,
    BigComplex,
    BigReal,
    EigenResult,
    PrecisionPolicy,
    RealMatrix,
    digits_to_bits,
    from_decimal,
    to_decimal,
)

__all__ = [
    "MIN_PRECISION",
    "BigComplex",
    "BigReal",
    "EigenResult",
    "PrecisionPolicy",
    "RealMatrix",
    "adaptive_solve",
    "det_lu",
    "digits_to_bits",
    "frobenius_norm",
    "from_decimal",
    "guard_bits",
    "permute_rows",
    "permute_symmetric",
    "sym_eigenvalues",
    "to_decimal",
    "trace",
]

logger = logging.getLogger(__name__)
