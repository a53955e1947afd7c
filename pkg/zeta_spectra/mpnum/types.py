from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import mpmath
from mpmath import mp
from mpmath.libmp.libmpf import repr_dps

from zeta_spectra.errors import DimensionError

BigReal = mpmath.mpf
BigComplex = mpmath.mpc

MIN_PRECISION = 64


def digits_to_bits(digits: int) -> int:
    """
    Number of bits needed to hold the given count of decimal digits.

    :param digits: decimal digits
    :return: bits, rounded up
    """
    return math.ceil(digits * math.log2(10))


def to_decimal(x: Any, bits: int) -> str:
    """
    Serialize a value as a decimal string that reads back to the same binary value.

    :param x: real value (mpf, int, float or decimal string)
    :param bits: precision the value is stated at
    :return: decimal string with enough digits for a lossless round trip at ``bits``
    """
    with mp.workprec(bits):
        return mpmath.nstr(mp.mpf(x), repr_dps(bits))


def from_decimal(text: str, bits: int) -> BigReal:
    """
    Parse a decimal string produced by :func:`to_decimal`.

    :param text: decimal string
    :param bits: precision to round the parsed value to
    :return: the parsed value
    """
    with mp.workprec(bits):
        return mp.mpf(text)


@dataclass(frozen=True)
class PrecisionPolicy:
    """Numeric policy shared by the eigensolver and every sweep."""

    target_digits: int = 30
    start_bits: int = 256
    prec_cap: int = 8192
    max_sweeps: int = 64

    def __post_init__(self):
        """Validate the policy."""
        if self.target_digits < 10:
            raise ValueError(f"target_digits must be at least 10, got {self.target_digits}.")
        if self.start_bits < MIN_PRECISION:
            raise ValueError(f"start_bits must be at least {MIN_PRECISION}, got {self.start_bits}.")
        if self.prec_cap < self.start_bits:
            raise ValueError(f"prec_cap ({self.prec_cap}) is below start_bits ({self.start_bits}).")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be positive.")


@dataclass(frozen=True)
class RealMatrix:
    """
    Dense square matrix of mpmath reals.

    Rows are stored as tuples; ``entry`` uses 1-based indices like the matrix formulas,
    ``rows[i][j]`` is the 0-based view. When ``symmetric`` is set, mirrored entries must be
    bit-for-bit equal.
    """

    rows: tuple[tuple[BigReal, ...], ...]
    symmetric: bool = False

    def __post_init__(self):
        """Check shape and the symmetry flag."""
        n = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise DimensionError(f"Row {i + 1} has {len(row)} entries, expected {n}.")
        if self.symmetric:
            for i in range(n):
                for j in range(i + 1, n):
                    if self.rows[i][j] != self.rows[j][i]:
                        raise DimensionError(f"Matrix flagged symmetric but entry ({i + 1},{j + 1}) differs.")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Any]], symmetric: bool = False, prec: int = 256) -> RealMatrix:
        """
        Build a matrix from nested sequences of numbers or decimal strings.

        :param rows: nested sequences, one per row
        :param symmetric: whether to set (and enforce) the symmetric flag
        :param prec: precision in bits used to convert the entries
        :return: the matrix
        """
        with mp.workprec(prec):
            converted = tuple(tuple(mp.mpf(x) for x in row) for row in rows)
        return cls(converted, symmetric=symmetric)

    @classmethod
    def identity(cls, dim: int) -> RealMatrix:
        """Identity matrix of the given dimension."""
        return cls(tuple(tuple(mp.one if i == j else mp.zero for j in range(dim)) for i in range(dim)), symmetric=True)

    @property
    def dim(self) -> int:
        """Number of rows (and columns)."""
        return len(self.rows)

    def entry(self, i: int, j: int) -> BigReal:
        """
        Entry at 1-based row ``i`` and column ``j``.

        :param i: row index, starting at 1
        :param j: column index, starting at 1
        :return: the entry
        """
        return self.rows[i - 1][j - 1]

    def is_zero(self) -> bool:
        """Whether every entry is exactly zero."""
        return all(x == 0 for row in self.rows for x in row)


@dataclass(frozen=True)
class EigenResult:
    """Eigenvalues of a symmetric matrix, ascending, with the precision that produced them."""

    eigenvalues: tuple[BigReal, ...]
    precision_used: int
    offdiag_residual: BigReal
    sweeps: int = 0

    def __len__(self) -> int:
        """Number of eigenvalues."""
        return len(self.eigenvalues)
