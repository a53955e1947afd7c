"""Exceptions raised throughout zeta_spectra."""

from __future__ import annotations

from typing import Any


class ZetaSpectraError(Exception):
    """Base class of all errors raised by zeta_spectra."""


class DimensionError(ZetaSpectraError, ValueError):
    """Matrix has no rows, is not square or lacks the required symmetry."""


class ExponentRangeError(ZetaSpectraError, ArithmeticError):
    """A pivot left the supported binary exponent range."""

    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


class ConvergenceError(ZetaSpectraError):
    """Jacobi sweeps did not reduce the off-diagonal mass below tolerance."""

    def __init__(self, residual: Any, sweeps: int):
        super().__init__(f"Jacobi iteration did not converge after {sweeps} sweeps (residual {residual}).")
        self.residual = residual
        self.sweeps = sweeps


class PrecisionCapError(ZetaSpectraError):
    """
    Successive eigenvalue runs still disagree at the precision cap.

    ``last`` holds the eigenvalues of the last run below the cap, ``previous`` those of the run
    before it, empty when only one run fit under the cap.
    """

    def __init__(self, cap: int, previous: list, last: list):
        super().__init__(f"Eigenvalues did not stabilise below the precision cap of {cap} bits.")
        self.cap = cap
        self.previous = previous
        self.last = last


class PoleError(ZetaSpectraError, ValueError):
    """Zeta evaluated at its pole s = 1."""


class QuadratureError(ZetaSpectraError):
    """Cauchy ring quadrature did not stabilise under node doubling."""

    def __init__(self, index: int, nodes: int):
        super().__init__(f"Coefficient theta_{index} did not converge with {nodes} quadrature nodes.")
        self.index = index
        self.nodes = nodes


class UnknownGeneratorError(ZetaSpectraError, KeyError):
    """Generator id or pole-removal tag is not registered."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class IndexBeyondStreamError(ZetaSpectraError, IndexError):
    """Coefficient requested past the end of a stream."""

    def __init__(self, index: int, max_index: int):
        super().__init__(
            f"theta_{index} is beyond the stream end (max index {max_index}); extend the stream to {index} first."
        )
        self.index = index
        self.max_index = max_index


class CacheCorruptionError(ZetaSpectraError):
    """Cached or re-generated coefficients disagree beyond their stated precision."""

    def __init__(self, index: int, message: str):
        super().__init__(f"theta_{index}: {message}")
        self.index = index


class IdentityViolationError(ZetaSpectraError):
    """A finite-m algebraic identity failed, which signals insufficient precision."""

    def __init__(self, message: str, lhs: Any, rhs: Any):
        super().__init__(f"{message}: {lhs} != {rhs}")
        self.lhs = lhs
        self.rhs = rhs


class ManifestError(ZetaSpectraError):
    """A manifest entry is missing on disk or its content hash differs."""
