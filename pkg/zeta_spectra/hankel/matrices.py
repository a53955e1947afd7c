from __future__ import annotations

import logging
from dataclasses import dataclass

from zeta_spectra.coeffs import CoeffStream, theta
from zeta_spectra.errors import IndexBeyondStreamError
from zeta_spectra.mpnum import RealMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HankelSpec:
    """Indices l, m of M_{l,m}(f) together with the stream holding the theta_k."""

    l: int
    m: int
    stream: CoeffStream

    def __post_init__(self):
        """Check the indices and that the stream reaches theta_{l+m-1}."""
        if self.l < 1 or self.m < 1:
            raise ValueError(f"l and m must be at least 1, got l={self.l}, m={self.m}.")
        if self.stream.max_index < self.max_index:
            raise IndexBeyondStreamError(self.max_index, self.stream.max_index)

    @property
    def max_index(self) -> int:
        """Largest coefficient index the matrix uses."""
        return self.l + self.m - 1


@dataclass(frozen=True)
class SignedHankel:
    """M_{l,m}(f) with its scalar sign prefactor kept alongside the matrix."""

    spec: HankelSpec
    sign: int
    matrix: RealMatrix

    @property
    def l(self) -> int:
        """Row index shift l."""
        return self.spec.l

    @property
    def m(self) -> int:
        """Matrix dimension m."""
        return self.spec.m


def sign_prefactor(m: int) -> int:
    """
    Scalar prefactor -(-1)^((m+1)(m+2)/2) of M_{l,m}.

    The values repeat with period 4 in m: +1, -1, -1, +1.

    :param m: matrix dimension
    :raises ValueError: if m < 1
    :return: +1 or -1
    """
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}.")
    exponent = (m + 1) * (m + 2) // 2
    return -1 if exponent % 2 == 0 else 1


def _matrix(stream: CoeffStream, l: int, m: int, index, sign: int = 1, symmetric: bool = True) -> RealMatrix:
    HankelSpec(l, m, stream)
    rows = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m + 1):
            value = theta(stream, index(i, j))
            row.append(-value if sign < 0 else value)
        rows.append(tuple(row))
    return RealMatrix(tuple(rows), symmetric=symmetric)


def hankel_core(stream: CoeffStream, l: int, m: int) -> RealMatrix:
    """
    Unsigned Hankel core with entry(i, j) = theta_{l+m+1-i-j}.

    :param stream: coefficient stream
    :param l: index shift, at least 1
    :param m: dimension, at least 1
    :raises IndexBeyondStreamError: if the stream ends before theta_{l+m-1}
    :return: symmetric matrix
    """
    return _matrix(stream, l, m, lambda i, j: l + m + 1 - i - j)


def build_M(stream: CoeffStream, l: int, m: int) -> SignedHankel:
    """
    Signed Hankel matrix M_{l,m}(f).

    entry(i, j) = sign_prefactor(m) * theta_{l+m+1-i-j} for 1-based i and j, so the top-left
    entry carries theta_{l+m-1} and the bottom-right one theta_{l-m+1}; negative indices give 0.

    :param stream: coefficient stream
    :param l: index shift, at least 1
    :param m: dimension, at least 1
    :raises IndexBeyondStreamError: if the stream ends before theta_{l+m-1}
    :return: the matrix with its sign
    """
    spec = HankelSpec(l, m, stream)
    sign = sign_prefactor(m)
    matrix = _matrix(stream, l, m, lambda i, j: l + m + 1 - i - j, sign=sign)
    return SignedHankel(spec, sign, matrix)


def raw_toeplitz(stream: CoeffStream, l: int, m: int) -> RealMatrix:
    """
    Unsigned Toeplitz form with entry(i, j) = theta_{l+j-i}.

    Reversing its columns gives :func:`hankel_core`.

    :param stream: coefficient stream
    :param l: index shift, at least 1
    :param m: dimension, at least 1
    :raises IndexBeyondStreamError: if the stream ends before theta_{l+m-1}
    :return: the (generally non-symmetric) matrix
    """
    return _matrix(stream, l, m, lambda i, j: l + j - i, symmetric=False)
