from __future__ import annotations

import logging
from dataclasses import dataclass

from mpmath import mp

from zeta_spectra.coeffs import CoeffStream
from zeta_spectra.mpnum import BigReal, det_lu

from .matrices import hankel_core, raw_toeplitz

logger = logging.getLogger(__name__)

RELATION_TOLERANCE = mp.mpf(10) ** -30


@dataclass(frozen=True)
class DetRelationReport:
    """Outcome of comparing det(Hankel core) with the permutation-signed det(Toeplitz form)."""

    l: int
    m: int
    det_hankel: BigReal
    det_toeplitz: BigReal
    permutation_sign: int
    relative_error: BigReal
    passed: bool


def column_reversal_sign(m: int) -> int:
    """Sign (-1)^(m(m-1)/2) of the permutation reversing m columns."""
    return -1 if (m * (m - 1) // 2) % 2 else 1


def det_relation_check(stream: CoeffStream, l: int, m: int, prec: int = 256) -> DetRelationReport:
    """
    Check det(H) = (-1)^(m(m-1)/2) det(T) for the Hankel core H and Toeplitz form T.

    A failure is reported, not raised.

    :param stream: coefficient stream
    :param l: index shift
    :param m: dimension
    :param prec: precision of both determinants in bits
    :return: the report, ``passed`` set when the relative error is at most 1e-30
    """
    sign = column_reversal_sign(m)
    det_h = det_lu(hankel_core(stream, l, m), prec)
    det_t = det_lu(raw_toeplitz(stream, l, m), prec)
    with mp.workprec(prec):
        scale = max(abs(det_h), abs(det_t))
        error = abs(det_h - sign * det_t) / scale if scale else mp.zero
        passed = error <= RELATION_TOLERANCE
    if not passed:
        logger.warning(
            f"det relation failed for l={l}, m={m}: det(H)={mp.nstr(det_h, 20)}, det(T)={mp.nstr(det_t, 20)}, "
            f"sign {sign:+d}, relative error {mp.nstr(error, 5)}"
        )
    return DetRelationReport(l, m, det_h, det_t, sign, error, passed)
