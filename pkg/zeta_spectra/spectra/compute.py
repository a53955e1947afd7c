from __future__ import annotations

import logging
import math
import statistics
from collections.abc import Sequence

from mpmath import mp

from zeta_spectra.coeffs import CoeffStream
from zeta_spectra.errors import IdentityViolationError
from zeta_spectra.hankel import build_M
from zeta_spectra.mpnum import BigReal, PrecisionPolicy, adaptive_solve, det_lu, frobenius_norm

from .types import LogSpectrum, PairingStats, SpectrumRecord, SplitPolicy, SplitSpectrum

logger = logging.getLogger(__name__)

IDENTITY_DIGITS = 30
MAX_ESCALATIONS = 4


def _check_product(record: SpectrumRecord, norm: BigReal):
    """|prod mu - det| <= 1e-30 * max(|det|, 2^(-prec/2) * ||M||_F^m)."""
    with mp.workprec(record.precision_used):
        product = mp.fprod(record.eigenvalues)
        floor = mp.ldexp(norm**record.m, -record.precision_used // 2)
        bound = mp.mpf(10) ** -IDENTITY_DIGITS * max(abs(record.determinant), floor)
        if abs(product - record.determinant) > bound:
            raise IdentityViolationError(
                f"product of eigenvalues differs from det(M) for l={record.l}, m={record.m} "
                f"at {record.precision_used} bits",
                mp.nstr(product, 25),
                mp.nstr(record.determinant, 25),
            )


def _smallest_nonzero(record: SpectrumRecord) -> BigReal | None:
    nonzero = [abs(mu) for mu in record.eigenvalues if not record.is_zero(mu)]
    return min(nonzero) if nonzero else None


def _solve(
    stream: CoeffStream, l: int, m: int, tried: tuple[int, ...], target_digits: int, policy: PrecisionPolicy
):
    signed = build_M(stream, l, m)
    result = adaptive_solve(signed.matrix, tried[-1], policy)
    prec = result.precision_used
    determinant = det_lu(signed.matrix, prec)
    norm = frobenius_norm(signed.matrix, prec)
    with mp.workprec(prec):
        zero_threshold = mp.ldexp(m * norm, -prec)
    record = SpectrumRecord(
        l=l,
        m=m,
        function_id=stream.spec.label,
        eigenvalues=result.eigenvalues,
        precision_used=prec,
        target_digits=target_digits,
        determinant=determinant,
        zero_threshold=zero_threshold,
        digits_tried=tried,
    )
    return record, norm


def compute_spectrum(
    stream: CoeffStream, l: int, m: int, target_digits: int = 30, policy: PrecisionPolicy | None = None
) -> SpectrumRecord:
    """
    Eigenvalues of M_{l,m}(f) reproduced to ``target_digits``.

    For analytic streams an eigenvalue with 0 < |mu| < 10^(-digits) is only known to absolute
    accuracy, so the solve is repeated with enough digits to resolve it relatively.

    :param stream: coefficient stream covering theta_{l+m-1}
    :param l: index shift
    :param m: dimension
    :param target_digits: decimal digits every eigenvalue must be reproduced to
    :param policy: start bits, precision cap and sweep limit
    :raises IdentityViolationError: if the eigenvalue product misses det(M) by more than 1e-30 relative
    :raises PrecisionCapError: if the eigenvalues do not stabilise below the cap
    :return: the record
    """
    policy = policy or PrecisionPolicy(target_digits=target_digits)
    digits = target_digits
    record, norm = _solve(stream, l, m, (digits,), target_digits, policy)
    if stream.spec.kind == "analytic":
        for _ in range(MAX_ESCALATIONS):
            smallest = _smallest_nonzero(record)
            if smallest is None:
                break
            with mp.workprec(record.precision_used):
                if smallest >= mp.mpf(10) ** -digits:
                    break
                digits = target_digits + int(math.ceil(-mp.log10(smallest)))
            logger.debug(f"Smallest |mu| for l={l}, m={m} is {mp.nstr(smallest, 5)}, escalating to {digits} digits.")
            record, norm = _solve(stream, l, m, (*record.digits_tried, digits), target_digits, policy)
    _check_product(record, norm)
    return record


def log_spectrum(record: SpectrumRecord) -> LogSpectrum:
    """
    ln|mu| of every eigenvalue that is not zero, sorted.

    :param record: spectrum record
    :return: the log-spectrum; zero eigenvalues are counted in ``zero_count``
    """
    with mp.workprec(record.precision_used):
        points = sorted(mp.log(abs(mu)) for mu in record.eigenvalues if not record.is_zero(mu))
    zero_count = record.m - len(points)
    if zero_count:
        logger.info(f"{zero_count} of {record.m} eigenvalues are zero for l={record.l}, m={record.m}.")
    return LogSpectrum(record.l, record.m, tuple(points), zero_count, record.precision_used)


def _all_trains(points: Sequence[BigReal], policy_id: str, reason: str) -> SplitSpectrum:
    logger.warning(f"Degenerate split ({reason}), all {len(points)} points are trains.")
    return SplitSpectrum((), tuple(points), policy_id, None)


def split(ls: LogSpectrum, policy: SplitPolicy | str = "largest-gap") -> SplitSpectrum:
    """
    Separate a log-spectrum into electrons (lower part) and trains (upper part).

    ``largest-gap`` cuts at the midpoint of the widest gap between consecutive points, the
    first one on ties; ``threshold:C`` makes every point below C an electron; ``quantile:Q``
    puts the lowest fraction Q of the points below the cut, moving the cut down to the next
    boundary between distinct values.

    :param ls: log-spectrum
    :param policy: split policy or its text form
    :raises ValueError: if the log-spectrum has no points
    :return: the split; a single point or coincident points give all trains
    """
    if isinstance(policy, str):
        policy = SplitPolicy.parse(policy)
    points = list(ls.points)
    if not points:
        raise ValueError(f"Cannot split an empty log-spectrum (l={ls.l}, m={ls.m}).")
    policy_id = policy.policy_id

    if len(points) == 1:
        return _all_trains(points, policy_id, "single point")

    with mp.workprec(ls.precision_bits):
        if policy.kind == "threshold":
            cut = mp.mpf(policy.value)
            electrons = tuple(x for x in points if x < cut)
            trains = tuple(x for x in points if x >= cut)
            return SplitSpectrum(electrons, trains, policy_id, cut)

        if policy.kind == "largest-gap":
            gaps = [points[i + 1] - points[i] for i in range(len(points) - 1)]
            widest = max(gaps)
            if widest == 0:
                return _all_trains(points, policy_id, "all points coincide")
            k = gaps.index(widest) + 1
        else:
            k = int(math.floor(float(policy.value) * len(points)))
            while 0 < k < len(points) and points[k - 1] == points[k]:
                k -= 1
            if k == 0:
                return _all_trains(points, policy_id, "quantile below the lowest distinct value")
            if k == len(points):
                return SplitSpectrum(tuple(points), (), policy_id, mp.inf)
        cut = (points[k - 1] + points[k]) / 2
    return SplitSpectrum(tuple(points[:k]), tuple(points[k:]), policy_id, cut)


def pairing_stats(trains: Sequence, prec: int = 256) -> PairingStats:
    """
    How strongly train points come in pairs.

    Sorted points are paired (1, 2), (3, 4), ...; an odd last point stays unpaired.

    :param trains: train points
    :param prec: working precision in bits
    :raises ValueError: if fewer than 4 points are given
    :return: median gap inside pairs, median gap between consecutive pairs and their ratio
    """
    if len(trains) < 4:
        raise ValueError(f"Pairing needs at least 4 train points, got {len(trains)}.")
    with mp.workprec(prec):
        x = sorted(mp.mpf(t) for t in trains)
        pairs = len(x) // 2
        intra = [x[2 * i + 1] - x[2 * i] for i in range(pairs)]
        inter = [x[2 * i + 2] - x[2 * i + 1] for i in range(pairs - 1)]
        intra_median = statistics.median(intra)
        inter_median = statistics.median(inter)
        ratio = intra_median / inter_median if inter_median else mp.inf
    return PairingStats(intra_median, inter_median, ratio)
