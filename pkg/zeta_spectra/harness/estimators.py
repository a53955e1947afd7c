"""
Extrapolation of determinant sequences.

Under the reformulations d_m behaves like R * W^m, so ln|d_m| / m = ln W + ln R / m + o(1/m).
The 1/m term is removed first by pairwise elimination, then Aitken's delta-squared
process accelerates what is left.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
from mpmath import mp

from zeta_spectra.mpnum import BigReal

from .types import TrendReport, TrendThresholds, Verdict

logger = logging.getLogger(__name__)

RATE_ESTIMATOR = "richardson1/m+aitken"
CONSTANT_ESTIMATOR = "richardson1/m+tail-mean"
HARNESS_BITS = 256
TAIL_LENGTH = 4


def richardson(ms: Sequence[int], values: Sequence[BigReal]) -> list[BigReal]:
    """
    Eliminate a 1/m term from consecutive entries.

    :param ms: strictly increasing m
    :param values: value at each m
    :return: (m2 v2 - m1 v1) / (m2 - m1) for every consecutive pair
    """
    return [(ms[i + 1] * values[i + 1] - ms[i] * values[i]) / (ms[i + 1] - ms[i]) for i in range(len(ms) - 1)]


def aitken(x0: BigReal, x1: BigReal, x2: BigReal) -> BigReal:
    """
    Aitken delta-squared extrapolation of three consecutive values.

    Falls back to x2 when the second difference vanishes or the correction is larger than
    the two steps it is built from.
    """
    d1 = x1 - x0
    d2 = x2 - x1
    denominator = d2 - d1
    if denominator == 0:
        return x2
    correction = d2 * d2 / denominator
    if abs(correction) > abs(d1) + abs(d2):
        return x2
    return x2 - correction


def accelerate(values: Sequence[BigReal]) -> tuple[BigReal, BigReal]:
    """
    Limit estimate of a sequence and how much it moved in the last step.

    :param values: at least two values
    :return: (estimate, |estimate - previous estimate|)
    """
    if len(values) >= 4:
        current = aitken(*values[-3:])
        previous = aitken(*values[-4:-1])
    elif len(values) == 3:
        current = aitken(*values)
        previous = values[-1]
    else:
        current, previous = values[-1], values[-2]
    return current, abs(current - previous)


def _prepare(dets: Sequence[tuple[int, BigReal]], minimum: int = 4) -> tuple[list[int], list[BigReal]]:
    entries = sorted(dets, key=lambda entry: entry[0])
    if len(entries) < minimum:
        raise ValueError(f"At least {minimum} determinants are needed, got {len(entries)}.")
    ms = [int(m) for m, _ in entries]
    if len(set(ms)) != len(ms):
        raise ValueError("Determinants must have distinct m.")
    values = [mp.mpf(d) for _, d in entries]
    for m, d in zip(ms, values, strict=True):
        if d == 0:
            raise ValueError(f"Determinant for m={m} is zero.")
    return ms, values


def _sign_pattern(values: Sequence[BigReal]) -> str:
    signs = [1 if d > 0 else -1 for d in values]
    if all(s > 0 for s in signs):
        return "positive"
    if all(s < 0 for s in signs):
        return "negative"
    if all(signs[i] != signs[i + 1] for i in range(len(signs) - 1)):
        return "alternating"
    return "mixed"


def est_rate(
    dets: Sequence[tuple[int, BigReal]],
    W: BigReal | None = None,
    thresholds: TrendThresholds | None = None,
    prec: int = HARNESS_BITS,
    check_id: str = "rate",
    l: int | None = None,
) -> TrendReport:
    """
    Estimate lim |d_m|^(1/m).

    The reported sequence is |d_m|^(1/m); signs are tracked separately and flagged in the
    details. Without ``W`` the verdict says whether the estimate is stable to ``rate_tol``;
    with ``W`` it says whether the estimate matches W.

    :param dets: (m, d_m) pairs, at least 4, all nonzero
    :param W: expected limit, optional
    :param thresholds: verdict thresholds
    :param prec: working precision in bits
    :param check_id: id written into the report
    :param l: index shift the determinants belong to
    :raises ValueError: if fewer than 4 entries are given or a determinant is zero
    :return: the report
    """
    thresholds = thresholds or TrendThresholds()
    with mp.workprec(prec):
        ms, values = _prepare(dets)
        logs = [mp.log(abs(d)) / m for m, d in zip(ms, values, strict=True)]
        estimate, movement = accelerate(richardson(ms, logs))
        limit = mp.exp(estimate)
        sequence = tuple((m, mp.exp(x)) for m, x in zip(ms, logs, strict=True))
        signs = _sign_pattern(values)
        details = {"signs": signs, "sign_flagged": str(signs != "positive").lower(), "stability": mp.nstr(movement, 5)}

        stable = movement <= thresholds.rate_tol
        if W is None:
            verdict = Verdict.SUPPORTED if stable else Verdict.INCONCLUSIVE
        else:
            W = mp.mpf(W)
            error = abs(limit - W) / W
            details["relative_error"] = mp.nstr(error, 5)
            if error <= thresholds.rate_tol:
                verdict = Verdict.SUPPORTED
            elif error > thresholds.contradict_tol and stable:
                verdict = Verdict.CONTRADICTED
            else:
                verdict = Verdict.INCONCLUSIVE
    logger.debug(f"{check_id}: limit {mp.nstr(limit, 15)}, stability {details['stability']}, verdict {verdict.value}")
    return TrendReport(check_id, sequence, RATE_ESTIMATOR, verdict, l, limit, thresholds, details)


def log_slope(ms: Sequence[int], values: Sequence[BigReal]) -> float:
    """Least-squares slope of ln|value| against m over the second half of the sequence."""
    start = len(ms) // 2 if len(ms) >= 6 else 0
    x = np.array([float(m) for m in ms[start:]])
    y = np.array([float(mp.log(abs(v))) for v in values[start:]])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def est_constant(
    dets: Sequence[tuple[int, BigReal]],
    W: BigReal,
    thresholds: TrendThresholds | None = None,
    prec: int = HARNESS_BITS,
    check_id: str = "constant",
    l: int | None = None,
) -> TrendReport:
    """
    Estimate R in d_m ~ R * W^m.

    The sequence c_m = d_m / W^m is corrected for its 1/m term; the estimate is the mean of
    the last corrected values and their largest deviation from it is the dispersion. A
    sequence that still grows or decays geometrically, i.e. whose ln|c_m| has a slope above
    ``drift_tol`` in m, contradicts the given W.

    :param dets: (m, d_m) pairs, at least 4, all nonzero
    :param W: growth rate, positive
    :param thresholds: verdict thresholds
    :param prec: working precision in bits
    :param check_id: id written into the report
    :param l: index shift the determinants belong to
    :raises ValueError: if W is not positive, fewer than 4 entries are given or a determinant is zero
    :return: the report with the R estimate as ``limit``
    """
    thresholds = thresholds or TrendThresholds()
    with mp.workprec(prec):
        W = mp.mpf(W)
        if not W > 0:
            raise ValueError(f"W must be positive, got {W}.")
        ms, values = _prepare(dets)
        scaled = [d / W**m for m, d in zip(ms, values, strict=True)]
        corrected = richardson(ms, scaled)
        tail = corrected[-TAIL_LENGTH:]
        estimate = mp.fsum(tail) / len(tail)
        dispersion = max(abs(x - estimate) for x in tail)
        slope = log_slope(ms, scaled)
        details = {
            "dispersion": mp.nstr(dispersion, 5),
            "log_slope": f"{slope:.6g}",
            "signs": _sign_pattern(values),
        }
        if abs(slope) > thresholds.drift_tol:
            verdict = Verdict.CONTRADICTED
        elif dispersion <= thresholds.rate_tol * abs(estimate):
            verdict = Verdict.SUPPORTED
        else:
            verdict = Verdict.INCONCLUSIVE
        sequence = tuple(zip(ms, scaled, strict=True))
    logger.debug(f"{check_id}: R estimate {mp.nstr(estimate, 15)}, slope {slope:.3g}, verdict {verdict.value}")
    return TrendReport(check_id, sequence, CONSTANT_ESTIMATOR, verdict, l, estimate, thresholds, details)
