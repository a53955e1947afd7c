from __future__ import annotations

import itertools
import logging
from collections.abc import Mapping, Sequence

import numpy as np
from mpmath import mp

from zeta_spectra.dist import StepDistribution, mean, sup_distance, tail_sums
from zeta_spectra.errors import IdentityViolationError
from zeta_spectra.spectra import LogSpectrum, SpectrumRecord

from .estimators import HARNESS_BITS, accelerate, est_constant, est_rate, richardson
from .types import ReferenceConstants, TrendReport, TrendThresholds, Verdict

logger = logging.getLogger(__name__)

MEAN_ESTIMATOR = "richardson1/m"
CHECKPOINT_ESTIMATOR = "dyadic-increments"
DISTANCE_ESTIMATOR = "monotone-sup-distance"
TAIL_ESTIMATOR = "monotone-tails"


def _is_dyadic(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0


def dyadic_checkpoints(ms: Sequence[int]) -> list[int]:
    """The powers of two among ``ms`` if there are at least three, else all of ``ms``."""
    dyadic = [m for m in ms if _is_dyadic(m)]
    return dyadic if len(dyadic) >= 3 else list(ms)


def monotone_verdict(values: Sequence, decreasing: bool = True) -> Verdict:
    """
    Verdict on a sequence expected to shrink (or to grow when ``decreasing`` is False).

    :param values: values in order of increasing m
    :param decreasing: direction that supports the claim
    :return: SUPPORTED if every step goes the expected way, or if all values are zero when
        shrinking is expected; CONTRADICTED if every step goes the other way; else INCONCLUSIVE
    """
    steps = list(zip(values, values[1:], strict=False))
    if decreasing and all(v == 0 for v in values):
        return Verdict.SUPPORTED
    if all((b < a) if decreasing else (b > a) for a, b in steps):
        return Verdict.SUPPORTED
    if all((b > a) if decreasing else (b < a) for a, b in steps):
        return Verdict.CONTRADICTED
    return Verdict.INCONCLUSIVE


def _unavailable(check_id: str, l: int | None, thresholds: TrendThresholds, estimator: str) -> TrendReport:
    logger.warning(f"{check_id}: no reference W for l={l}, check unavailable.")
    return TrendReport(check_id, (), estimator, Verdict.UNAVAILABLE, l, None, thresholds, {"reason": "W not configured"})


def _determinants(records: Sequence[SpectrumRecord]) -> list[tuple[int, object]]:
    return [(record.m, record.determinant) for record in sorted(records, key=lambda r: r.m)]


def check_version2(
    records: Sequence[SpectrumRecord], refs: ReferenceConstants, l: int, thresholds: TrendThresholds | None = None
) -> TrendReport:
    """
    Does det(M_{l,m}) / W_l^m converge to a constant R_l.

    :param records: spectrum records of one l
    :param refs: reference constants providing W_l and optionally R_l
    :param l: index shift
    :param thresholds: verdict thresholds
    :return: the report, UNAVAILABLE without W_l
    """
    thresholds = thresholds or TrendThresholds()
    W = refs.W(l, HARNESS_BITS)
    if W is None:
        return _unavailable("v2", l, thresholds, "richardson1/m+tail-mean")
    report = est_constant(_determinants(records), W, thresholds, check_id="v2", l=l)
    R = refs.R(l, HARNESS_BITS)
    if R is None or report.verdict != Verdict.SUPPORTED:
        return report
    with mp.workprec(HARNESS_BITS):
        error = abs(report.limit - R) / abs(R)
    details = {**report.details, "R_relative_error": mp.nstr(error, 5)}
    verdict = Verdict.CONTRADICTED if error > thresholds.contradict_tol else report.verdict
    return TrendReport("v2", report.sequence, report.estimator_id, verdict, l, report.limit, thresholds, details)


def check_version3(
    records: Sequence[SpectrumRecord], refs: ReferenceConstants | None, l: int, thresholds: TrendThresholds | None = None
) -> TrendReport:
    """
    Does |det(M_{l,m})|^(1/m) converge, to W_l when it is configured.

    :param records: spectrum records of one l, at least 4
    :param refs: reference constants, optional
    :param l: index shift
    :param thresholds: verdict thresholds
    :return: the report
    """
    W = refs.W(l, HARNESS_BITS) if refs is not None else None
    return est_rate(_determinants(records), W, thresholds, check_id="v3", l=l)


def check_version5(
    records: Sequence[SpectrumRecord], W=None, thresholds: TrendThresholds | None = None
) -> TrendReport:
    """
    Root-mean eigenvalue product |prod mu|^(1/m) and its limit.

    At every m the value must equal |det|^(1/m) to ``identity_digits``; the trend goes to
    :func:`est_rate` once there are four records with nonzero products.

    :param records: spectrum records of one l
    :param W: expected limit, optional
    :param thresholds: verdict thresholds
    :raises ValueError: if no records are given
    :raises IdentityViolationError: if a product and its determinant disagree
    :return: the report
    """
    thresholds = thresholds or TrendThresholds()
    if not records:
        raise ValueError("check_version5 needs at least one record.")
    records = sorted(records, key=lambda r: r.m)
    l = records[0].l
    sequence = []
    products = []
    with mp.workprec(HARNESS_BITS):
        tolerance = mp.mpf(10) ** -thresholds.identity_digits
        for record in records:
            if any(record.is_zero(mu) for mu in record.eigenvalues):
                sequence.append((record.m, mp.zero))
                products.append((record.m, mp.zero))
                continue
            with mp.workprec(max(record.precision_used, HARNESS_BITS)):
                product = mp.fprod(record.eigenvalues)
                root = mp.root(abs(product), record.m)
                det_root = mp.root(abs(record.determinant), record.m)
                if abs(root - det_root) > tolerance * max(root, det_root):
                    raise IdentityViolationError(
                        f"|prod mu|^(1/m) differs from |det|^(1/m) at l={record.l}, m={record.m}",
                        mp.nstr(root, 30),
                        mp.nstr(det_root, 30),
                    )
            sequence.append((record.m, +root))
            products.append((record.m, product))

    if len(records) < 4 or any(p == 0 for _, p in products):
        reason = "fewer than 4 records" if len(records) < 4 else "zero eigenvalue product"
        return TrendReport("v5", tuple(sequence), "identity-only", Verdict.INCONCLUSIVE, l, None, thresholds, {"reason": reason})
    report = est_rate(products, W, thresholds, check_id="v5", l=l)
    return TrendReport(
        "v5", tuple(sequence), report.estimator_id, report.verdict, l, report.limit, thresholds, report.details
    )


def check_version6(
    dists: Sequence[StepDistribution], W=None, thresholds: TrendThresholds | None = None
) -> TrendReport:
    """
    Do the means of F_{l,m} approach log W.

    :param dists: distributions of one l at increasing m
    :param W: growth rate W_l; None makes the check UNAVAILABLE
    :param thresholds: verdict thresholds
    :raises ValueError: if W is not positive or no distributions are given
    :return: the report, ``limit`` being the extrapolated mean
    """
    thresholds = thresholds or TrendThresholds()
    dists = sorted(dists, key=lambda F: F.m)
    l = dists[0].l if dists else None
    if W is None:
        return _unavailable("v6", l, thresholds, MEAN_ESTIMATOR)
    if not dists:
        raise ValueError("check_version6 needs at least one distribution.")
    with mp.workprec(HARNESS_BITS):
        W = mp.mpf(W)
        if not W > 0:
            raise ValueError(f"W must be positive, got {W}.")
        target = mp.log(W)
        ms = [F.m for F in dists]
        means = [mean(F) for F in dists]
        deviations = [abs(x - target) for x in means]
        details = {"log_W": mp.nstr(target, 20), "last_deviation": mp.nstr(deviations[-1], 5)}
        limit = means[-1]
        if all(d <= thresholds.rate_tol for d in deviations):
            verdict = Verdict.SUPPORTED
        elif len(dists) < 2:
            verdict = Verdict.INCONCLUSIVE
        else:
            limit, _ = accelerate(richardson(ms, means))
            error = abs(limit - target)
            slope = float(np.polyfit([float(m) for m in ms], [float(x) for x in means], 1)[0]) if len(ms) >= 3 else 0.0
            details.update({"limit_error": mp.nstr(error, 5), "slope": f"{slope:.6g}"})
            if error <= thresholds.rate_tol:
                verdict = Verdict.SUPPORTED
            elif error > thresholds.contradict_tol or abs(slope) > thresholds.drift_tol:
                verdict = Verdict.CONTRADICTED
            else:
                verdict = Verdict.INCONCLUSIVE
    return TrendReport("v6", tuple(zip(ms, means, strict=True)), MEAN_ESTIMATOR, verdict, l, limit, thresholds, details)


def _growth_report(
    check_id: str, sequence: list[tuple[int, object]], sign: int, l: int | None, thresholds: TrendThresholds
) -> TrendReport:
    checkpoints = dyadic_checkpoints([m for m, _ in sequence])
    values = dict(sequence)
    window = checkpoints[-3:]
    details = {"checkpoints": ",".join(str(m) for m in window)}
    if len(window) < 3:
        verdict = Verdict.INCONCLUSIVE
    else:
        v0, v1, v2 = (sign * values[m] for m in window)
        if v1 - v0 >= thresholds.delta and v2 - v1 >= thresholds.delta:
            verdict = Verdict.SUPPORTED
        elif v2 <= v0:
            verdict = Verdict.CONTRADICTED
        else:
            verdict = Verdict.INCONCLUSIVE
    return TrendReport(check_id, tuple(sequence), CHECKPOINT_ESTIMATOR, verdict, l, None, thresholds, details)


def check_2A_2B(
    log_spectra: Sequence[LogSpectrum], thresholds: TrendThresholds | None = None
) -> tuple[TrendReport, TrendReport]:
    """
    Growth of the largest point (2A) and of minus the smallest point (2B).

    Over the last three dyadic checkpoints (the last three m when fewer than three powers of
    two are present) both steps must grow by at least ``delta`` for SUPPORTED; no growth
    across the window is CONTRADICTED.

    :param log_spectra: log-spectra of one l
    :param thresholds: verdict thresholds
    :return: reports for 2A and 2B
    """
    thresholds = thresholds or TrendThresholds()
    spectra = sorted((ls for ls in log_spectra if ls.points), key=lambda ls: ls.m)
    l = spectra[0].l if spectra else None
    upper = [(ls.m, ls.points[-1]) for ls in spectra]
    lower = [(ls.m, ls.points[0]) for ls in spectra]
    return _growth_report("2A", upper, 1, l, thresholds), _growth_report("2B", lower, -1, l, thresholds)


def _levels(dists: Sequence[StepDistribution]) -> dict[int, StepDistribution]:
    by_m: dict[int, StepDistribution] = {}
    for F in dists:
        by_m[F.m] = F
    return dict(sorted(by_m.items()))


def check_2C(dists: Sequence[StepDistribution], thresholds: TrendThresholds | None = None) -> TrendReport:
    """
    Do F_{l,m} and F_{l,2m} approach each other as m doubles.

    :param dists: distributions of one l
    :param thresholds: verdict thresholds
    :raises ValueError: if fewer than three levels m with 2m present are given
    :return: the report over the sequence sup_distance(F_{l,m}, F_{l,2m})
    """
    thresholds = thresholds or TrendThresholds()
    by_m = _levels(dists)
    levels = [m for m in by_m if 2 * m in by_m]
    if len(levels) < 3:
        raise ValueError(f"check_2C needs distributions at m and 2m for 3 levels, got {len(levels)}.")
    sequence = tuple((m, sup_distance(by_m[m], by_m[2 * m])) for m in levels)
    verdict = monotone_verdict([d for _, d in sequence])
    l = by_m[levels[0]].l
    details = {"distances": ",".join(str(d) for _, d in sequence)}
    return TrendReport("2C", sequence, DISTANCE_ESTIMATOR, verdict, l, None, thresholds, details)


def check_2D(dists: Sequence[StepDistribution], thresholds: TrendThresholds | None = None) -> TrendReport:
    """
    Do both tail sums grow in modulus across the levels.

    Each tail gets its own verdict in ``details``: SUPPORTED when it grows at every level,
    INCONCLUSIVE otherwise. The report is SUPPORTED when both tails are.

    :param dists: distributions of one l
    :param thresholds: verdict thresholds
    :raises ValueError: if fewer than three levels are given
    :return: the report; its sequence holds |neg| + pos
    """
    thresholds = thresholds or TrendThresholds()
    by_m = _levels(dists)
    levels = dyadic_checkpoints(list(by_m))
    if len(levels) < 3:
        raise ValueError(f"check_2D needs at least 3 levels, got {len(levels)}.")
    tails = [tail_sums(by_m[m]) for m in levels]
    with mp.workprec(HARNESS_BITS):
        neg = [abs(t.neg) for t in tails]
        pos = [t.pos for t in tails]
        totals = [a + b for a, b in zip(neg, pos, strict=True)]
    parts = {}
    for name, values in (("neg", neg), ("pos", pos)):
        part = monotone_verdict(values, decreasing=False)
        parts[name] = Verdict.SUPPORTED if part == Verdict.SUPPORTED else Verdict.INCONCLUSIVE
    verdict = Verdict.SUPPORTED if all(v == Verdict.SUPPORTED for v in parts.values()) else Verdict.INCONCLUSIVE
    details = {
        "neg": parts["neg"].value,
        "pos": parts["pos"].value,
        "neg_values": ",".join(mp.nstr(x, 15) for x in neg),
        "pos_values": ",".join(mp.nstr(x, 15) for x in pos),
    }
    l = by_m[levels[0]].l
    return TrendReport("2D", tuple(zip(levels, totals, strict=True)), TAIL_ESTIMATOR, verdict, l, None, thresholds, details)


def check_2E(dists_by_l: Mapping[int, Sequence[StepDistribution]], thresholds: TrendThresholds | None = None) -> TrendReport:
    """
    Do the distributions of different l approach each other as m grows.

    Distances are taken for every pair of l at every m present for all l. A pair is
    SUPPORTED when its distance shrinks along the m grid (or stays zero) and CONTRADICTED
    when it grows at every step.

    :param dists_by_l: distributions per l
    :param thresholds: verdict thresholds
    :raises ValueError: if fewer than two l or fewer than two common m are given
    :return: the report; its sequence holds the largest pairwise distance per m
    """
    thresholds = thresholds or TrendThresholds()
    if len(dists_by_l) < 2:
        raise ValueError(f"check_2E needs at least 2 values of l, got {len(dists_by_l)}.")
    levels = {l: _levels(dists) for l, dists in dists_by_l.items()}
    common = sorted(set.intersection(*(set(by_m) for by_m in levels.values())))
    if len(common) < 2:
        raise ValueError("check_2E needs at least 2 values of m common to all l.")

    details = {}
    pair_verdicts = []
    for a, b in itertools.combinations(sorted(levels), 2):
        distances = [sup_distance(levels[a][m], levels[b][m]) for m in common]
        verdict = monotone_verdict(distances)
        pair_verdicts.append(verdict)
        details[f"{a}-{b}"] = f"{verdict.value}: " + ",".join(str(d) for d in distances)
    if Verdict.CONTRADICTED in pair_verdicts:
        overall = Verdict.CONTRADICTED
    elif all(v == Verdict.SUPPORTED for v in pair_verdicts):
        overall = Verdict.SUPPORTED
    else:
        overall = Verdict.INCONCLUSIVE
    sequence = tuple(
        (m, max(sup_distance(levels[a][m], levels[b][m]) for a, b in itertools.combinations(sorted(levels), 2)))
        for m in common
    )
    return TrendReport("2E", sequence, DISTANCE_ESTIMATOR, overall, None, None, thresholds, details)
