from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from typing import Any

from zeta_spectra.dist import StepDistribution, from_log_spectrum
from zeta_spectra.mpnum import to_decimal
from zeta_spectra.spectra import LogSpectrum, SpectrumRecord, log_spectrum

from .checks import check_2A_2B, check_2C, check_2D, check_2E, check_version2, check_version3, check_version5, check_version6
from .types import ReferenceConstants, TrendReport, TrendThresholds, Verdict

logger = logging.getLogger(__name__)

CHECK_IDS = ("2A", "2B", "2C", "2D", "2E", "v2", "v3", "v5", "v6")
REPORT_BITS = 128


def _text(value: Any) -> str | None:
    if value is None:
        return None
    if isinstance(value, Fraction):
        return str(value)
    return to_decimal(value, REPORT_BITS)


def report_to_json(report: TrendReport) -> dict[str, Any]:
    """
    JSON form of a report.

    :param report: trend report
    :return: mapping with check id, l, m grid, sequence values as decimal strings (exact
        fractions for distances), estimator id, thresholds and verdict
    """
    return {
        "check_id": report.check_id,
        "l": report.l,
        "m_grid": report.m_grid,
        "sequence": [{"m": m, "value": _text(value)} for m, value in report.sequence],
        "estimator_id": report.estimator_id,
        "limit": _text(report.limit),
        "thresholds": report.thresholds.to_dict(),
        "verdict": report.verdict.value,
        "details": dict(sorted(report.details.items())),
    }


def worst_verdict(reports: Iterable[TrendReport]) -> Verdict:
    """CONTRADICTED if any report is, else INCONCLUSIVE if any is, else SUPPORTED (UNAVAILABLE when all are)."""
    verdicts = [report.verdict for report in reports]
    for verdict in (Verdict.CONTRADICTED, Verdict.INCONCLUSIVE):
        if verdict in verdicts:
            return verdict
    if verdicts and all(v == Verdict.UNAVAILABLE for v in verdicts):
        return Verdict.UNAVAILABLE
    return Verdict.SUPPORTED


def run_checks(
    check_ids: Sequence[str],
    records_by_l: Mapping[int, Sequence[SpectrumRecord]],
    refs: ReferenceConstants | None = None,
    thresholds: TrendThresholds | None = None,
) -> list[TrendReport]:
    """
    Run checks over sweep outputs.

    Every check except 2E runs once per l; 2E compares all l with each other.

    :param check_ids: ids out of ``CHECK_IDS``
    :param records_by_l: spectrum records per l
    :param refs: reference constants for v2, v3, v5 and v6
    :param thresholds: verdict thresholds
    :raises ValueError: if an id is unknown
    :return: reports in the order of ``check_ids`` and l
    """
    unknown = [c for c in check_ids if c not in CHECK_IDS]
    if unknown:
        raise ValueError(f"Unknown check id(s) {', '.join(unknown)}. Known ids: {', '.join(CHECK_IDS)}.")
    thresholds = thresholds or TrendThresholds()
    refs = refs or ReferenceConstants()
    ls = sorted(records_by_l)
    log_spectra: dict[int, list[LogSpectrum]] = {
        l: [log_spectrum(record) for record in sorted(records_by_l[l], key=lambda r: r.m)] for l in ls
    }
    dists: dict[int, list[StepDistribution]] = {l: [from_log_spectrum(s) for s in log_spectra[l]] for l in ls}

    reports = []
    for check_id in check_ids:
        if check_id == "2E":
            reports.append(check_2E(dists, thresholds))
            continue
        for l in ls:
            if check_id in ("2A", "2B"):
                report_2a, report_2b = check_2A_2B(log_spectra[l], thresholds)
                reports.append(report_2a if check_id == "2A" else report_2b)
            elif check_id == "2C":
                reports.append(check_2C(dists[l], thresholds))
            elif check_id == "2D":
                reports.append(check_2D(dists[l], thresholds))
            elif check_id == "v2":
                reports.append(check_version2(records_by_l[l], refs, l, thresholds))
            elif check_id == "v3":
                reports.append(check_version3(records_by_l[l], refs, l, thresholds))
            elif check_id == "v5":
                reports.append(check_version5(records_by_l[l], refs.W(l), thresholds))
            else:
                reports.append(check_version6(dists[l], refs.W(l), thresholds))
    for report in reports:
        logger.info(f"Check {report.check_id} (l={report.l}): {report.verdict.value}")
    return reports
