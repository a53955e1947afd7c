"""Numerical checks of the determinant, eigenvalue and distribution reformulations."""

import logging

from .checks import (
    check_2A_2B,
    check_2C,
    check_2D,
    check_2E,
    check_version2,
    check_version3,
    check_version5,
    check_version6,
    dyadic_checkpoints,
    monotone_verdict,
)
from .estimators import CONSTANT_ESTIMATOR, RATE_ESTIMATOR, aitken, est_constant, est_rate, richardson
from .report import CHECK_IDS, report_to_json, run_checks, worst_verdict
from .types import Reference, ReferenceConstants, TrendReport, TrendThresholds, Verdict

__all__ = [
    "CHECK_IDS",
    "CONSTANT_ESTIMATOR",
    "RATE_ESTIMATOR",
    "Reference",
    "ReferenceConstants",
    "TrendReport",
    "TrendThresholds",
    "Verdict",
    "aitken",
    "check_2A_2B",
    "check_2C",
    "check_2D",
    "check_2E",
    "check_version2",
    "check_version3",
    "check_version5",
    "check_version6",
    "dyadic_checkpoints",
    "est_constant",
    "est_rate",
    "monotone_verdict",
    "report_to_json",
    "richardson",
    "run_checks",
    "worst_verdict",
]

logger = logging.getLogger(__name__)
