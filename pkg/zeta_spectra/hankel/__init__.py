"""Signed Hankel matrices M_{l,m}(f) and the Toeplitz determinant relation."""

import logging

from .matrices import HankelSpec, SignedHankel, build_M, hankel_core, raw_toeplitz, sign_prefactor
from .relation import DetRelationReport, column_reversal_sign, det_relation_check

__all__ = [
    "DetRelationReport",
    "HankelSpec",
    "SignedHankel",
    "build_M",
    "column_reversal_sign",
    "det_relation_check",
    "hankel_core",
    "raw_toeplitz",
    "sign_prefactor",
]

logger = logging.getLogger(__name__)
