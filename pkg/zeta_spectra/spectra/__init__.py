"""mu-spectra and logarithmic mu-spectra of the signed Hankel matrices."""

import logging

from .compute import compute_spectrum, log_spectrum, pairing_stats, split
from .sweep import SpectrumCache, records_to_frame, sweep
from .types import LogSpectrum, PairingStats, SpectrumRecord, SplitPolicy, SplitSpectrum, SweepResult

__all__ = [
    "LogSpectrum",
    "PairingStats",
    "SpectrumCache",
    "SpectrumRecord",
    "SplitPolicy",
    "SplitSpectrum",
    "SweepResult",
    "compute_spectrum",
    "log_spectrum",
    "pairing_stats",
    "records_to_frame",
    "split",
    "sweep",
]

logger = logging.getLogger(__name__)
