from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from mpmath import mp

from zeta_spectra.file import jsonl
from zeta_spectra.mpnum import BigReal

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    """Outcome of a numerical check; never a proof."""

    SUPPORTED = "SUPPORTED"
    INCONCLUSIVE = "INCONCLUSIVE"
    CONTRADICTED = "CONTRADICTED"
    UNAVAILABLE = "UNAVAILABLE"


@dataclass(frozen=True)
class TrendThresholds:
    """
    Thresholds every verdict is derived from.

    ``rate_tol`` is the relative agreement that counts as a match, ``contradict_tol`` the
    relative mismatch that counts as a contradiction, ``drift_tol`` the largest tolerated
    slope per step of m, ``delta`` the minimal growth between dyadic checkpoints and
    ``identity_digits`` the digits finite-m identities must hold to.
    """

    rate_tol: float = 1e-3
    contradict_tol: float = 1e-2
    drift_tol: float = 0.01
    delta: float = 0.5
    identity_digits: int = 25

    def __post_init__(self):
        """Validate the thresholds."""
        if not 0 < self.rate_tol <= self.contradict_tol:
            raise ValueError(f"Need 0 < rate_tol <= contradict_tol, got {self.rate_tol} and {self.contradict_tol}.")
        if self.drift_tol <= 0 or self.delta <= 0 or self.identity_digits < 1:
            raise ValueError("drift_tol, delta and identity_digits must be positive.")

    def to_dict(self) -> dict[str, Any]:
        """JSON form."""
        return {
            "rate_tol": self.rate_tol,
            "contradict_tol": self.contradict_tol,
            "drift_tol": self.drift_tol,
            "delta": self.delta,
            "identity_digits": self.identity_digits,
        }


@dataclass(frozen=True)
class TrendReport:
    """A sequence over m, how it was extrapolated and the resulting verdict."""

    check_id: str
    sequence: tuple[tuple[int, BigReal], ...]
    estimator_id: str
    verdict: Verdict
    l: int | None = None
    limit: BigReal | None = None
    thresholds: TrendThresholds = field(default_factory=TrendThresholds)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def m_grid(self) -> list[int]:
        """The m of every sequence entry."""
        return [m for m, _ in self.sequence]


@dataclass(frozen=True)
class Reference:
    """Reference constants of one l as decimal strings."""

    W: str | None = None
    R: str | None = None
    note: str = ""


class ReferenceConstants:
    """
    Per-l reference values W_l and R_l.

    Read from JSON ``{"1": {"W": "<decimal>", "R": "<decimal>", "note": "<provenance>"}}``.
    """

    def __init__(self, entries: dict[int, Reference] | None = None):
        """
        Hold validated reference values.

        :param entries: reference per l
        :raises ValueError: if some W_l is not a positive number
        """
        self.entries = dict(entries or {})
        for l, reference in self.entries.items():
            if reference.W is not None:
                with mp.workprec(128):
                    if not mp.mpf(reference.W) > 0:
                        raise ValueError(f"W_{l} must be positive, got {reference.W}.")

    def W(self, l: int, prec: int = 256) -> BigReal | None:
        """W_l at the given precision, None when not configured."""
        reference = self.entries.get(l)
        if reference is None or reference.W is None:
            return None
        with mp.workprec(prec):
            return mp.mpf(reference.W)

    def R(self, l: int, prec: int = 256) -> BigReal | None:
        """R_l at the given precision, None when not configured."""
        reference = self.entries.get(l)
        if reference is None or reference.R is None:
            return None
        with mp.workprec(prec):
            return mp.mpf(reference.R)

    @classmethod
    def from_dict(cls, document: dict[str, Any]) -> ReferenceConstants:
        """Build from the JSON mapping."""
        entries = {}
        for key, value in document.items():
            entries[int(key)] = Reference(
                W=None if value.get("W") is None else str(value["W"]),
                R=None if value.get("R") is None else str(value["R"]),
                note=str(value.get("note", "")),
            )
        return cls(entries)

    @classmethod
    def load(cls, path: str | Path) -> ReferenceConstants:
        """Read reference constants from a JSON file."""
        constants = cls.from_dict(jsonl.read_json(path))
        logger.info(f"Loaded reference constants for l in {sorted(constants.entries)} from {path}.")
        return constants
