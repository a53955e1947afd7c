from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from mpmath import mp

from zeta_spectra.mpnum import BigReal, from_decimal, to_decimal

SPLIT_KINDS = ("largest-gap", "threshold", "quantile")


@dataclass(frozen=True)
class SpectrumRecord:
    """
    Eigenvalues mu_{l,m,1..m} of M_{l,m}(f), ascending.

    ``determinant`` is det(M_{l,m}) at ``precision_used``; eigenvalues with modulus at most
    ``zero_threshold`` are indistinguishable from zero at that precision. ``digits_tried`` lists the
    digit targets of successive solves, the last one being the accepted solve.
    """

    l: int
    m: int
    function_id: str
    eigenvalues: tuple[BigReal, ...]
    precision_used: int
    target_digits: int
    determinant: BigReal = mp.zero
    zero_threshold: BigReal = mp.zero
    digits_tried: tuple[int, ...] = ()

    def __post_init__(self):
        """Check that there are m eigenvalues."""
        if len(self.eigenvalues) != self.m:
            raise ValueError(f"Record for m={self.m} holds {len(self.eigenvalues)} eigenvalues.")

    def is_zero(self, mu: BigReal) -> bool:
        """Whether an eigenvalue counts as zero."""
        return abs(mu) <= self.zero_threshold

    def to_dict(self) -> dict[str, Any]:
        """JSON form with decimal strings."""
        bits = self.precision_used
        return {
            "l": self.l,
            "m": self.m,
            "function_id": self.function_id,
            "eigenvalues": [to_decimal(mu, bits) for mu in self.eigenvalues],
            "precision_used": bits,
            "target_digits": self.target_digits,
            "determinant": to_decimal(self.determinant, bits),
            "zero_threshold": to_decimal(self.zero_threshold, bits),
            "digits_tried": list(self.digits_tried),
        }

    @classmethod
    def from_dict(cls, document: dict[str, Any]) -> SpectrumRecord:
        """Inverse of :meth:`to_dict`."""
        bits = int(document["precision_used"])
        return cls(
            l=int(document["l"]),
            m=int(document["m"]),
            function_id=document["function_id"],
            eigenvalues=tuple(from_decimal(x, bits) for x in document["eigenvalues"]),
            precision_used=bits,
            target_digits=int(document["target_digits"]),
            determinant=from_decimal(document["determinant"], bits),
            zero_threshold=from_decimal(document["zero_threshold"], bits),
            digits_tried=tuple(int(d) for d in document.get("digits_tried", ())),
        )


@dataclass(frozen=True)
class LogSpectrum:
    """Sorted ln|mu| of the nonzero eigenvalues; zeros are only counted."""

    l: int
    m: int
    points: tuple[BigReal, ...]
    zero_count: int = 0
    precision_bits: int = 256

    def __post_init__(self):
        """Check that points and zeros account for all m eigenvalues."""
        if len(self.points) + self.zero_count != self.m:
            raise ValueError(
                f"{len(self.points)} points and {self.zero_count} zeros do not add up to m={self.m}."
            )


@dataclass(frozen=True)
class SplitPolicy:
    """
    Rule separating electrons (lower points) from trains (upper points).

    Text forms: ``largest-gap``, ``threshold:C`` and ``quantile:Q`` with 0 <= Q <= 1.
    """

    kind: str = "largest-gap"
    value: str | None = None

    def __post_init__(self):
        """Validate kind and parameter."""
        if self.kind not in SPLIT_KINDS:
            raise ValueError(f"Unknown split policy '{self.kind}'. Known policies: {', '.join(SPLIT_KINDS)}.")
        if self.kind == "largest-gap":
            if self.value is not None:
                raise ValueError("Split policy 'largest-gap' takes no parameter.")
            return
        if self.value is None:
            raise ValueError(f"Split policy '{self.kind}' needs a parameter.")
        try:
            number = float(self.value)
        except ValueError:
            raise ValueError(f"Parameter of split policy '{self.kind}' is not a number: {self.value}") from None
        if self.kind == "quantile" and not 0 <= number <= 1:
            raise ValueError(f"Quantile must lie in [0, 1], got {self.value}.")

    @property
    def policy_id(self) -> str:
        """Text form of the policy."""
        return self.kind if self.value is None else f"{self.kind}:{self.value}"

    @classmethod
    def parse(cls, text: str) -> SplitPolicy:
        """
        Parse the text form of a split policy.

        :param text: ``largest-gap``, ``threshold:C`` or ``quantile:Q``
        :return: the policy
        """
        kind, _, value = text.strip().partition(":")
        return cls(kind, value.strip() or None)


@dataclass(frozen=True)
class SplitSpectrum:
    """Electrons below the cut, trains above it."""

    electrons: tuple[BigReal, ...]
    trains: tuple[BigReal, ...]
    policy_id: str
    cut: BigReal | None = None


@dataclass(frozen=True)
class PairingStats:
    """Median gap inside consecutive pairs of train points against the median gap between pairs."""

    intra_median: BigReal
    inter_median: BigReal
    ratio: BigReal


@dataclass(frozen=True)
class SweepResult:
    """Records of a sweep in m order, and the error message of every m that failed."""

    records: tuple[SpectrumRecord, ...]
    failures: dict[int, str] = field(default_factory=dict)

    @property
    def ms(self) -> list[int]:
        """The m of every successful record."""
        return [record.m for record in self.records]

    def by_m(self, m: int) -> SpectrumRecord:
        """
        Record for one m.

        :param m: dimension
        :raises KeyError: if the sweep holds no record for m
        :return: the record
        """
        for record in self.records:
            if record.m == m:
                return record
        raise KeyError(f"No spectrum for m={m}" + (f": {self.failures[m]}" if m in self.failures else "."))
