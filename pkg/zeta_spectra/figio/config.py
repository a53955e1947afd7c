from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from zeta_spectra.spectra import SplitPolicy


def _check_range(name: str, value: tuple[float, float] | None):
    if value is None:
        return
    lo, hi = value
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise ValueError(f"{name} must be a finite increasing pair, got {value}.")


@dataclass(frozen=True)
class FigureConfig:
    """Size, axis ranges and styling of an SVG figure; ranges of None are chosen automatically."""

    width: int = 1200
    height: int = 800
    dpi: int = 100
    x_range: tuple[float, float] | None = None
    y_range: tuple[float, float] | None = None
    marker_size: float = 4.0
    output_path: Path | None = None
    split_policy: SplitPolicy | None = None

    def __post_init__(self):
        """Validate dimensions and ranges."""
        if self.width <= 0 or self.height <= 0 or self.dpi <= 0:
            raise ValueError(f"Figure dimensions must be positive, got {self.width}x{self.height} at {self.dpi} dpi.")
        if self.marker_size <= 0:
            raise ValueError(f"Marker size must be positive, got {self.marker_size}.")
        _check_range("x_range", self.x_range)
        _check_range("y_range", self.y_range)

    @property
    def figsize(self) -> tuple[float, float]:
        """Size in inches for matplotlib."""
        return self.width / self.dpi, self.height / self.dpi
