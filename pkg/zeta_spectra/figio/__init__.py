"""SVG figures, artifact manifests and the command line interface."""

import logging

from .config import FigureConfig
from .manifest import Manifest, build_manifest, file_sha256, verify_manifest, write_manifest
from .render import render_distribution, render_spectra

__all__ = [
    "FigureConfig",
    "Manifest",
    "build_manifest",
    "file_sha256",
    "render_distribution",
    "render_spectra",
    "verify_manifest",
    "write_manifest",
]

logger = logging.getLogger(__name__)
