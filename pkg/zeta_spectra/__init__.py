"""zeta_spectra: Hankel determinants and eigenvalue spectra built from Taylor coefficients of zeta-like functions."""

from datetime import datetime

__author__ = """The zeta_spectra development team"""
__copyright__ = f"Copyright {datetime.now():%Y}, The zeta_spectra development team"
__license__ = "MIT"

# Dynamically read version from package metadata at runtime
try:
    from importlib.metadata import version as get_version

    __version__ = get_version("zeta_spectra")
except Exception:
    __version__ = "0.0.0.dev0"

import logging
import logging.handlers
import sys

CONSOLE_LOG_LEVEL = logging.INFO
logger = logging.getLogger(__name__)
logger.setLevel(logging.DEBUG)


class _InfoWarningFilter(logging.Filter):
    def filter(self, record):
        return CONSOLE_LOG_LEVEL <= record.levelno <= logging.WARNING


if len(logger.handlers) == 0:
    formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(name)s::%(funcName)s %(message)s")
    # add console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.addFilter(_InfoWarningFilter())
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # add error handler
    error_handler = logging.StreamHandler(sys.stderr)
    error_handler.setLevel(logging.ERROR)
    error_handler.setFormatter(formatter)
    logger.addHandler(error_handler)
else:
    logger.info("Logger already initialized. Resuming normal operation.")

from zeta_spectra import coeffs, dist, file, harness, hankel, mpnum, spectra  # noqa: E402

__all__ = ["__version__", "coeffs", "dist", "file", "hankel", "harness", "mpnum", "spectra"]
