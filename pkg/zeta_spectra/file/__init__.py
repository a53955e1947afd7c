"""Initialize logger."""

import logging

from . import csv, jsonl

__all__ = ["csv", "jsonl"]

logger = logging.getLogger(__name__)
