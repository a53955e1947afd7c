"""Taylor coefficient streams of builtin families and analytic generators."""

import logging

from .cache import CoeffCache, default_cache_dir
from .generators import GENERATORS, POLE_REMOVALS, ZETA_STAR, Generator, analyticity_radius, get_generator, make_function
from .spec import BUILTIN_FAMILIES, FunctionSpec
from .stream import CoeffStream, extend, generate, stream_to_frame, theta
from .zeta import zeta_em

__all__ = [
    "BUILTIN_FAMILIES",
    "GENERATORS",
    "POLE_REMOVALS",
    "ZETA_STAR",
    "CoeffCache",
    "CoeffStream",
    "FunctionSpec",
    "Generator",
    "analyticity_radius",
    "default_cache_dir",
    "extend",
    "generate",
    "get_generator",
    "make_function",
    "stream_to_frame",
    "theta",
    "zeta_em",
]

logger = logging.getLogger(__name__)
