"""Analytic functions whose Taylor coefficients can be extracted on a Cauchy ring."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

from mpmath import mp

from zeta_spectra.errors import UnknownGeneratorError
from zeta_spectra.mpnum import BigComplex

from .zeta import zeta_em

logger = logging.getLogger(__name__)

ZETA_STAR = "zeta-star"

# location of the first trivial zero, where the gamma factor of the completed zeta has a pole
_FIRST_GAMMA_POLE = -2


@dataclass(frozen=True)
class Generator:
    """An analytic function with at most one simple pole on the real axis."""

    generator_id: str
    evaluate: Callable[[BigComplex, int], BigComplex]
    pole: int | None = None
    residue: int | None = None


def _zeta(s: BigComplex, prec: int) -> BigComplex:
    return zeta_em(s, prec)


def _geometric_kernel(s: BigComplex, prec: int) -> BigComplex:
    return 1 / (1 - s)


def _exp(s: BigComplex, prec: int) -> BigComplex:
    return mp.exp(s)


GENERATORS: dict[str, Generator] = {
    ZETA_STAR: Generator(ZETA_STAR, _zeta, pole=1, residue=1),
    "one-over-one-minus-z": Generator("one-over-one-minus-z", _geometric_kernel, pole=1, residue=-1),
    "exp": Generator("exp", _exp),
}

POLE_REMOVALS = ("none", "s-1", "xi")


def get_generator(generator_id: str) -> Generator:
    """
    Look up a registered generator.

    :param generator_id: registry key
    :raises UnknownGeneratorError: if the id is not registered
    :return: the generator
    """
    try:
        return GENERATORS[generator_id]
    except KeyError:
        raise UnknownGeneratorError(
            f"Unknown generator '{generator_id}'. Known generators: {', '.join(sorted(GENERATORS))}."
        ) from None


def _check_removal(generator: Generator, pole_removal: str):
    if pole_removal not in POLE_REMOVALS:
        raise UnknownGeneratorError(
            f"Unknown pole removal '{pole_removal}'. Known tags: {', '.join(POLE_REMOVALS)}."
        )
    if pole_removal == "xi" and generator.generator_id != ZETA_STAR:
        raise UnknownGeneratorError(f"Pole removal 'xi' only applies to {ZETA_STAR}, not {generator.generator_id}.")


def analyticity_radius(generator_id: str, pole_removal: str, s0: BigComplex):
    """
    Radius of the disc around ``s0`` on which the (pole-removed) function is analytic.

    :param generator_id: registry key
    :param pole_removal: one of ``none``, ``s-1`` and ``xi``
    :param s0: expansion point
    :return: the radius, ``mp.inf`` for entire functions
    """
    generator = get_generator(generator_id)
    _check_removal(generator, pole_removal)
    if pole_removal == "xi":
        return abs(s0 - _FIRST_GAMMA_POLE)
    if generator.pole is None or pole_removal == "s-1":
        return mp.inf
    return abs(s0 - generator.pole)


def make_function(generator_id: str, pole_removal: str, prec: int) -> Callable[[BigComplex], BigComplex]:
    """
    Build the function sampled on the quadrature ring.

    ``s-1`` multiplies by (s - 1) and returns the residue at the pole itself; ``xi`` builds the
    completed zeta (s - 1) pi^(-s/2) Gamma(1 + s/2) zeta(s), which is 1/2 at s = 1.

    :param generator_id: registry key
    :param pole_removal: one of ``none``, ``s-1`` and ``xi``
    :param prec: precision handed to the generator
    :return: a callable of one complex argument
    """
    generator = get_generator(generator_id)
    _check_removal(generator, pole_removal)

    def plain(s: BigComplex) -> BigComplex:
        return generator.evaluate(s, prec)

    def times_s_minus_one(s: BigComplex) -> BigComplex:
        if generator.pole is not None and s == generator.pole:
            return mp.mpc(generator.residue)
        return (s - 1) * generator.evaluate(s, prec)

    def completed(s: BigComplex) -> BigComplex:
        if s == 1:
            return mp.mpc(mp.mpf(1) / 2)
        return (s - 1) * mp.power(mp.pi, -s / 2) * mp.gamma(1 + s / 2) * generator.evaluate(s, prec)

    return {"none": plain, "s-1": times_s_minus_one, "xi": completed}[pole_removal]
