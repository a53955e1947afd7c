from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import TYPE_CHECKING

import pandas as pd
from mpmath import mp

from zeta_spectra.errors import CacheCorruptionError, IndexBeyondStreamError, QuadratureError
from zeta_spectra.mpnum import MIN_PRECISION, BigComplex, BigReal, to_decimal

from .generators import make_function
from .spec import FunctionSpec

if TYPE_CHECKING:
    from .cache import CoeffCache

logger = logging.getLogger(__name__)

QUADRATURE_GUARD_BITS = 64
NODES_PER_COEFFICIENT = 8
MAX_NODE_DOUBLINGS = 6


@dataclass(frozen=True)
class CoeffStream:
    """
    Taylor coefficients theta_0..theta_N of a function spec.

    ``error_scale`` is the largest modulus of the sampled function on the quadrature ring
    (zero for closed forms); theta_k is only resolved to that scale divided by r^k.
    """

    spec: FunctionSpec
    values: tuple[BigReal, ...]
    precision_bits: int
    provenance: str = ""
    error_scale: BigReal = mp.zero

    @property
    def max_index(self) -> int:
        """Largest available index N."""
        return len(self.values) - 1

    def theta(self, k: int) -> BigReal:
        """Shortcut for :func:`theta`."""
        return theta(self, k)

    def tolerance(self, k: int, bits: int) -> BigReal:
        """
        Agreement tolerance of theta_k at ``bits`` bits.

        :param k: coefficient index
        :param bits: number of bits that must agree
        :return: 2^(-bits) times the larger of |theta_k| and the ring error scale at k
        """
        with mp.workprec(self.precision_bits):
            floor = mp.zero
            if self.error_scale:
                floor = self.error_scale / self.spec.radius(self.precision_bits) ** k
            return mp.ldexp(max(abs(self.values[k]), floor), -bits)

    def truncated(self, max_index: int) -> CoeffStream:
        """Copy holding theta_0..theta_max_index only."""
        return CoeffStream(self.spec, self.values[: max_index + 1], self.precision_bits, self.provenance, self.error_scale)


def theta(stream: CoeffStream, k: int) -> BigReal:
    """
    Coefficient theta_k of a stream; zero for every negative index.

    :param stream: coefficient stream
    :param k: index
    :raises IndexBeyondStreamError: if ``k`` exceeds the stream's max index
    :return: theta_k
    """
    if k < 0:
        return mp.zero
    if k > stream.max_index:
        raise IndexBeyondStreamError(k, stream.max_index)
    return stream.values[k]


def _closed_form(spec: FunctionSpec, n: int) -> list[BigReal]:
    """Builtin coefficients, evaluated at the caller's precision."""
    if spec.name == "geometric":
        r = mp.mpf(spec.params[0])
        return [r**k for k in range(n + 1)]
    if spec.name == "exponential":
        return [1 / mp.factorial(k) for k in range(n + 1)]
    if spec.name == "rational2":
        a, b = (mp.mpf(p) for p in spec.params)
        if a == b:
            return [(k + 1) * a**k for k in range(n + 1)]
        return [(a ** (k + 1) - b ** (k + 1)) / (a - b) for k in range(n + 1)]
    if spec.name == "catalan":
        return [mp.mpf(math.comb(2 * k, k) // (k + 1)) for k in range(n + 1)]
    if spec.name == "moments":
        if n >= len(spec.params):
            raise ValueError(f"Only {len(spec.params)} moments given, cannot provide theta_{n}.")
        return [mp.mpf(p) for p in spec.params[: n + 1]]
    raise ValueError(f"Unknown builtin family '{spec.name}'.")


def _ring_samples(
    function: Callable[[BigComplex], BigComplex], s0: BigComplex, radius: BigReal, nodes: int, previous: list | None
) -> list[BigComplex]:
    """f(s0 + r e^(2 pi i j / nodes)) for all j, reusing the even nodes of a half-size ring."""
    samples: list[BigComplex] = [mp.zero] * nodes
    for j in range(nodes):
        if previous is not None and j % 2 == 0:
            samples[j] = previous[j // 2]
        else:
            samples[j] = function(s0 + radius * mp.expjpi(mp.mpf(2 * j) / nodes))
    return samples


def _ring_coefficients(samples: list[BigComplex], radius: BigReal, n: int) -> list[BigReal]:
    """Trapezoidal rule for the Cauchy integral of theta_0..theta_n."""
    nodes = len(samples)
    roots = [mp.expjpi(mp.mpf(-2 * t) / nodes) for t in range(nodes)]
    coefficients = []
    scale = mp.one
    for k in range(n + 1):
        total = mp.fsum(samples[j] * roots[(j * k) % nodes] for j in range(nodes))
        coefficients.append(mp.re(total) / (nodes * scale))
        scale *= radius
    return coefficients


def _cauchy_coefficients(spec: FunctionSpec, n: int, prec: int) -> tuple[list[BigReal], BigReal]:
    wp = prec + QUADRATURE_GUARD_BITS
    with mp.workprec(wp):
        function = make_function(spec.generator_id, spec.pole_removal, wp)
        s0 = spec.s0(wp)
        radius = spec.radius(wp)
        nodes = NODES_PER_COEFFICIENT * (n + 1)
        samples = _ring_samples(function, s0, radius, nodes, None)
        previous = _ring_coefficients(samples, radius, n)
        for _ in range(MAX_NODE_DOUBLINGS):
            nodes *= 2
            samples = _ring_samples(function, s0, radius, nodes, samples)
            current = _ring_coefficients(samples, radius, n)
            error_scale = max(abs(x) for x in samples)
            failing = None
            for k in range(n + 1):
                floor = error_scale / radius**k
                if abs(current[k] - previous[k]) > mp.ldexp(max(abs(current[k]), floor), -(prec // 2)):
                    failing = k
                    break
            if failing is None:
                logger.debug(f"Ring quadrature for {spec.label} converged with {nodes} nodes.")
                return current, error_scale
            logger.debug(f"theta_{failing} not converged with {nodes} nodes, doubling.")
            previous = current
    raise QuadratureError(failing, nodes)


def _provenance(spec: FunctionSpec, nodes_note: str) -> str:
    if spec.kind == "builtin":
        return f"closed form {spec.label}"
    note = f"Cauchy ring quadrature of {spec.generator_id} ({spec.pole_removal}) at s0={spec.expansion_point}, r={spec.ring_radius}{nodes_note}"
    if spec.is_placeholder:
        note = f"PLACEHOLDER zeta-star definition: (s-1)*zeta(s); {note}"
    return note


def generate(spec: FunctionSpec, N: int, prec: int, cache: CoeffCache | None = None) -> CoeffStream:
    """
    Generate theta_0..theta_N of a function spec.

    Builtin families use closed forms. Analytic specs sample the function on the ring of
    radius r around s0 with 8 (N + 1) nodes and double the node count until every
    coefficient agrees with the previous pass to prec/2 bits.

    :param spec: function spec
    :param N: largest index
    :param prec: precision of the coefficients in bits
    :param cache: optional coefficient cache consulted first and updated afterwards
    :raises ValueError: if N is negative or prec below the minimum
    :raises QuadratureError: if node doubling does not converge
    :raises UnknownGeneratorError: if the spec names an unknown generator
    :return: the stream
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}.")
    if prec < MIN_PRECISION:
        raise ValueError(f"Precision must be at least {MIN_PRECISION} bits, got {prec}.")

    if cache is not None:
        cached = cache.load(spec, prec)
        if cached is not None and cached.max_index >= N:
            logger.info(f"Found theta_0..theta_{cached.max_index} of {spec.label} at {prec} bits in cache.")
            return cached.truncated(N)

    if spec.kind == "builtin":
        with mp.workprec(prec):
            values = tuple(+x for x in _closed_form(spec, N))
        stream = CoeffStream(spec, values, prec, _provenance(spec, ""))
    else:
        logger.info(f"Extracting theta_0..theta_{N} of {spec.label} at {prec} bits by ring quadrature.")
        coefficients, error_scale = _cauchy_coefficients(spec, N, prec)
        with mp.workprec(prec):
            values = tuple(+x for x in coefficients)
            error_scale = +error_scale
        stream = CoeffStream(spec, values, prec, _provenance(spec, ""), error_scale)

    if cache is not None:
        cache.store(stream)
    return stream


def extend(stream: CoeffStream, new_N: int, prec: int | None = None, cache: CoeffCache | None = None) -> CoeffStream:
    """
    Regenerate a stream with more coefficients or more bits.

    Indices already present are re-verified against the new values to the smaller of the
    two precisions (half of it for quadrature streams).

    :param stream: existing stream
    :param new_N: new largest index
    :param prec: new precision, defaults to the stream's precision
    :param cache: optional coefficient cache
    :raises ValueError: if neither the length nor the precision grows
    :raises CacheCorruptionError: if an old coefficient disagrees with its regenerated value
    :return: the extended stream
    """
    prec = stream.precision_bits if prec is None else prec
    if new_N <= stream.max_index and prec <= stream.precision_bits:
        raise ValueError(
            f"extend needs new_N > {stream.max_index} or prec > {stream.precision_bits}, got {new_N} and {prec}."
        )
    extended = generate(stream.spec, max(new_N, stream.max_index), max(prec, stream.precision_bits), cache)

    bits = min(prec, stream.precision_bits)
    if stream.spec.kind == "analytic":
        bits //= 2
    else:
        bits -= 4
    with mp.workprec(max(prec, stream.precision_bits)):
        for k, old in enumerate(stream.values):
            if abs(extended.values[k] - old) > extended.tolerance(k, bits):
                raise CacheCorruptionError(
                    k, f"old value {mp.nstr(old, 20)} disagrees with regenerated {mp.nstr(extended.values[k], 20)}"
                )
    logger.info(f"Extended {stream.spec.label} to theta_{extended.max_index} at {extended.precision_bits} bits.")
    return extended


def stream_to_frame(stream: CoeffStream) -> pd.DataFrame:
    """
    Tabulate a stream for csv export.

    :param stream: coefficient stream
    :return: DataFrame with columns k, theta, bits (theta as decimal strings)
    """
    return pd.DataFrame(
        {
            "k": list(range(len(stream.values))),
            "theta": [to_decimal(v, stream.precision_bits) for v in stream.values],
            "bits": [stream.precision_bits] * len(stream.values),
        }
    )
