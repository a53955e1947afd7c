"""
Riemann zeta by Euler-Maclaurin summation.

For Re(s) >= 0 the sum over n < N is completed by the integral, the half endpoint term and
the Bernoulli tail

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1).

The tail is asymptotic; when its terms stop shrinking before the tolerance is met, N is
doubled. Re(s) < 0 goes through the functional equation.
"""

import logging

from mpmath import mp

from zeta_spectra.errors import PoleError
from zeta_spectra.mpnum import BigComplex

logger = logging.getLogger(__name__)

GUARD_BITS = 32


def _euler_maclaurin(s, prec: int):
    """zeta(s) for Re(s) >= 0 with absolute error below 2^(-prec); runs at the caller's precision."""
    eps = mp.ldexp(1, -prec - 4)
    n_terms = max(16, int(prec / 4 + abs(mp.im(s)) / (2 * mp.pi)) + 1)
    max_order = prec + 16
    while True:
        head = mp.fsum(mp.power(n, -s) for n in range(1, n_terms))
        n_pow = mp.power(n_terms, -s)
        total = head + n_terms * n_pow / (s - 1) + n_pow / 2

        rising = s
        power = n_pow / n_terms
        last_size = mp.inf
        converged = False
        for k in range(1, max_order):
            term = mp.bernoulli(2 * k) / mp.factorial(2 * k) * rising * power
            size = abs(term)
            if size < eps:
                total += term
                converged = True
                break
            if size > last_size:
                break
            total += term
            last_size = size
            rising *= (s + 2 * k - 1) * (s + 2 * k)
            power /= n_terms * n_terms
        if converged:
            return total
        logger.debug(f"Euler-Maclaurin tail diverged with N={n_terms} at s={mp.nstr(s, 8)}, doubling N.")
        n_terms *= 2


def _reflection_factor(s):
    return mp.power(2, s) * mp.power(mp.pi, s - 1) * mp.sinpi(s / 2) * mp.gamma(1 - s)


def zeta_em(s, prec: int) -> BigComplex:
    """
    Riemann zeta function at arbitrary precision.

    The sum is carried to absolute accuracy 2^(-prec) and then rounded to ``prec`` bits, so the
    error is at most 2^(1-prec) * max(1, |zeta(s)|): absolute near the zeros, relative where
    |zeta(s)| is large.

    :param s: complex (or real) argument, s != 1
    :param prec: precision in bits
    :raises PoleError: at s = 1
    :return: zeta(s) as an mpc rounded to ``prec`` bits
    """
    wp = prec + GUARD_BITS
    with mp.workprec(wp):
        s = mp.mpmathify(s)
        if s == 1:
            raise PoleError("zeta has a pole at s = 1.")
        if mp.im(s) == 0:
            s = mp.re(s)
        if mp.re(s) < 0:
            # zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
            factor = _reflection_factor(s)
            extra = max(0, int(mp.mag(factor))) if factor != 0 else 0
            with mp.workprec(wp + extra):
                value = _reflection_factor(s) * _euler_maclaurin(1 - s, prec + extra)
        else:
            value = _euler_maclaurin(s, prec)
    with mp.workprec(prec):
        return mp.mpc(value)
