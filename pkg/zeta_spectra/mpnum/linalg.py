import logging
import math
from collections.abc import Sequence

from mpmath import mp

from zeta_spectra.errors import ConvergenceError, DimensionError, ExponentRangeError, PrecisionCapError

from .types import MIN_PRECISION, BigReal, EigenResult, PrecisionPolicy, RealMatrix, digits_to_bits

logger = logging.getLogger(__name__)

# binary exponent limit for pivots and determinants, enough for e^(+-1000) and far beyond
EXPONENT_LIMIT = 2**30


def guard_bits(prec: int, m: int) -> int:
    """
    Working precision for elimination and rotations on an m x m matrix.

    :param prec: requested precision in bits
    :param m: matrix dimension
    :return: prec + 32 + 2 * ceil(log2(m))
    """
    return prec + 32 + 2 * math.ceil(math.log2(max(m, 1)))


def _check_prec(prec: int):
    if prec < MIN_PRECISION:
        raise ValueError(f"Precision must be at least {MIN_PRECISION} bits, got {prec}.")


def _working_copy(A: RealMatrix) -> list[list[BigReal]]:
    return [[mp.mpf(x) for x in row] for row in A.rows]


def _check_exponent(value: BigReal, row: int):
    if not mp.isfinite(value):
        raise ExponentRangeError(row, f"non-finite value {value}")
    if value != 0 and abs(mp.mag(value)) > EXPONENT_LIMIT:
        raise ExponentRangeError(row, f"binary exponent of {mp.nstr(value, 5)} exceeds 2^30")


def det_lu(A: RealMatrix, prec: int) -> BigReal:
    """
    Determinant by Gaussian elimination with partial pivoting.

    The elimination runs at :func:`guard_bits` precision; the result is the product of the
    pivots times the sign of the row permutation, rounded to ``prec`` bits.

    :param A: square matrix
    :param prec: precision of the result in bits
    :raises DimensionError: if the matrix has no rows
    :raises ExponentRangeError: if a pivot or the running product leaves the exponent range;
        ``row`` tells how far the elimination got
    :return: the determinant
    """
    _check_prec(prec)
    m = A.dim
    if m == 0:
        raise DimensionError("Determinant of a 0 x 0 matrix is not supported.")

    with mp.workprec(guard_bits(prec, m)):
        a = _working_copy(A)
        det = mp.one
        for k in range(m):
            pivot_row = max(range(k, m), key=lambda r: abs(a[r][k]))
            pivot = a[pivot_row][k]
            _check_exponent(pivot, k + 1)
            if pivot == 0:
                logger.debug(f"Zero pivot in column {k + 1}, matrix is singular.")
                return mp.zero
            if pivot_row != k:
                a[k], a[pivot_row] = a[pivot_row], a[k]
                det = -det
            det *= pivot
            _check_exponent(det, k + 1)
            row_k = a[k]
            for r in range(k + 1, m):
                row_r = a[r]
                factor = row_r[k] / pivot
                if factor == 0:
                    continue
                for c in range(k + 1, m):
                    row_r[c] -= factor * row_k[c]

    with mp.workprec(prec):
        return +det


def trace(A: RealMatrix, prec: int) -> BigReal:
    """Sum of the diagonal entries at ``prec`` bits."""
    with mp.workprec(prec):
        return mp.fsum(A.rows[i][i] for i in range(A.dim))


def frobenius_norm(A: RealMatrix, prec: int) -> BigReal:
    """Frobenius norm at ``prec`` bits."""
    with mp.workprec(prec):
        return mp.sqrt(mp.fsum((x for row in A.rows for x in row), squared=True))


def permute_rows(A: RealMatrix, perm: Sequence[int]) -> RealMatrix:
    """
    Reorder the rows of a matrix.

    :param A: matrix
    :param perm: 0-based permutation; row ``i`` of the result is row ``perm[i]`` of ``A``
    :return: the permuted (non-symmetric) matrix
    """
    return RealMatrix(tuple(A.rows[p] for p in perm), symmetric=False)


def permute_symmetric(A: RealMatrix, perm: Sequence[int]) -> RealMatrix:
    """
    Symmetric permutation P A P^T, which keeps the spectrum.

    :param A: matrix
    :param perm: 0-based permutation
    :return: the permuted matrix, symmetric if ``A`` is
    """
    rows = tuple(tuple(A.rows[p][q] for q in perm) for p in perm)
    return RealMatrix(rows, symmetric=A.symmetric)


def _offdiag_norm(a: list[list[BigReal]]) -> BigReal:
    m = len(a)
    return mp.sqrt(2 * mp.fsum((a[p][q] for p in range(m) for q in range(p + 1, m)), squared=True))


def _rotate(a: list[list[BigReal]], p: int, q: int):
    """Apply the Jacobi rotation that zeroes a[p][q]."""
    apq = a[p][q]
    if apq == 0:
        return
    app = a[p][p]
    aqq = a[q][q]
    theta = (aqq - app) / (2 * apq)
    t = 1 / (abs(theta) + mp.sqrt(theta * theta + 1))
    if theta < 0:
        t = -t
    c = 1 / mp.sqrt(t * t + 1)
    s = t * c
    tau = s / (1 + c)
    a[p][p] = app - t * apq
    a[q][q] = aqq + t * apq
    a[p][q] = a[q][p] = mp.zero
    for r in range(len(a)):
        if r == p or r == q:
            continue
        arp = a[r][p]
        arq = a[r][q]
        a[r][p] = a[p][r] = arp - s * (arq + tau * arp)
        a[r][q] = a[q][r] = arq + s * (arp - tau * arq)


def sym_eigenvalues(A: RealMatrix, prec: int, tol: BigReal | None = None, max_sweeps: int = 64) -> EigenResult:
    """
    Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps run over all pairs (p, q), p < q, in row order until the off-diagonal Frobenius
    norm is at most ``tol`` times the Frobenius norm of ``A``.

    :param A: matrix with the symmetric flag set
    :param prec: precision of the returned eigenvalues in bits
    :param tol: relative tolerance, defaults to 2^(-prec)
    :param max_sweeps: number of sweeps before giving up
    :raises DimensionError: if ``A`` is empty or not flagged symmetric
    :raises ValueError: if ``tol`` is not positive
    :raises ConvergenceError: if the tolerance is not reached within ``max_sweeps``
    :return: eigenvalues sorted ascending
    """
    _check_prec(prec)
    if not A.symmetric:
        raise DimensionError("sym_eigenvalues requires a matrix flagged symmetric.")
    m = A.dim
    if m == 0:
        raise DimensionError("Eigenvalues of a 0 x 0 matrix are not supported.")

    with mp.workprec(guard_bits(prec, m)):
        tol = mp.ldexp(1, -prec) if tol is None else mp.mpf(tol)
        if tol <= 0:
            raise ValueError(f"Tolerance must be positive, got {tol}.")
        a = _working_copy(A)
        bound = tol * mp.sqrt(mp.fsum((x for row in a for x in row), squared=True))
        off = _offdiag_norm(a)
        sweeps = 0
        while off > bound:
            if sweeps == max_sweeps:
                raise ConvergenceError(mp.nstr(off, 10), sweeps)
            for p in range(m - 1):
                for q in range(p + 1, m):
                    _rotate(a, p, q)
            sweeps += 1
            off = _offdiag_norm(a)
            logger.debug(f"Jacobi sweep {sweeps} (m={m}, {prec} bits): off-diagonal norm {mp.nstr(off, 5)}")
        diagonal = sorted(a[i][i] for i in range(m))

    with mp.workprec(prec):
        return EigenResult(tuple(+x for x in diagonal), prec, +off, sweeps)


def _agree(previous: Sequence[BigReal], current: Sequence[BigReal], digits: int) -> bool:
    eps = mp.mpf(10) ** (-digits)
    for x, y in zip(previous, current, strict=True):
        difference = abs(x - y)
        if abs(y) < eps:
            if difference > eps:
                return False
        elif difference > eps * abs(y):
            return False
    return True


def adaptive_solve(A: RealMatrix, target_digits: int, policy: PrecisionPolicy | None = None) -> EigenResult:
    """
    Eigenvalues reproduced to ``target_digits`` by doubling the precision.

    Starts at ``policy.start_bits`` (raised by doubling until it holds the requested digits)
    and doubles until two successive runs agree on every eigenvalue to ``target_digits``
    relative digits, absolute for eigenvalues below 10^(-target_digits).

    :param A: matrix with the symmetric flag set
    :param target_digits: decimal digits that must be reproduced, at least 10
    :param policy: start bits, precision cap and sweep limit
    :raises ValueError: if ``target_digits`` is below 10
    :raises PrecisionCapError: if the next doubling would exceed ``policy.prec_cap``
    :return: the result of the last run, ``precision_used`` set to its precision
    """
    if target_digits < 10:
        raise ValueError(f"target_digits must be at least 10, got {target_digits}.")
    policy = policy or PrecisionPolicy()
    if not A.symmetric:
        raise DimensionError("adaptive_solve requires a matrix flagged symmetric.")

    bits = policy.start_bits
    while bits < digits_to_bits(target_digits) + 32:
        bits *= 2

    if A.is_zero():
        with mp.workprec(bits):
            return EigenResult(tuple(mp.zero for _ in range(A.dim)), bits, mp.zero, 0)

    previous = sym_eigenvalues(A, bits, max_sweeps=policy.max_sweeps)
    before: EigenResult | None = None
    while True:
        bits *= 2
        if bits > policy.prec_cap:
            earlier = list(before.eigenvalues) if before is not None else []
            raise PrecisionCapError(policy.prec_cap, earlier, list(previous.eigenvalues))
        current = sym_eigenvalues(A, bits, max_sweeps=policy.max_sweeps)
        with mp.workprec(bits):
            if _agree(previous.eigenvalues, current.eigenvalues, target_digits):
                logger.debug(f"Eigenvalues of the {A.dim} x {A.dim} matrix agree to {target_digits} digits at {bits} bits.")
                return current
        logger.debug(f"Eigenvalues disagree between {bits // 2} and {bits} bits, doubling precision.")
        before, previous = previous, current
