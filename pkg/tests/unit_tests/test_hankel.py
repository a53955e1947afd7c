import unittest

import numpy as np
from mpmath import mp

from zeta_spectra.coeffs import FunctionSpec, generate
from zeta_spectra.errors import IndexBeyondStreamError
from zeta_spectra.hankel import (
    build_M,
    column_reversal_sign,
    det_relation_check,
    hankel_core,
    raw_toeplitz,
    sign_prefactor,
)
from zeta_spectra.mpnum import det_lu


def moments(*values, prec: int = 256):
    spec = FunctionSpec.parse("moments:" + ",".join(str(v) for v in values))
    return generate(spec, len(values) - 1, prec)


class TestSignPrefactor(unittest.TestCase):
    """Test the scalar sign of M_{l,m}."""

    def test_first_values(self):
        """+1, -1, -1, +1 repeating."""
        self.assertEqual([sign_prefactor(m) for m in range(1, 9)], [1, -1, -1, 1, 1, -1, -1, 1])

    def test_period(self):
        """The sign has period 4 in m."""
        for m in range(1, 40):
            self.assertEqual(sign_prefactor(m), sign_prefactor(m + 4))

    def test_invalid(self):
        """m must be positive."""
        with self.assertRaises(ValueError):
            sign_prefactor(0)

    def test_column_reversal_sign(self):
        """Reversing m columns is even for m = 1, 4, 5 and odd for m = 2, 3."""
        self.assertEqual([column_reversal_sign(m) for m in range(1, 6)], [1, -1, -1, 1, 1])


class TestBuildM(unittest.TestCase):
    """Test the signed Hankel matrix."""

    def test_one_by_one(self):
        """M_{1,1} = [theta_1]."""
        M = build_M(moments(0, 2.5), 1, 1)
        self.assertEqual(M.sign, 1)
        self.assertEqual(M.matrix.entry(1, 1), mp.mpf("2.5"))

    def test_geometric_two_by_two(self):
        """geometric:1 gives a constant -1 matrix at m = 2."""
        M = build_M(generate(FunctionSpec.parse("geometric:1"), 3, 128), 1, 2)
        self.assertEqual([list(row) for row in M.matrix.rows], [[-1, -1], [-1, -1]])

    def test_entries(self):
        """entry(i, j) = -theta_{l+m+1-i-j} for l = 2, m = 3."""
        M = build_M(moments(1, 2, 3, 4, 5), 2, 3)
        self.assertEqual(M.l, 2)
        self.assertEqual(M.m, 3)
        self.assertEqual(M.matrix.entry(1, 1), -5)
        self.assertEqual(M.matrix.entry(3, 3), -1)
        self.assertEqual(M.matrix.entry(1, 3), -3)
        self.assertEqual(M.matrix.entry(3, 1), -3)

    def test_negative_indices_vanish(self):
        """Entries below theta_0 are zero."""
        M = build_M(moments(1, 2, 3, 4), 1, 3)
        self.assertEqual(M.matrix.entry(3, 3), 0)
        self.assertEqual(M.matrix.entry(2, 3), -1)

    def test_hankel_structure(self):
        """Entries only depend on i + j and the matrix is symmetric."""
        M = build_M(generate(FunctionSpec.parse("exponential"), 12, 128), 3, 6)
        self.assertTrue(M.matrix.symmetric)
        for i in range(1, 7):
            for j in range(1, 6):
                if i > 1:
                    self.assertEqual(M.matrix.entry(i, j), M.matrix.entry(i - 1, j + 1))

    def test_stream_too_short(self):
        """theta_{l+m-1} must be present."""
        stream = generate(FunctionSpec.parse("geometric:1"), 2, 128)
        with self.assertRaises(IndexBeyondStreamError) as context:
            build_M(stream, 2, 3)
        self.assertEqual(context.exception.index, 4)

    def test_invalid_indices(self):
        """l and m must be positive."""
        stream = generate(FunctionSpec.parse("catalan"), 5, 128)
        with self.assertRaises(ValueError):
            build_M(stream, 0, 2)
        with self.assertRaises(ValueError):
            build_M(stream, 1, 0)

    def test_scalar_sign(self):
        """det(M) = sign^m det(core)."""
        stream = generate(FunctionSpec.parse("exponential"), 10, 256)
        for m in range(1, 6):
            M = build_M(stream, 2, m)
            det_m = det_lu(M.matrix, 256)
            det_core = det_lu(hankel_core(stream, 2, m), 256)
            with mp.workprec(256):
                self.assertLess(abs(det_m - M.sign**m * det_core), mp.mpf(10) ** -50 * abs(det_core))


class TestToeplitz(unittest.TestCase):
    """Test the Toeplitz form and the determinant relation."""

    def test_entries(self):
        """entry(i, j) = theta_{l+j-i}."""
        T = raw_toeplitz(moments(1, 2, 3, 4, 5), 2, 3)
        self.assertFalse(T.symmetric)
        self.assertEqual(T.entry(1, 1), 3)
        self.assertEqual(T.entry(1, 3), 5)
        self.assertEqual(T.entry(3, 1), 1)

    def test_column_reversal(self):
        """Reversing the columns of the Toeplitz form gives the Hankel core."""
        stream = moments(1, 2, 3, 4, 5, 6)
        T = raw_toeplitz(stream, 2, 4)
        H = hankel_core(stream, 2, 4)
        for i in range(1, 5):
            for j in range(1, 5):
                self.assertEqual(T.entry(i, 5 - j), H.entry(i, j))

    def test_relation_small(self):
        """The relation holds for m = 1, 2 and 5."""
        stream = generate(FunctionSpec.parse("exponential"), 12, 256)
        for m in (1, 2, 5):
            report = det_relation_check(stream, 1, m)
            self.assertTrue(report.passed, msg=f"m={m}")
            self.assertEqual(report.m, m)

    def test_relation_random(self):
        """The relation holds for random streams up to m = 10."""
        rng = np.random.default_rng(42)
        for m in range(1, 11):
            values = [f"{x:.6f}" for x in rng.uniform(0.5, 2.0, size=m + 2)]
            stream = moments(*values)
            self.assertTrue(det_relation_check(stream, 2, m).passed, msg=f"m={m}")
