import unittest
from fractions import Fraction

import numpy as np
from mpmath import mp

from zeta_spectra.coeffs import FunctionSpec, generate
from zeta_spectra.dist import (
    StepDistribution,
    distribution_to_frame,
    evaluate,
    from_log_spectrum,
    mean,
    sup_distance,
    tail_sums,
)
from zeta_spectra.spectra import LogSpectrum, compute_spectrum, log_spectrum


class TestStepDistribution(unittest.TestCase):
    """Test the empirical distribution of a log-spectrum."""

    def test_two_points(self):
        """Two distinct points carry 1/2 each."""
        F = StepDistribution([1, 3], 2)
        self.assertEqual(F.jumps(), [(1, Fraction(1, 2)), (3, Fraction(1))])
        self.assertEqual(F.total_mass, 1)

    def test_missing_mass(self):
        """No points for m = 1 leaves all mass missing, with a warning."""
        with self.assertLogs("zeta_spectra.dist.step", level="WARNING"):
            F = from_log_spectrum(LogSpectrum(1, 1, (), 1))
        self.assertEqual(F.missing_mass, 1)
        self.assertEqual(evaluate(F, 100), 0)

    def test_coincident_points(self):
        """Coincident points form a single jump."""
        F = StepDistribution([0, 0], 2)
        self.assertEqual(F.jumps(), [(0, Fraction(1))])

    def test_too_many_points(self):
        """More locations than m are rejected."""
        with self.assertRaises(ValueError):
            StepDistribution([1, 2, 3], 2)
        with self.assertRaises(ValueError):
            StepDistribution([], 0)

    def test_evaluate(self):
        """F is 0 below, right-continuous at the jumps and 1 above."""
        F = StepDistribution([-1, 1], 2)
        self.assertEqual(evaluate(F, -2), 0)
        self.assertEqual(evaluate(F, 0), Fraction(1, 2))
        self.assertEqual(evaluate(F, 1), 1)
        self.assertEqual(evaluate(F, 5), 1)

    def test_monotone(self):
        """F is non-decreasing and bounded by the total mass."""
        F = StepDistribution([-3, -1, -1, 2, 7], 6)
        values = [evaluate(F, x) for x in np.linspace(-5, 10, 61)]
        self.assertEqual(values, sorted(values))
        self.assertLessEqual(values[-1], F.total_mass)


class TestMoments(unittest.TestCase):
    """Test mean and tail sums."""

    def test_symmetric_mean(self):
        """-1 and 1 have mean 0."""
        self.assertEqual(mean(StepDistribution([-1, 1], 2)), 0)

    def test_log_mean(self):
        """ln 2 and ln 8 have mean ln 4."""
        with mp.workprec(256):
            F = StepDistribution([mp.log(2), mp.log(8)], 2)
            self.assertLess(abs(mean(F) - mp.log(4)), mp.mpf(10) ** -70)

    def test_tails(self):
        """Negative and positive parts are split at zero."""
        tails = tail_sums(StepDistribution([-1, 1], 2))
        self.assertEqual(tails.neg, mp.mpf(-1) / 2)
        self.assertEqual(tails.pos, mp.mpf(1) / 2)
        tails = tail_sums(StepDistribution([1, 2, 3], 3))
        self.assertEqual(tails.neg, 0)

    def test_tails_add_to_mean(self):
        """neg + pos is the mean."""
        F = StepDistribution(["-2.5", "0.75", "1.25", "4"], 5)
        tails = tail_sums(F)
        with mp.workprec(256):
            self.assertEqual(tails.neg + tails.pos, mean(F))

    def test_mean_is_log_determinant(self):
        """The mean of the log-spectrum is (1/m) ln|det M|."""
        stream = generate(FunctionSpec.parse("exponential"), 6, 256)
        record = compute_spectrum(stream, 1, 4)
        F = from_log_spectrum(log_spectrum(record))
        with mp.workprec(record.precision_used):
            expected = mp.log(abs(record.determinant)) / 4
            self.assertLess(abs(mean(F) - expected), mp.mpf(10) ** -25)


class TestSupDistance(unittest.TestCase):
    """Test the Kolmogorov-Smirnov distance."""

    def test_identical(self):
        """A distribution has distance 0 to itself."""
        F = StepDistribution([1, 2, 2], 3)
        self.assertEqual(sup_distance(F, StepDistribution([2, 1, 2], 3)), 0)

    def test_unit_shift(self):
        """A single jump moved from 0 to 1 has distance 1."""
        self.assertEqual(sup_distance(StepDistribution([0], 1), StepDistribution([1], 1)), 1)

    def test_different_m(self):
        """{0, 1} with m = 2 against {0} with m = 1 is 1/2 apart."""
        self.assertEqual(sup_distance(StepDistribution([0, 1], 2), StepDistribution([0], 1)), Fraction(1, 2))

    def test_metric(self):
        """Symmetry, the triangle inequality and zero only for equal multisets on random samples."""
        rng = np.random.default_rng(9)
        for _ in range(20):
            F, G, H = (
                StepDistribution(rng.integers(-3, 4, size=int(rng.integers(1, 6))).tolist(), 5) for _ in range(3)
            )
            self.assertEqual(sup_distance(F, G), sup_distance(G, F))
            self.assertLessEqual(sup_distance(F, H), sup_distance(F, G) + sup_distance(G, H))
            self.assertEqual(sup_distance(F, G) == 0, list(F.locations) == list(G.locations))


class TestFrame(unittest.TestCase):
    """Test the distribution table."""

    def test_columns(self):
        """x as decimals and F as exact fractions."""
        df = distribution_to_frame(StepDistribution([1, 1, 3], 4))
        self.assertEqual(list(df.columns), ["x", "F"])
        self.assertEqual(list(df["F"]), ["1/2", "3/4"])
        self.assertEqual(df["x"].iloc[0], "1.0")
