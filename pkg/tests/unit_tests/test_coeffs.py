import shutil
import tempfile
import unittest
from pathlib import Path
from unittest import mock

import mpmath
from mpmath import mp

from zeta_spectra.coeffs import (
    CoeffCache,
    FunctionSpec,
    extend,
    generate,
    stream_to_frame,
    theta,
    zeta_em,
)
from zeta_spectra.errors import (
    CacheCorruptionError,
    IndexBeyondStreamError,
    PoleError,
    UnknownGeneratorError,
)


class TestZeta(unittest.TestCase):
    """Test the Euler-Maclaurin zeta function."""

    def test_zeta_two(self):
        """zeta(2) = pi^2 / 6."""
        value = zeta_em(2, 200)
        with mp.workprec(200):
            self.assertLess(abs(value - mp.pi**2 / 6), mp.mpf(10) ** -50)

    def test_zeta_three(self):
        """zeta(3) matches mpmath."""
        value = zeta_em(3, 200)
        with mp.workprec(200):
            self.assertLess(abs(value - mpmath.zeta(3)), mp.mpf(10) ** -50)

    def test_zeta_zero(self):
        """zeta(0) = -1/2."""
        value = zeta_em(0, 200)
        with mp.workprec(200):
            self.assertLess(abs(value + mp.mpf(1) / 2), mp.ldexp(1, -190))

    def test_zeta_minus_one(self):
        """zeta(-1) = -1/12 through the functional equation."""
        value = zeta_em(-1, 200)
        with mp.workprec(200):
            self.assertLess(abs(value + mp.mpf(1) / 12), mp.mpf(10) ** -50)

    def test_critical_line(self):
        """A point on the critical line matches mpmath."""
        with mp.workprec(200):
            s = mp.mpc(mp.mpf(1) / 2, 14)
            expected = mpmath.zeta(s)
        value = zeta_em(s, 200)
        with mp.workprec(200):
            self.assertLess(abs(value - expected), mp.mpf(10) ** -40)

    def test_error_scales_with_modulus(self):
        """Far left of the critical strip the error is bounded relative to |zeta(s)|."""
        prec = 256
        with mp.workprec(1024):
            s = mp.mpc("-4.5", 20)
            expected = mpmath.zeta(s)
        value = zeta_em(s, prec)
        with mp.workprec(1024):
            self.assertGreater(abs(expected), 1)
            bound = mp.ldexp(1, 1 - prec) * abs(expected)
            self.assertLessEqual(abs(value - expected), bound)

    def test_pole(self):
        """s = 1 is a pole."""
        with self.assertRaises(PoleError):
            zeta_em(1, 128)


class TestFunctionSpec(unittest.TestCase):
    """Test parsing and hashing of function specs."""

    def test_parse_builtin(self):
        """Builtin labels parse and print back."""
        for text in ("geometric:2", "exponential", "rational2:2,1", "catalan", "moments:1,0.5,0.25"):
            self.assertEqual(FunctionSpec.parse(text).label, text)

    def test_parse_zeta_star(self):
        """zeta-star alone is the placeholder with the pole removed."""
        spec = FunctionSpec.parse("zeta-star")
        self.assertTrue(spec.is_placeholder)
        self.assertEqual(spec.pole_removal, "s-1")
        self.assertEqual(spec.kind, "analytic")

    def test_hash(self):
        """Hashes are stable, 16 hex digits and differ between parameters."""
        first = FunctionSpec.parse("geometric:2").spec_hash()
        self.assertEqual(first, FunctionSpec.parse("geometric:2").spec_hash())
        self.assertEqual(len(first), 16)
        int(first, 16)
        self.assertNotEqual(first, FunctionSpec.parse("geometric:3").spec_hash())

    def test_dict_round_trip(self):
        """to_dict and from_dict describe the same spec."""
        for text in ("rational2:2,1", "one-over-one-minus-z:r=0.25"):
            spec = FunctionSpec.parse(text)
            self.assertEqual(FunctionSpec.from_dict(spec.to_dict()), spec)

    def test_unknown_generator(self):
        """An unregistered generator is rejected."""
        with self.assertRaises(UnknownGeneratorError):
            FunctionSpec(name="foo", kind="analytic", generator_id="foo")

    def test_xi_only_for_zeta(self):
        """The xi removal needs the zeta generator."""
        with self.assertRaises(UnknownGeneratorError):
            FunctionSpec.parse("exp:removal=xi")

    def test_ring_outside_disc(self):
        """A ring through the pole is rejected."""
        with self.assertRaises(ValueError):
            FunctionSpec.parse("one-over-one-minus-z:r=1")

    def test_bad_family_parameters(self):
        """Wrong parameter counts and non-numbers are rejected."""
        for text in ("geometric", "rational2:1", "geometric:abc", "unknown"):
            with self.assertRaises(ValueError, msg=text):
                FunctionSpec.parse(text)


class TestGenerate(unittest.TestCase):
    """Test coefficient generation."""

    def test_geometric(self):
        """geometric:1 gives all ones."""
        stream = generate(FunctionSpec.parse("geometric:1"), 5, 128)
        self.assertEqual(stream.max_index, 5)
        self.assertEqual(list(stream.values), [1] * 6)

    def test_exponential(self):
        """theta_3 of exp is 1/6."""
        stream = generate(FunctionSpec.parse("exponential"), 4, 128)
        with mp.workprec(128):
            self.assertLess(abs(stream.theta(3) - mp.mpf(1) / 6), mp.ldexp(1, -120))

    def test_rational2(self):
        """(a^(k+1) - b^(k+1)) / (a - b) and its a = b limit."""
        stream = generate(FunctionSpec.parse("rational2:2,1"), 3, 128)
        self.assertEqual([int(x) for x in stream.values], [1, 3, 7, 15])
        stream = generate(FunctionSpec.parse("rational2:2,2"), 3, 128)
        self.assertEqual([int(x) for x in stream.values], [1, 4, 12, 32])

    def test_catalan(self):
        """Catalan numbers."""
        stream = generate(FunctionSpec.parse("catalan"), 5, 128)
        self.assertEqual([int(x) for x in stream.values], [1, 1, 2, 5, 14, 42])

    def test_moments(self):
        """Moments are read back as given and cannot be exceeded."""
        spec = FunctionSpec.parse("moments:1,0.5,0.25")
        stream = generate(spec, 2, 128)
        self.assertEqual(stream.theta(2), mp.mpf("0.25"))
        with self.assertRaises(ValueError):
            generate(spec, 3, 128)

    def test_theta_indices(self):
        """Negative indices are zero, indices past the end raise."""
        stream = generate(FunctionSpec.parse("geometric:2"), 3, 128)
        self.assertEqual(theta(stream, -1), 0)
        self.assertEqual(theta(stream, 3), 8)
        with self.assertRaises(IndexBeyondStreamError) as context:
            theta(stream, 4)
        self.assertEqual(context.exception.index, 4)
        self.assertEqual(context.exception.max_index, 3)

    def test_invalid_arguments(self):
        """Negative N and low precision are rejected."""
        spec = FunctionSpec.parse("catalan")
        with self.assertRaises(ValueError):
            generate(spec, -1, 128)
        with self.assertRaises(ValueError):
            generate(spec, 3, 32)

    def test_deterministic(self):
        """Two runs give identical coefficients."""
        spec = FunctionSpec.parse("one-over-one-minus-z")
        self.assertEqual(generate(spec, 6, 128).values, generate(spec, 6, 128).values)

    def test_ring_quadrature_geometric_kernel(self):
        """1/(1-s) on the ring of radius 1/2 gives theta_k = 1 to 40 digits."""
        stream = generate(FunctionSpec.parse("one-over-one-minus-z:r=0.5"), 16, 256)
        with mp.workprec(256):
            for k, value in enumerate(stream.values):
                self.assertLess(abs(value - 1), mp.mpf(10) ** -40, msg=f"k={k}")

    def test_ring_quadrature_exp(self):
        """The analytic exp generator reproduces 1/k!."""
        stream = generate(FunctionSpec.parse("exp"), 8, 256)
        with mp.workprec(256):
            for k, value in enumerate(stream.values):
                self.assertLess(abs(value - 1 / mp.factorial(k)), mp.mpf(10) ** -35, msg=f"k={k}")

    def test_zeta_star_placeholder(self):
        """(s-1) zeta(s) at 0 has theta_0 = 1/2 and theta_1 = (ln(2 pi) - 1) / 2."""
        stream = generate(FunctionSpec.parse("zeta-star"), 4, 192)
        self.assertIn("PLACEHOLDER", stream.provenance)
        with mp.workprec(192):
            self.assertLess(abs(stream.theta(0) - mp.mpf(1) / 2), mp.mpf(10) ** -20)
            self.assertLess(abs(stream.theta(1) - (mp.log(2 * mp.pi) - 1) / 2), mp.mpf(10) ** -20)

    def test_stream_to_frame(self):
        """Frames have one row per coefficient."""
        df = stream_to_frame(generate(FunctionSpec.parse("catalan"), 3, 128))
        self.assertEqual(list(df.columns), ["k", "theta", "bits"])
        self.assertEqual(list(df["k"]), [0, 1, 2, 3])
        self.assertEqual(df["theta"].iloc[3], "5.0")


class TestExtend(unittest.TestCase):
    """Test stream extension."""

    def test_extend_builtin(self):
        """Extending keeps old values and adds new indices."""
        stream = generate(FunctionSpec.parse("geometric:1"), 5, 128)
        with self.assertRaises(IndexBeyondStreamError):
            stream.theta(7)
        extended = extend(stream, 10)
        self.assertEqual(extended.max_index, 10)
        self.assertEqual(extended.theta(10), 1)
        self.assertEqual(extended.values[:6], stream.values)

    def test_extend_precision(self):
        """A quadrature stream doubled in precision reproduces its old values."""
        stream = generate(FunctionSpec.parse("one-over-one-minus-z"), 6, 128)
        extended = extend(stream, 8, prec=256)
        self.assertEqual(extended.precision_bits, 256)
        self.assertEqual(extended.max_index, 8)

    def test_extend_nothing(self):
        """Extending to the same length and precision is rejected."""
        stream = generate(FunctionSpec.parse("catalan"), 5, 128)
        with self.assertRaises(ValueError):
            extend(stream, 5)


class TestCoeffCache(unittest.TestCase):
    """Test class to check the on-disk coefficient cache."""

    @classmethod
    def setUpClass(cls):  # noqa: D102
        cls.temp_dir = Path(tempfile.mkdtemp())

    @classmethod
    def tearDownClass(cls):  # noqa: D102
        shutil.rmtree(cls.temp_dir)

    def test_round_trip(self):
        """Stored streams load back bit-for-bit."""
        cache = CoeffCache(self.temp_dir / "round_trip")
        stream = generate(FunctionSpec.parse("one-over-one-minus-z"), 5, 192)
        cache.store(stream)
        loaded = cache.load(stream.spec, 192)
        self.assertEqual(loaded.values, stream.values)
        self.assertEqual(loaded.provenance, stream.provenance)
        self.assertEqual(loaded.error_scale, stream.error_scale)

    def test_missing(self):
        """Nothing cached loads as None."""
        cache = CoeffCache(self.temp_dir / "missing")
        self.assertIsNone(cache.load(FunctionSpec.parse("catalan"), 128))

    def test_generate_uses_cache(self):
        """generate writes the cache and serves shorter requests from it."""
        cache = CoeffCache(self.temp_dir / "generate")
        spec = FunctionSpec.parse("exponential")
        stream = generate(spec, 8, 128, cache=cache)
        self.assertTrue(cache.path_for(spec, 128).is_file())
        self.assertTrue(cache.manifest_path_for(spec, 128).is_file())
        shorter = generate(spec, 4, 128, cache=cache)
        self.assertEqual(shorter.values, stream.values[:5])

    def test_truncated_file(self):
        """A data file shorter than its manifest is corruption."""
        cache = CoeffCache(self.temp_dir / "corrupt")
        spec = FunctionSpec.parse("catalan")
        generate(spec, 5, 128, cache=cache)
        path = cache.path_for(spec, 128)
        lines = path.read_text().splitlines()
        path.write_text("\n".join(lines[:-1]) + "\n")
        with self.assertRaises(CacheCorruptionError):
            cache.load(spec, 128)

    def test_interrupted_store_keeps_old_stream(self):
        """A store that dies before its manifest is renamed leaves the previous stream readable."""
        cache = CoeffCache(self.temp_dir / "interrupted")
        spec = FunctionSpec.parse("catalan")
        short = generate(spec, 5, 128, cache=cache)
        longer = generate(spec, 10, 128)
        with mock.patch("zeta_spectra.coeffs.cache.jsonl.write_json", side_effect=OSError("disk full")):
            with self.assertRaises(OSError):
                cache.store(longer)
        self.assertTrue(cache.data_path_for(spec, 128, 10).is_file())
        loaded = cache.load(spec, 128)
        self.assertEqual(loaded.max_index, 5)
        self.assertEqual(loaded.values, short.values)

    def test_longer_store_replaces_data_file(self):
        """Storing a longer stream commits it and removes the superseded data file."""
        cache = CoeffCache(self.temp_dir / "replace")
        spec = FunctionSpec.parse("exponential")
        generate(spec, 4, 128, cache=cache)
        old_path = cache.path_for(spec, 128)
        longer = generate(spec, 9, 128, cache=cache)
        self.assertEqual(cache.path_for(spec, 128), cache.data_path_for(spec, 128, 9))
        self.assertFalse(old_path.exists())
        self.assertEqual(cache.load(spec, 128).values, longer.values)

    def test_manifest_pointing_nowhere(self):
        """A manifest whose data file is gone is corruption."""
        cache = CoeffCache(self.temp_dir / "dangling")
        spec = FunctionSpec.parse("catalan")
        generate(spec, 3, 128, cache=cache)
        cache.path_for(spec, 128).unlink()
        with self.assertRaises(CacheCorruptionError):
            cache.load(spec, 128)
