import shutil
import tempfile
import unittest
from pathlib import Path

import pandas as pd

from zeta_spectra.file import csv, jsonl


class TestCsv(unittest.TestCase):
    """Test class to check csv reading and writing."""

    @classmethod
    def setUpClass(cls):  # noqa: D102
        cls.temp_dir = Path(tempfile.mkdtemp())

    @classmethod
    def tearDownClass(cls):  # noqa: D102
        shutil.rmtree(cls.temp_dir)

    def test_round_trip_keeps_digits(self):
        """Decimal strings come back unchanged."""
        df = pd.DataFrame({"k": ["0", "1"], "theta": ["0.1000000000000000000000000000001", "ZERO"]})
        path = self.temp_dir / "table.csv"
        csv.write_file(df, path)
        pd.testing.assert_frame_equal(csv.read_file(path), df)

    def test_unix_line_endings(self):
        """Rows end in a single newline."""
        text = csv.to_text(pd.DataFrame({"a": [1, 2]}))
        self.assertEqual(text, "a\n1\n2\n")


class TestJson(unittest.TestCase):
    """Test class to check JSON and JSON-lines files."""

    @classmethod
    def setUpClass(cls):  # noqa: D102
        cls.temp_dir = Path(tempfile.mkdtemp())

    @classmethod
    def tearDownClass(cls):  # noqa: D102
        shutil.rmtree(cls.temp_dir)

    def test_json_round_trip(self):
        """Documents read back equal, written with sorted keys."""
        document = {"b": [1, 2], "a": {"x": "1.5"}}
        path = jsonl.write_json(document, self.temp_dir / "doc.json")
        self.assertEqual(jsonl.read_json(path), document)
        self.assertTrue(path.read_text().startswith('{\n  "a"'))

    def test_records(self):
        """One compact object per line."""
        records = [{"k": 0, "v": "1.0"}, {"k": 1, "v": "0.5"}]
        path = jsonl.write_records(records, self.temp_dir / "records.jsonl")
        self.assertEqual(path.read_text().splitlines()[0], '{"k":0,"v":"1.0"}')
        self.assertEqual(jsonl.read_records(path), records)

    def test_atomic_write(self):
        """Writing replaces the target and leaves no temporary files."""
        directory = self.temp_dir / "atomic"
        jsonl.write_atomic(directory / "out.txt", "first")
        jsonl.write_atomic(directory / "out.txt", "second")
        self.assertEqual((directory / "out.txt").read_text(), "second")
        self.assertEqual([p.name for p in directory.iterdir()], ["out.txt"])
