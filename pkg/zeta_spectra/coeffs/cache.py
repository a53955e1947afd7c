from __future__ import annotations

import logging
import os
from pathlib import Path

from mpmath import mp

from zeta_spectra.errors import CacheCorruptionError
from zeta_spectra.file import jsonl
from zeta_spectra.mpnum import from_decimal, to_decimal

from .spec import FunctionSpec
from .stream import CoeffStream

logger = logging.getLogger(__name__)

CACHE_ENV_VAR = "ZETA_SPECTRA_CACHE_DIR"


def default_cache_dir() -> Path:
    """Cache root from ``ZETA_SPECTRA_CACHE_DIR``, else ``~/.cache/zeta_spectra``."""
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "zeta_spectra"


class CoeffCache:
    """
    On-disk store of coefficient streams.

    One JSON-lines file ``<spec hash>-<bits>-<max index>.jsonl`` per stored stream with records
    ``{"k": int, "v": decimal string, "bits": int}`` and one sidecar
    ``<spec hash>-<bits>.manifest.json`` per (spec, precision) holding the spec, the max index,
    the provenance and the name of the data file. The data file is written first under its own
    name; renaming the manifest into place is the single commit point, so readers see either the
    old stream or the new one.
    """

    def __init__(self, root: str | Path | None = None):
        """
        Create a cache rooted at a directory.

        :param root: cache directory, defaults to :func:`default_cache_dir`
        """
        self.root = Path(root) if root is not None else default_cache_dir()

    def data_path_for(self, spec: FunctionSpec, bits: int, max_index: int) -> Path:
        """Path of the JSON-lines file holding theta_0..theta_max_index of a spec at a precision."""
        return self.root / f"{spec.spec_hash()}-{bits}-{max_index}.jsonl"

    def manifest_path_for(self, spec: FunctionSpec, bits: int) -> Path:
        """Path of the sidecar manifest for a spec at a precision."""
        return self.root / f"{spec.spec_hash()}-{bits}.manifest.json"

    def path_for(self, spec: FunctionSpec, bits: int) -> Path | None:
        """Path of the data file the current manifest points to, None if nothing is committed."""
        manifest_path = self.manifest_path_for(spec, bits)
        if not manifest_path.is_file():
            return None
        return self.root / jsonl.read_json(manifest_path)["data_file"]

    def store(self, stream: CoeffStream) -> Path:
        """
        Write a stream, replacing any shorter cached copy.

        :param stream: stream to store
        :return: path of the JSON-lines file
        """
        bits = stream.precision_bits
        existing = self.load(stream.spec, bits)
        if existing is not None and existing.max_index >= stream.max_index:
            return self.data_path_for(stream.spec, bits, existing.max_index)
        superseded = self.path_for(stream.spec, bits)

        records = ({"k": k, "v": to_decimal(v, bits), "bits": bits} for k, v in enumerate(stream.values))
        path = jsonl.write_records(records, self.data_path_for(stream.spec, bits, stream.max_index))
        manifest = {
            "spec": stream.spec.to_dict(),
            "spec_hash": stream.spec.spec_hash(),
            "max_index": stream.max_index,
            "data_file": path.name,
            "precision_bits": bits,
            "provenance": stream.provenance,
            "error_scale": to_decimal(stream.error_scale, bits),
            "placeholder": stream.spec.is_placeholder,
        }
        jsonl.write_json(manifest, self.manifest_path_for(stream.spec, bits))
        if superseded is not None and superseded != path:
            superseded.unlink(missing_ok=True)
        logger.debug(f"Cached theta_0..theta_{stream.max_index} of {stream.spec.label} at {path}.")
        return path

    def load(self, spec: FunctionSpec, bits: int) -> CoeffStream | None:
        """
        Read a cached stream.

        :param spec: function spec
        :param bits: precision in bits
        :raises CacheCorruptionError: if the files are inconsistent with each other or the spec
        :return: the stream, or None if nothing is cached for this spec and precision
        """
        manifest_path = self.manifest_path_for(spec, bits)
        # a concurrent store may drop the data file between the two reads; the manifest moved on then
        for _ in range(2):
            if not manifest_path.is_file():
                return None
            manifest = jsonl.read_json(manifest_path)
            if manifest.get("spec_hash") != spec.spec_hash() or manifest.get("precision_bits") != bits:
                raise CacheCorruptionError(0, f"manifest {manifest_path} does not describe {spec.label} at {bits} bits")
            data_path = self.root / manifest["data_file"]
            try:
                records = jsonl.read_records(data_path)
                break
            except FileNotFoundError:
                continue
        else:
            raise CacheCorruptionError(0, f"manifest {manifest_path} points to missing {manifest['data_file']}")

        if len(records) != manifest["max_index"] + 1:
            raise CacheCorruptionError(
                len(records), f"{data_path} holds {len(records)} records, manifest says {manifest['max_index'] + 1}"
            )
        values = []
        for expected, record in enumerate(records):
            if record.get("k") != expected or record.get("bits") != bits:
                raise CacheCorruptionError(expected, f"unexpected record {record} in {data_path}")
            values.append(from_decimal(record["v"], bits))
        with mp.workprec(bits):
            error_scale = from_decimal(manifest.get("error_scale", "0"), bits)
        return CoeffStream(spec, tuple(values), bits, manifest.get("provenance", ""), error_scale)
