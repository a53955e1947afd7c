from __future__ import annotations

import hashlib
import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import zeta_spectra
from zeta_spectra.errors import ManifestError
from zeta_spectra.file import jsonl
from zeta_spectra.mpnum import PrecisionPolicy

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


def file_sha256(path: str | Path) -> str:
    """Hex SHA-256 of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass(frozen=True)
class Manifest:
    """Provenance of an artifact set: tool version, inputs, numeric policy and file hashes."""

    tool_version: str
    spec_hash: str
    l_list: tuple[int, ...]
    m_grid: tuple[int, ...]
    precision_policy: dict[str, int]
    files: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """JSON form."""
        return {
            "tool_version": self.tool_version,
            "spec_hash": self.spec_hash,
            "l": list(self.l_list),
            "m_grid": list(self.m_grid),
            "precision_policy": dict(self.precision_policy),
            "files": dict(sorted(self.files.items())),
        }

    @classmethod
    def from_dict(cls, document: dict[str, Any]) -> Manifest:
        """Inverse of :meth:`to_dict`."""
        try:
            return cls(
                tool_version=document["tool_version"],
                spec_hash=document["spec_hash"],
                l_list=tuple(document["l"]),
                m_grid=tuple(document["m_grid"]),
                precision_policy=dict(document["precision_policy"]),
                files=dict(document["files"]),
            )
        except KeyError as e:
            raise ManifestError(f"Manifest lacks the key {e}.") from None


def build_manifest(
    directory: str | Path,
    files: Iterable[str | Path],
    spec_hash: str,
    ls: Iterable[int],
    ms: Iterable[int],
    policy: PrecisionPolicy,
) -> Manifest:
    """
    Describe the files of an artifact directory.

    :param directory: directory the file names are relative to
    :param files: artifact files inside ``directory``
    :param spec_hash: hash of the function spec
    :param ls: index shifts covered
    :param ms: dimensions covered
    :param policy: precision policy used
    :raises ManifestError: if a file is missing
    :return: the manifest
    """
    directory = Path(directory)
    inventory = {}
    for file in files:
        path = Path(file)
        if not path.is_absolute():
            path = directory / path
        if not path.is_file():
            raise ManifestError(f"Artifact {path} does not exist.")
        inventory[path.relative_to(directory).as_posix()] = file_sha256(path)
    policy_dict = {
        "target_digits": policy.target_digits,
        "start_bits": policy.start_bits,
        "prec_cap": policy.prec_cap,
        "max_sweeps": policy.max_sweeps,
    }
    return Manifest(zeta_spectra.__version__, spec_hash, tuple(sorted(set(ls))), tuple(sorted(set(ms))), policy_dict, inventory)


def write_manifest(manifest: Manifest, path: str | Path) -> Path:
    """Write a manifest as JSON; a directory gets ``manifest.json`` inside it."""
    path = Path(path)
    if path.is_dir():
        path = path / MANIFEST_NAME
    return jsonl.write_json(manifest.to_dict(), path)


def verify_manifest(path: str | Path) -> Manifest:
    """
    Check every file listed in a manifest against its hash.

    :param path: manifest file, or the directory holding ``manifest.json``
    :raises ManifestError: if a file is missing or its content changed
    :return: the manifest
    """
    path = Path(path)
    if path.is_dir():
        path = path / MANIFEST_NAME
    if not path.is_file():
        raise ManifestError(f"No manifest at {path}.")
    manifest = Manifest.from_dict(jsonl.read_json(path))
    for name, expected in manifest.files.items():
        target = path.parent / name
        if not target.is_file():
            raise ManifestError(f"{name} listed in {path} is missing.")
        actual = file_sha256(target)
        if actual != expected:
            raise ManifestError(f"{name} has hash {actual}, manifest says {expected}.")
    logger.info(f"Verified {len(manifest.files)} file(s) listed in {path}.")
    return manifest
