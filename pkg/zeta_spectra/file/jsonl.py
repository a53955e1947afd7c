import json
import logging
import os
import tempfile
from collections.abc import Iterable
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

Pathlike = Path | str


def write_atomic(path: Pathlike, text: str) -> Path:
    """
    Write text so that readers only ever see the complete file.

    The content goes to a temporary file in the target directory which is then renamed
    over the target.

    :param path: target path
    :param text: full file content
    :return: the target path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as tmp:
            tmp.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    return path


def dumps(document: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def write_json(document: Any, path: Pathlike) -> Path:
    """
    Write a JSON document atomically.

    :param document: JSON-serializable object
    :param path: target path
    :return: the target path
    """
    return write_atomic(path, dumps(document))


def read_json(path: Pathlike) -> Any:
    """
    Read a JSON document.

    :param path: path to read
    :return: the parsed document
    """
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def write_records(records: Iterable[dict[str, Any]], path: Pathlike) -> Path:
    """
    Write JSON-lines atomically, one compact object per line.

    :param records: JSON-serializable mappings
    :param path: target path
    :return: the target path
    """
    lines = [json.dumps(record, sort_keys=True, separators=(",", ":")) for record in records]
    return write_atomic(path, "".join(f"{line}\n" for line in lines))


def read_records(path: Pathlike) -> list[dict[str, Any]]:
    """
    Read a JSON-lines file.

    :param path: path to read
    :return: list of parsed objects, blank lines skipped
    """
    with open(path, encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]
