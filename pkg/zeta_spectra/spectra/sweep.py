from __future__ import annotations

import logging
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path

import pandas as pd
from mpmath import mp
from tqdm.auto import tqdm

from zeta_spectra.coeffs import CoeffStream
from zeta_spectra.errors import IndexBeyondStreamError, ZetaSpectraError
from zeta_spectra.file import jsonl
from zeta_spectra.mpnum import PrecisionPolicy, to_decimal

from .compute import compute_spectrum
from .types import SpectrumRecord, SweepResult

logger = logging.getLogger(__name__)


class SpectrumCache:
    """
    Spectrum records as JSON files ``<spec hash>-<bits>-l<l>-m<m>-d<digits>.json`` below a root
    directory, ``bits`` being the precision of the coefficient stream the matrix was built from.
    """

    def __init__(self, root: str | Path):
        """
        Create a cache rooted at a directory.

        :param root: cache directory
        """
        self.root = Path(root)

    def path_for(self, stream: CoeffStream, l: int, m: int, digits: int) -> Path:
        """Path of one record."""
        key = f"{stream.spec.spec_hash()}-{stream.precision_bits}"
        return self.root / "spectra" / f"{key}-l{l}-m{m}-d{digits}.json"

    def load(self, stream: CoeffStream, l: int, m: int, digits: int) -> SpectrumRecord | None:
        """
        Read a cached record.

        :return: the record, or None if it is not cached
        """
        path = self.path_for(stream, l, m, digits)
        if not path.is_file():
            return None
        return SpectrumRecord.from_dict(jsonl.read_json(path))

    def store(self, stream: CoeffStream, record: SpectrumRecord) -> Path:
        """Write a record atomically."""
        return jsonl.write_json(record.to_dict(), self.path_for(stream, record.l, record.m, record.target_digits))


def _compute_one(stream: CoeffStream, l: int, m: int, target_digits: int, policy: PrecisionPolicy):
    """Work pool entry point; errors come back as text so every m is accounted for."""
    try:
        return m, compute_spectrum(stream, l, m, target_digits, policy), None
    except (ZetaSpectraError, ArithmeticError, ValueError) as e:
        return m, None, f"{type(e).__name__}: {e}"


def sweep(
    stream: CoeffStream,
    l: int,
    m_range: Iterable[int],
    target_digits: int = 30,
    jobs: int = 1,
    policy: PrecisionPolicy | None = None,
    cache: SpectrumCache | None = None,
    progress: bool = False,
) -> SweepResult:
    """
    Spectra of M_{l,m}(f) for every m in a range.

    Each m is computed independently, in a process pool when ``jobs`` > 1. A failing m is
    recorded in ``failures`` and does not stop the sweep; records come back ordered by m
    whatever the number of workers.

    :param stream: coefficient stream covering theta_{l + max(m_range) - 1}
    :param l: index shift
    :param m_range: dimensions to compute
    :param target_digits: decimal digits per eigenvalue
    :param jobs: number of worker processes
    :param policy: start bits, precision cap and sweep limit
    :param cache: optional spectrum cache consulted first and filled afterwards
    :param progress: show a progress bar
    :raises IndexBeyondStreamError: if the stream is too short for the largest m
    :return: records and failures
    """
    ms = sorted(set(m_range))
    if not ms:
        return SweepResult(())
    if stream.max_index < l + ms[-1] - 1:
        raise IndexBeyondStreamError(l + ms[-1] - 1, stream.max_index)
    policy = policy or PrecisionPolicy(target_digits=target_digits)

    records: dict[int, SpectrumRecord] = {}
    failures: dict[int, str] = {}
    todo = []
    for m in ms:
        cached = cache.load(stream, l, m, target_digits) if cache is not None else None
        if cached is not None:
            records[m] = cached
        else:
            todo.append(m)
    if cache is not None and len(todo) < len(ms):
        logger.info(f"Reusing {len(ms) - len(todo)} cached spectra for {stream.spec.label}, l={l}.")

    with tqdm(total=len(todo), desc=f"Spectra l={l}", disable=not progress) as bar:
        if jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(_compute_one, stream, l, m, target_digits, policy) for m in todo]
                outcomes = []
                for future in as_completed(futures):
                    outcomes.append(future.result())
                    bar.update()
        else:
            outcomes = []
            for m in todo:
                outcomes.append(_compute_one(stream, l, m, target_digits, policy))
                bar.update()

    for m, record, error in outcomes:
        if record is None:
            logger.error(f"Spectrum l={l}, m={m} failed: {error}")
            failures[m] = error
            continue
        records[m] = record
        if cache is not None:
            cache.store(stream, record)

    logger.info(f"Sweep l={l} over {len(ms)} values of m finished with {len(failures)} failure(s).")
    return SweepResult(tuple(records[m] for m in sorted(records)), dict(sorted(failures.items())))


def records_to_frame(records: Iterable[SpectrumRecord]) -> pd.DataFrame:
    """
    Spectra table with one row per eigenvalue.

    :param records: spectrum records
    :return: DataFrame with columns l, m, n, mu, ln_abs_mu, precision_bits; ``ln_abs_mu`` is
        ``ZERO`` for zero eigenvalues
    """
    rows = []
    for record in records:
        bits = record.precision_used
        with mp.workprec(bits):
            for n, mu in enumerate(record.eigenvalues, start=1):
                ln_abs = "ZERO" if record.is_zero(mu) else to_decimal(mp.log(abs(mu)), bits)
                rows.append(
                    {
                        "l": record.l,
                        "m": record.m,
                        "n": n,
                        "mu": to_decimal(mu, bits),
                        "ln_abs_mu": ln_abs,
                        "precision_bits": bits,
                    }
                )
    return pd.DataFrame(rows, columns=["l", "m", "n", "mu", "ln_abs_mu", "precision_bits"])
