"""Command line interface: ``zeta-spectra <command> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import pandas as pd
from mpmath import mp
from rich.console import Console
from rich.table import Table

from zeta_spectra.coeffs import CoeffCache, FunctionSpec, default_cache_dir, generate, stream_to_frame
from zeta_spectra.dist import distribution_to_frame, from_log_spectrum
from zeta_spectra.errors import ZetaSpectraError
from zeta_spectra.file import csv, jsonl
from zeta_spectra.harness import CHECK_IDS, ReferenceConstants, Verdict, report_to_json, run_checks, worst_verdict
from zeta_spectra.mpnum import PrecisionPolicy, digits_to_bits
from zeta_spectra.spectra import SpectrumCache, SplitPolicy, log_spectrum, records_to_frame, sweep

from .config import FigureConfig
from .manifest import build_manifest, write_manifest
from .render import render_distribution, render_spectra

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONTRADICTED = 1
EXIT_ERROR = 2


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got '{text}'") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got '{text}'")
    return values


def _global_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--func", default="zeta-star", help="Function spec, e.g. geometric:1, exponential, zeta-star")
    parent.add_argument("--func-config", type=Path, default=None, help="JSON file with the function spec")
    parent.add_argument("--l", type=_int_list, default=[1], help="Index shift l, or a comma list of them")
    parent.add_argument("--m", type=int, default=None, help="Matrix dimension m")
    parent.add_argument("--m-max", type=int, default=None, help="Largest m of a sweep over 1..m-max")
    parent.add_argument("--digits", type=int, default=30, help="Decimal digits every eigenvalue is reproduced to")
    parent.add_argument("--prec-cap", type=int, default=8192, help="Precision cap of the eigensolver in bits")
    parent.add_argument("--policy", default=None, help="Split policy: largest-gap, threshold:C or quantile:Q")
    parent.add_argument("--wl-file", type=Path, default=None, help="JSON file with reference constants W_l, R_l")
    parent.add_argument("--cache-dir", type=Path, default=None, help="Cache directory")
    parent.add_argument("--no-cache", action="store_true", help="Neither read nor write the cache")
    parent.add_argument("--out", type=Path, default=None, help="Output file (directory for figure)")
    parent.add_argument("--jobs", type=int, default=1, help="Worker processes for sweeps")
    parent.add_argument("--format", choices=("csv", "json", "svg"), default=None, help="Output format")
    parent.add_argument("--progress", action="store_true", help="Show a progress bar during sweeps")
    return parent


def parse_args(argv: list[str]) -> argparse.Namespace:
    """Parse command line arguments."""
    parent = _global_options()
    apars = argparse.ArgumentParser(
        prog="zeta-spectra",
        description="Hankel determinants and eigenvalue spectra of Taylor coefficient streams.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    commands = apars.add_subparsers(dest="command", required=True)
    coeffs = commands.add_parser("coeffs", parents=[parent], help="Export theta_0..theta_N")
    coeffs.add_argument("--n", type=int, default=None, help="Largest index N, defaults to l + m-max - 1")
    commands.add_parser("spectrum", parents=[parent], help="Eigenvalues of one M_{l,m}")
    commands.add_parser("sweep", parents=[parent], help="Eigenvalues for m = 1..m-max")
    commands.add_parser("dist", parents=[parent], help="Distribution function F_{l,m}")
    check = commands.add_parser("check", parents=[parent], help="Run numerical checks")
    check.add_argument("check_ids", nargs="+", choices=CHECK_IDS, metavar="CHECK", help=f"One of {', '.join(CHECK_IDS)}")
    figure = commands.add_parser("figure", parents=[parent], help="Render SVG figures into --out")
    figure.add_argument("kinds", nargs="+", choices=("spectra", "distribution"), metavar="KIND")
    return apars.parse_args(argv)


def _function_spec(args: argparse.Namespace) -> FunctionSpec:
    if args.func_config is not None:
        return FunctionSpec.from_json(args.func_config)
    return FunctionSpec.parse(args.func)


def _stream_bits(digits: int) -> int:
    return max(256, digits_to_bits(digits) + 64)


def _require(value, flag: str, command: str):
    if value is None:
        raise ValueError(f"'{command}' needs {flag}.")
    if value < 1:
        raise ValueError(f"{flag} must be at least 1, got {value}.")
    return value


class _Session:
    """Function spec, caches and numeric policy shared by every command."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.spec = _function_spec(args)
        self.policy = PrecisionPolicy(target_digits=args.digits, prec_cap=args.prec_cap)
        self.bits = _stream_bits(args.digits)
        root = args.cache_dir or default_cache_dir()
        self.coeff_cache = None if args.no_cache else CoeffCache(root)
        self.spectrum_cache = None if args.no_cache else SpectrumCache(root)
        if self.spec.is_placeholder:
            logger.warning("zeta-star uses the PLACEHOLDER definition (s-1)*zeta(s) at s0=0, r=1.")

    def stream(self, max_index: int):
        return generate(self.spec, max_index, self.bits, self.coeff_cache)

    def sweep(self, l: int, ms: list[int]):
        stream = self.stream(l + max(ms) - 1)
        return sweep(
            stream, l, ms, self.args.digits, self.args.jobs, self.policy, self.spectrum_cache, self.args.progress
        )

    def record(self, l: int, m: int):
        result = self.sweep(l, [m])
        if result.failures:
            raise ZetaSpectraError(result.failures[m])
        return result.by_m(m)


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text)
    else:
        jsonl.write_atomic(out, text)
        logger.info(f"Wrote {out}")


def _emit_frame(frame, args: argparse.Namespace, records: list | None = None):
    if args.format == "json":
        _emit(jsonl.dumps(records if records is not None else frame.to_dict(orient="records")), args.out)
    else:
        _emit(csv.to_text(frame), args.out)


def _m_grid(args: argparse.Namespace, command: str) -> list[int]:
    return list(range(1, _require(args.m_max, "--m-max", command) + 1))


def _run_coeffs(session: _Session) -> int:
    args = session.args
    n = args.n if args.n is not None else max(args.l) + (args.m_max or args.m or 1) - 1
    if n < 0:
        raise ValueError(f"--n must be non-negative, got {n}.")
    stream = session.stream(n)
    frame = stream_to_frame(stream)
    _emit_frame(frame, args)
    return EXIT_OK


def _run_spectrum(session: _Session) -> int:
    args = session.args
    m = _require(args.m, "--m", "spectrum")
    records = [session.record(l, m) for l in args.l]
    _emit_frame(records_to_frame(records), args, [r.to_dict() for r in records])
    return EXIT_OK


def _run_sweep(session: _Session) -> int:
    args = session.args
    ms = _m_grid(args, "sweep")
    records = []
    failed = False
    for l in args.l:
        result = session.sweep(l, ms)
        records.extend(result.records)
        failed = failed or bool(result.failures)
    _emit_frame(records_to_frame(records), args, [r.to_dict() for r in records])
    return EXIT_ERROR if failed else EXIT_OK


def _run_dist(session: _Session) -> int:
    args = session.args
    m = _require(args.m, "--m", "dist")
    frames = []
    for l in args.l:
        frame = distribution_to_frame(from_log_spectrum(log_spectrum(session.record(l, m))))
        frame.insert(0, "m", m)
        frame.insert(0, "l", l)
        frames.append(frame)
    _emit_frame(pd.concat(frames, ignore_index=True), args)
    return EXIT_OK


def _summary_table(reports) -> Table:
    table = Table(title="zeta-spectra checks")
    for column in ("check", "l", "m", "limit", "estimator", "verdict"):
        table.add_column(column)
    styles = {
        Verdict.SUPPORTED: "green",
        Verdict.INCONCLUSIVE: "yellow",
        Verdict.CONTRADICTED: "red",
        Verdict.UNAVAILABLE: "dim",
    }
    for report in reports:
        grid = report.m_grid
        table.add_row(
            report.check_id,
            "-" if report.l is None else str(report.l),
            f"{grid[0]}..{grid[-1]}" if grid else "-",
            "-" if report.limit is None else mp.nstr(report.limit, 12),
            report.estimator_id,
            f"[{styles[report.verdict]}]{report.verdict.value}[/]",
        )
    return table


def _run_check(session: _Session) -> int:
    args = session.args
    ms = _m_grid(args, "check")
    refs = ReferenceConstants.load(args.wl_file) if args.wl_file is not None else ReferenceConstants()
    records_by_l = {}
    failed = False
    for l in args.l:
        result = session.sweep(l, ms)
        records_by_l[l] = list(result.records)
        failed = failed or bool(result.failures)
    reports = run_checks(args.check_ids, records_by_l, refs)
    Console(stderr=True).print(_summary_table(reports))
    document = {
        "function": session.spec.to_dict(),
        "spec_hash": session.spec.spec_hash(),
        "reports": [report_to_json(report) for report in reports],
    }
    _emit(jsonl.dumps(document), args.out)
    if worst_verdict(reports) == Verdict.CONTRADICTED:
        return EXIT_CONTRADICTED
    return EXIT_ERROR if failed else EXIT_OK


def _run_figure(session: _Session) -> int:
    args = session.args
    if args.format not in (None, "svg"):
        raise ValueError(f"figure writes svg, not {args.format}.")
    out = args.out or Path(".")
    out.mkdir(parents=True, exist_ok=True)
    policy = SplitPolicy.parse(args.policy) if args.policy else None
    cfg = FigureConfig(split_policy=policy)
    files = []
    ms: list[int] = []
    for l in args.l:
        if "spectra" in args.kinds:
            ms = _m_grid(args, "figure spectra")
            result = session.sweep(l, ms)
            files.append(render_spectra(list(result.records), cfg, out / f"spectra_l{l}.svg"))
        if "distribution" in args.kinds:
            m = _require(args.m, "--m", "figure distribution")
            F = from_log_spectrum(log_spectrum(session.record(l, m)))
            files.append(render_distribution(F, cfg, out / f"distribution_l{l}_m{m}.svg"))
            ms = sorted(set(ms) | {m})
    manifest = build_manifest(out, files, session.spec.spec_hash(), args.l, ms, session.policy)
    write_manifest(manifest, out)
    return EXIT_OK


COMMANDS = {
    "coeffs": _run_coeffs,
    "spectrum": _run_spectrum,
    "sweep": _run_sweep,
    "dist": _run_dist,
    "check": _run_check,
    "figure": _run_figure,
}


def main(argv: list[str] | None = None) -> int:
    """
    Run the command line interface.

    :param argv: arguments without the program name, defaults to ``sys.argv[1:]``
    :return: exit code, 0 on success, 1 if a check is CONTRADICTED, 2 on errors
    """
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    try:
        session = _Session(args)
        return COMMANDS[args.command](session)
    except (ZetaSpectraError, ValueError, KeyError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_ERROR
