"""SVG figures of logarithmic spectra and of their distribution functions."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from zeta_spectra.dist import StepDistribution  # noqa: E402
from zeta_spectra.spectra import SpectrumRecord, log_spectrum, split  # noqa: E402

from .config import FigureConfig  # noqa: E402

logger = logging.getLogger(__name__)

# fixed salt and no date keep the emitted SVG byte-identical across runs
SVG_RC = {"svg.hashsalt": "zeta-spectra", "svg.fonttype": "none"}
SVG_METADATA = {"Date": None}


def _output_path(cfg: FigureConfig, path: str | Path | None) -> Path:
    target = path if path is not None else cfg.output_path
    if target is None:
        raise ValueError("No output path given for the figure.")
    target = Path(target)
    target.parent.mkdir(parents=True, exist_ok=True)
    return target


def _save(fig, path: Path) -> Path:
    fig.savefig(path, format="svg", metadata=SVG_METADATA)
    plt.close(fig)
    logger.info(f"Wrote {path}")
    return path


def render_spectra(records: Sequence[SpectrumRecord], cfg: FigureConfig, path: str | Path | None = None) -> Path:
    """
    Scatter plot of logarithmic spectra, one marker at (ln|mu|, m) per nonzero eigenvalue.

    With a split policy in ``cfg`` electrons and trains become two marker groups with the
    SVG ids ``electrons`` and ``trains``; otherwise all markers are in the group ``mu-spectrum``.

    :param records: spectrum records, usually of one l
    :param cfg: figure configuration
    :param path: output file, defaults to ``cfg.output_path``
    :raises ValueError: if no records are given
    :return: path of the SVG file
    """
    if not records:
        raise ValueError("render_spectra needs at least one record.")
    target = _output_path(cfg, path)
    groups: dict[str, tuple[list[float], list[float]]] = {}
    for record in sorted(records, key=lambda r: (r.l, r.m)):
        ls = log_spectrum(record)
        if not ls.points:
            continue
        if cfg.split_policy is None:
            parts = {"mu-spectrum": ls.points}
        else:
            halves = split(ls, cfg.split_policy)
            parts = {"electrons": halves.electrons, "trains": halves.trains}
        for gid, points in parts.items():
            xs, ys = groups.setdefault(gid, ([], []))
            xs.extend(float(x) for x in points)
            ys.extend(float(record.m) for _ in points)

    with matplotlib.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=cfg.figsize, dpi=cfg.dpi)
        colors = {"mu-spectrum": "tab:blue", "electrons": "tab:red", "trains": "tab:blue"}
        for gid, (xs, ys) in groups.items():
            collection = ax.scatter(xs, ys, s=cfg.marker_size**2, c=colors[gid], marker="o", linewidths=0, label=gid)
            collection.set_gid(gid)
        if cfg.split_policy is not None and groups:
            ax.legend(loc="upper right")
        if cfg.x_range is not None:
            ax.set_xlim(*cfg.x_range)
        if cfg.y_range is not None:
            ax.set_ylim(*cfg.y_range)
        ax.set_xlabel("ln|mu|")
        ax.set_ylabel("m")
        first = records[0]
        ls_shown = sorted({r.l for r in records})
        ax.set_title(f"{first.function_id}, l={','.join(str(l) for l in ls_shown)}")
        return _save(fig, target)


def render_distribution(F: StepDistribution, cfg: FigureConfig, path: str | Path | None = None) -> Path:
    """
    Right-continuous step plot of F, rising from 0 to its total mass.

    The step line has the SVG id ``distribution``.

    :param F: distribution with at least one jump
    :param cfg: figure configuration
    :param path: output file, defaults to ``cfg.output_path``
    :raises ValueError: if the distribution has no jumps
    :return: path of the SVG file
    """
    if len(F) == 0:
        raise ValueError(f"Distribution for m={F.m} has no jumps to draw.")
    target = _output_path(cfg, path)
    jumps = F.jumps()
    xs = [float(x) for x, _ in jumps]
    ys = [float(value) for _, value in jumps]
    pad = max(1.0, 0.05 * (xs[-1] - xs[0]))
    xs = [xs[0] - pad, *xs, xs[-1] + pad]
    ys = [0.0, *ys, ys[-1]]

    with matplotlib.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=cfg.figsize, dpi=cfg.dpi)
        (line,) = ax.step(xs, ys, where="post", color="tab:blue")
        line.set_gid("distribution")
        if cfg.x_range is not None:
            ax.set_xlim(*cfg.x_range)
        ax.set_ylim(*(cfg.y_range or (-0.02, 1.02)))
        ax.set_xlabel("x")
        ax.set_ylabel("F(x)")
        label = f"F_{{{F.l},{F.m}}}(x)" if F.l is not None else f"F_{F.m}(x)"
        ax.set_title(label)
        return _save(fig, target)
