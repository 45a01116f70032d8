"""Reproduction figures: profile CSV series plus an SVG overlay per figure.

CSV is the canonical output (fixed column order; N+1 rows per series); the
SVG is a convenience rendering of the same arrays.  Vertical offsets from
the reference layouts apply to the rendering only, never to the CSV data.
Rendering is deterministic: fixed hash salt, no embedded dates.
"""
from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "chronopath"

import matplotlib.pyplot as plt
import numpy as np

from .errors import ThetaOutOfRange
from .amplitude import (
    approximant_log_profile,
    binomial_log_profile,
    gaussian_envelope,
    interference_profile,
    normalize_magnitudes,
    perturb_theta,
    theta_on_pole,
)
from .params import ModelParams

FIGURE_IDS = ("fig2", "fig3", "fig4")

# (figure_id) -> abscissa column name
_ABSCISSA = {"fig2": "x_scaled", "fig3": "t_c_scaled", "fig4": "t_c_scaled"}

_DEFAULT_OFFSETS = (0.0, 0.2, 0.4)


@dataclass(frozen=True, slots=True)
class FigureSeries:
    n_steps: int
    theta: float                 # 0.0 encodes the T-invariant (binomial) series
    normalization: str = "max"
    vertical_offset: float = 0.0


@dataclass(frozen=True, slots=True)
class FigureSpec:
    figure_id: str
    series: tuple[FigureSeries, ...]

    @property
    def abscissa(self) -> str:
        return _ABSCISSA[self.figure_id]


def default_figure_spec(
    figure_id: str,
    theta: float | None = None,
    n_list: list[int] | None = None,
    normalization: str = "max",
) -> FigureSpec:
    """Reference series layouts for each figure id."""
    if figure_id not in FIGURE_IDS:
        raise ValueError(f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}")
    if theta is None:
        theta = 2.23 * math.pi
    if figure_id == "fig2":
        ns = n_list or [10, 100, 1000]
        series = tuple(
            FigureSeries(n, 0.0, normalization, _DEFAULT_OFFSETS[i % 3])
            for i, n in enumerate(ns)
        )
    elif figure_id == "fig3":
        ns = n_list or [100, 1000, 10000]
        series = tuple(
            FigureSeries(n, theta, normalization, _DEFAULT_OFFSETS[i % 3])
            for i, n in enumerate(ns)
        )
    else:  # fig4
        ns = n_list or [300, 1200, 2600, 4600]
        series = tuple(FigureSeries(n, theta, normalization, 0.0) for n in ns)
        if n_list is None:
            series = series + (FigureSeries(1000, 0.0, normalization, 0.0),)
    return FigureSpec(figure_id, series)


@dataclass(slots=True)
class SeriesData:
    """Computed columns for one series plus its companion overlay curve."""

    series: FigureSeries
    label: str
    abscissa: np.ndarray
    magnitude: np.ndarray
    phase: np.ndarray
    companion_label: str | None = None
    companion_magnitude: np.ndarray | None = None
    companion_phase: np.ndarray | None = None
    theta_used: float = 0.0


def _series_label(figure_id: str, s: FigureSeries) -> str:
    if s.theta == 0.0:
        core = f"{figure_id}_N{s.n_steps}"
        return core if figure_id == "fig2" else core + "_theta0"
    return f"{figure_id}_N{s.n_steps}_theta{s.theta / math.pi:g}pi"


def compute_series(figure_id: str, s: FigureSeries, perturb_on_pole: bool = False) -> SeriesData:
    """Evaluate one series on the n = 0..N grid.

    A pole of the interference product raises SingularDenominator unless
    perturb_on_pole nudges theta clear; the theta actually used is
    recorded on the result.
    """
    N = s.n_steps
    if N < 1:
        raise ValueError("series n_steps must be >= 1")
    n = np.arange(N + 1)
    scaled = (2 * n - N) / math.sqrt(N)
    theta = s.theta
    if theta != 0.0 and perturb_on_pole and theta_on_pole(theta, N):
        theta = perturb_theta(theta, N)
    label = _series_label(figure_id, s)
    if theta == 0.0:
        if figure_id == "fig3":
            raise ThetaOutOfRange("fig3 is peak-centred and needs theta in (2*pi, 4*pi)")
        log_mag = binomial_log_profile(N)
        mag = normalize_magnitudes(log_mag, s.normalization)
        data = SeriesData(s, label, scaled, mag, np.zeros(N + 1), theta_used=0.0)
        if figure_id == "fig2":
            data.companion_label = label + "_envelope"
            env = gaussian_envelope(scaled, 1.0)
            data.companion_magnitude = _match_normalization(env, mag, s.normalization)
            data.companion_phase = np.zeros(N + 1)
        return data
    params = ModelParams(1.0, theta, N)
    if figure_id == "fig3":
        # validates the theta window before any peak-centred arithmetic
        ap_log, ap_phase = approximant_log_profile(params, "+")
        abscissa = scaled - 2.0 * math.pi * math.sqrt(N) / theta
    else:
        abscissa = scaled
    profile = interference_profile(params)
    mag = profile.magnitudes(s.normalization)
    data = SeriesData(s, label, abscissa, mag, profile.phase, theta_used=theta)
    if figure_id == "fig3":
        ap = normalize_magnitudes(ap_log, "max")
        data.companion_label = label + "_approx"
        data.companion_magnitude = _match_normalization(ap, mag, s.normalization)
        data.companion_phase = ap_phase
    return data


def _match_normalization(curve: np.ndarray, reference: np.ndarray, normalization: str) -> np.ndarray:
    """Scale an overlay curve (peak 1) onto the reference's normalization."""
    if normalization == "max":
        return curve
    return curve * (reference.max() / curve.max())


def _write_series_csv(path: Path, abscissa_name: str, n: np.ndarray, x, mag, phase) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", abscissa_name, "magnitude_normalized", "phase"])
        for i in range(len(n)):
            writer.writerow([int(n[i]), repr(float(x[i])), repr(float(mag[i])), repr(float(phase[i]))])


def render_figure(
    spec: FigureSpec, out_dir: Path, perturb_on_pole: bool = False, max_workers: int = 4
) -> tuple[list[Path], dict]:
    """Compute all series (in parallel), write CSVs and the SVG overlay.

    Returns (written paths, extra-params dict for the manifest).
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with ThreadPoolExecutor(max_workers=min(max_workers, max(1, len(spec.series)))) as pool:
        results = list(
            pool.map(lambda s: compute_series(spec.figure_id, s, perturb_on_pole), spec.series)
        )
    written: list[Path] = []
    for data in results:
        n = np.arange(data.series.n_steps + 1)
        path = out_dir / f"{data.label}.csv"
        _write_series_csv(path, spec.abscissa, n, data.abscissa, data.magnitude, data.phase)
        written.append(path)
        if data.companion_magnitude is not None:
            cpath = out_dir / f"{data.companion_label}.csv"
            _write_series_csv(
                cpath, spec.abscissa, n, data.abscissa, data.companion_magnitude, data.companion_phase
            )
            written.append(cpath)
    svg = out_dir / f"{spec.figure_id}.svg"
    _render_svg(spec, results, svg)
    written.append(svg)
    perturbed = {
        d.label: d.theta_used
        for d in results
        if d.theta_used != 0.0 and d.theta_used != d.series.theta
    }
    extra = {"perturbed_theta": perturbed} if perturbed else {}
    return written, extra


_XLABEL = {
    "fig2": "x / sigma_x",
    "fig3": "(t_c - t_c_peak) / sigma_t",
    "fig4": "t_c / sigma_t",
}


def _render_svg(spec: FigureSpec, results: list[SeriesData], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for data in results:
        off = data.series.vertical_offset
        if data.companion_magnitude is not None:
            # dots for the discrete values, a line for the companion curve
            ax.plot(data.abscissa, data.magnitude + off, ".", markersize=2.5, label=data.label)
            ax.plot(data.abscissa, data.companion_magnitude + off, "-", linewidth=1.0)
        else:
            ax.plot(data.abscissa, data.magnitude + off, "-", linewidth=1.0, label=data.label)
    ax.set_xlabel(_XLABEL[spec.figure_id])
    ax.set_ylabel("normalized magnitude")
    ax.legend(fontsize=7, frameon=False)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
