"""Render sweep CSV tables as raster maps.

Two kinds of input are supported, matching the CSV schemas written by the
threshold-cascade sweep commands:

* phase tables (``beta,tau,label,steps,period,agreement``) -> region-map
* ego tables (``beta,tau,mean_active,indeterminate_trials``) -> fraction-map

Rendering is a pure function of the CSV bytes and the job options: figure
size, dpi and colors are fixed, so repeated runs write identical files.
"""

from __future__ import annotations

import csv
import enum
import re
from dataclasses import dataclass
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FIGSIZE = (6.0, 4.5)
DPI = 120

# Fixed palette; Alpha(j) bands get yellows that darken with j.
PALETTE = {
    "AllActive": "#d62728",      # red
    "AllInactive": "#2ca02c",    # green
    "Frozen": "#9edae5",         # light blue
    "Oscillating2": "#1f77b4",   # blue
    "Boundary": "#7f7f7f",       # gray
}
ALPHA_BASE = "#ffffb3"
ALPHA_SHADES = ["#ffffb3", "#ffee80", "#ffdd55", "#ffcc2a", "#ffbb00",
                "#e6a800", "#cc9500", "#b38200", "#996f00", "#805c00"]
UNKNOWN_COLOR = "#e377c2"        # reserved for labels outside the taxonomy

_ALPHA_RE = re.compile(r"Alpha\((\d+)\)")


class SchemaError(ValueError):
    """Input CSV columns do not match any supported sweep table."""


class PlotKind(enum.Enum):
    REGION_MAP = "region-map"
    FRACTION_MAP = "fraction-map"


@dataclass(frozen=True)
class PlotJob:
    csv_path: str
    out_path: str
    kind: PlotKind
    curves_path: str | None = None


def _read_rows(path: str) -> tuple[list[str], list[dict[str, str]]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file, no header row")
        return list(reader.fieldnames), list(reader)


def _require(columns: list[str], needed: list[str], path: str) -> None:
    missing = [c for c in needed if c not in columns]
    if missing:
        raise SchemaError(f"{path}: missing column(s) {', '.join(missing)}")


def _axes_from_rows(rows, value_key):
    betas = sorted({float(r["beta"]) for r in rows})
    taus = sorted({float(r["tau"]) for r in rows})
    b_idx = {b: i for i, b in enumerate(betas)}
    t_idx = {t: i for i, t in enumerate(taus)}
    values = np.full((len(taus), len(betas)), None, dtype=object)
    for r in rows:
        values[t_idx[float(r["tau"])], b_idx[float(r["beta"])]] = r[value_key]
    return np.array(betas), np.array(taus), values


def _cell_edges(centers: np.ndarray) -> np.ndarray:
    if len(centers) == 1:
        half = max(abs(centers[0]) * 0.05, 0.5)
        return np.array([centers[0] - half, centers[0] + half])
    mids = (centers[:-1] + centers[1:]) / 2
    first = centers[0] - (mids[0] - centers[0])
    last = centers[-1] + (centers[-1] - mids[-1])
    return np.concatenate([[first], mids, [last]])


def label_color(label: str) -> str:
    if label in PALETTE:
        return PALETTE[label]
    m = _ALPHA_RE.fullmatch(label)
    if m:
        j = int(m.group(1))
        return ALPHA_SHADES[min(j - 1, len(ALPHA_SHADES) - 1)] \
            if j >= 1 else ALPHA_BASE
    if label == "Periodic(2)":
        # the simulate engine's name for the star-graph two-cycle
        return PALETTE["Oscillating2"]
    return UNKNOWN_COLOR


def _overlay_curves(ax, curves_path: str) -> None:
    columns, rows = _read_rows(curves_path)
    _require(columns, ["name", "beta", "value"], curves_path)
    by_name: dict[str, list[tuple[float, float]]] = {}
    for r in rows:
        by_name.setdefault(r["name"], []).append(
            (float(r["beta"]), float(r["value"])))
    for name in sorted(by_name):
        pts = sorted(by_name[name])
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                linestyle="--", linewidth=1.2, color="black")
        ax.annotate(name, pts[-1], fontsize=8)


def _finish(fig, ax, out_path: str) -> None:
    ax.set_xlabel("beta")
    ax.set_ylabel("tau")
    fig.savefig(out_path, dpi=DPI, metadata={"Software": None})
    plt.close(fig)


def _render_region_map(job: PlotJob) -> None:
    columns, rows = _read_rows(job.csv_path)
    _require(columns, ["beta", "tau", "label"], job.csv_path)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    if rows:
        betas, taus, labels = _axes_from_rows(rows, "label")
        present = sorted({str(l) for l in labels.ravel() if l is not None})
        index = {lab: i for i, lab in enumerate(present)}
        grid = np.array([[index.get(l, -1) if l is not None else -1
                          for l in row] for row in labels], dtype=float)
        grid = np.ma.masked_less(grid, 0)
        colors = [label_color(lab) for lab in present]
        cmap = matplotlib.colors.ListedColormap(colors)
        ax.pcolormesh(_cell_edges(betas), _cell_edges(taus), grid,
                      cmap=cmap, vmin=-0.5, vmax=len(present) - 0.5)
        handles = [plt.Rectangle((0, 0), 1, 1, color=label_color(lab))
                   for lab in present]
        ax.legend(handles, present, loc="upper right", fontsize=7)
    if job.curves_path:
        _overlay_curves(ax, job.curves_path)
    _finish(fig, ax, job.out_path)


def _render_fraction_map(job: PlotJob) -> None:
    columns, rows = _read_rows(job.csv_path)
    _require(columns, ["beta", "tau", "mean_active"], job.csv_path)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    if rows:
        betas, taus, vals = _axes_from_rows(rows, "mean_active")
        grid = np.array([[float(v) for v in row] for row in vals])
        mesh = ax.pcolormesh(_cell_edges(betas), _cell_edges(taus), grid,
                             cmap="RdYlGn_r", vmin=0.0, vmax=1.0)
        fig.colorbar(mesh, ax=ax, label="mean active fraction")
    if job.curves_path:
        _overlay_curves(ax, job.curves_path)
    _finish(fig, ax, job.out_path)


def render(job: PlotJob) -> None:
    """Write the image for ``job``; raises SchemaError on bad input columns."""
    Path(job.out_path).parent.mkdir(parents=True, exist_ok=True)
    if job.kind is PlotKind.REGION_MAP:
        _render_region_map(job)
    else:
        _render_fraction_map(job)
