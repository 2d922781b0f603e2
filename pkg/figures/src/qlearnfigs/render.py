"""Render figure datasets (CSV) to image files.

Strictly read-only over the inputs: values go from the CSV columns onto
the axes unchanged.  Output bytes are deterministic for a fixed
toolchain: the Agg/SVG backends are used headless, SVG ids are salted
with a constant, and no date metadata is written.
"""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from mpl_toolkits.axes_grid1.inset_locator import inset_axes

from .specs import SPECS, FigureSpec

matplotlib.rcParams["svg.hashsalt"] = "qlearnfigs"

_CORNERS = {"upper left": 2, "upper right": 1, "lower left": 3, "lower right": 4}


class RenderError(Exception):
    pass


def read_csv(path) -> tuple[list[str], list[dict]]:
    """Header and rows of a dataset file, skipping comment lines."""
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    rows = list(reader)
    if reader.fieldnames is None or not rows:
        raise RenderError(f"{path}: empty dataset")
    return list(reader.fieldnames), rows


def _require_columns(path, header, needed):
    missing = [c for c in needed if c not in header]
    if missing:
        raise RenderError(f"{path}: missing column(s) {missing}")


def _series_points(rows, label, column):
    xs, ys = [], []
    for row in rows:
        if row["series"] != label or row[column] == "":
            continue
        xs.append(float(row["tau"]))
        ys.append(float(row[column]))
    return xs, ys


def _render_sweep(spec: FigureSpec, paths) -> plt.Figure:
    header, rows = read_csv(paths[0])
    for extra in paths[1:]:
        h2, r2 = read_csv(extra)
        _require_columns(extra, h2, ["tau", "series"])
        rows += r2
    _require_columns(paths[0], header, ["tau", "delta_chi", "tau_qsl", "omega", "series"])
    present = {row["series"] for row in rows}
    missing = set(spec.series) - present
    if missing:
        raise RenderError(f"{spec.figure_id}: series {sorted(missing)} not in dataset")

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for label, style in spec.series.items():
        xs, ys = _series_points(rows, label, "omega")
        ax.plot(xs, ys, color=style.color, linestyle=style.linestyle, label=style.label)
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.set_title(spec.title)
    ax.legend(loc="lower right", fontsize=8)

    for inset in spec.insets:
        sub = inset_axes(ax, width="32%", height="30%", loc=_CORNERS[inset.corner])
        for label, style in spec.series.items():
            xs, ys = _series_points(rows, label, inset.quantity)
            sub.plot(xs, ys, color=style.color, linestyle=style.linestyle, linewidth=0.9)
        sub.set_title(inset.title, fontsize=7)
        sub.tick_params(labelsize=6)
    return fig


def _render_protocol(spec: FigureSpec, paths) -> plt.Figure:
    header, rows = read_csv(paths[0])
    _require_columns(paths[0], header, ["t"] + list(spec.series))
    fig, ax = plt.subplots(figsize=(5.6, 4.0))
    ts = [float(row["t"]) for row in rows]
    for column, style in spec.series.items():
        ax.plot(ts, [float(row[column]) for row in rows],
                color=style.color, linestyle=style.linestyle, label=style.label)
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.set_title(spec.title)
    ax.legend(loc="upper left", fontsize=8)
    return fig


def _render_levels(spec: FigureSpec, paths) -> plt.Figure:
    header, rows = read_csv(paths[0])
    _require_columns(paths[0], header, ["kind", "x", "n", "pt", "ho"])
    fig, ax = plt.subplots(figsize=(5.6, 4.4))
    pot = [row for row in rows if row["kind"] == "potential"]
    lev = [row for row in rows if row["kind"] == "level"]
    if not pot or not lev:
        raise RenderError(f"{spec.figure_id}: dataset needs potential and level rows")
    xs = [float(row["x"]) for row in pot]
    for column, style in spec.series.items():
        ax.plot(xs, [float(row[column]) for row in pot],
                color=style.color, linestyle=style.linestyle, label=style.label)
    span = 0.45 * (xs[-1] - xs[0])
    mid = 0.5 * (xs[0] + xs[-1])
    for row in lev:
        for column, style in spec.series.items():
            ax.hlines(float(row[column]), mid - span / 2, mid + span / 2,
                      color=style.color, linestyle=style.linestyle, linewidth=0.8)
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.set_title(spec.title)
    ax.legend(loc="upper right", fontsize=8)
    return fig


def render(figure_id: str, inputs, out_path) -> plt.Figure:
    """Render one figure preset from its CSV input(s) and write the image.

    The output format follows the file suffix (.svg or .png).
    """
    if figure_id not in SPECS:
        raise RenderError(f"unknown figure id {figure_id!r}; choose from {sorted(SPECS)}")
    spec = SPECS[figure_id]
    paths = [str(p) for p in (inputs if isinstance(inputs, (list, tuple)) else [inputs])]
    if not paths:
        raise RenderError("at least one input dataset is required")
    out_path = Path(out_path)
    if out_path.suffix not in (".svg", ".png"):
        raise RenderError("output must be .svg or .png")

    if spec.kind == "sweep":
        fig = _render_sweep(spec, paths)
    elif spec.kind == "protocol":
        fig = _render_protocol(spec, paths)
    else:
        fig = _render_levels(spec, paths)

    metadata = {"Date": None} if out_path.suffix == ".svg" else {}
    fig.savefig(out_path, dpi=150, metadata=metadata)
    return fig
