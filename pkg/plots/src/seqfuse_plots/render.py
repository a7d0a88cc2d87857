"""Read sweep CSVs and render figures.

Rendering is read-only over its inputs and fully deterministic: a fixed
style, fixed ordering, and no timestamps, so identical CSVs produce
byte-identical image files.
"""

from __future__ import annotations

import csv
import warnings

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .specs import AXIS_LABELS, CI_FOR, CSV_COLUMNS, LABELS, FigureSpec

_STYLE = {
    "centralized": dict(color="black", marker="o", linestyle="-"),
    "dmle": dict(color="tab:red", marker="s", linestyle="--"),
    "lt-dmle": dict(color="tab:blue", marker="^", linestyle="-"),
    "lt-sdmle": dict(color="tab:green", marker="v", linestyle="--"),
    "lt-dsdmle": dict(color="tab:blue", marker="^", linestyle="-"),
    "u-sdmle": dict(color="tab:orange", marker="d", linestyle="--"),
    "u-dsdmle": dict(color="tab:purple", marker="x", linestyle=":"),
    "obs-mle": dict(color="tab:brown", marker="*", linestyle="-."),
}


class ColumnError(ValueError):
    pass


def read_rows(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = tuple(reader.fieldnames or ())
        if header != CSV_COLUMNS:
            raise ColumnError(f"{path}: unexpected header {header}; "
                              f"expected {CSV_COLUMNS}")
        return [row for row in reader]


def _series_points(rows, spec: FigureSpec, scheme: str):
    xs, ys, xerr, yerr = [], [], [], []
    for row in rows:
        if row["scheme"] != scheme:
            continue
        xs.append(float(row[spec.x_column]))
        ys.append(float(row[spec.y_column]))
        xerr.append(float(row[CI_FOR[spec.x_column]]) if spec.x_column in CI_FOR else 0.0)
        yerr.append(float(row[CI_FOR[spec.y_column]]) if spec.y_column in CI_FOR else 0.0)
    order = sorted(range(len(xs)), key=lambda i: xs[i])
    pick = lambda seq: [seq[i] for i in order]
    return pick(xs), pick(ys), pick(xerr), pick(yerr)


def render(csv_path, spec: FigureSpec, out_path) -> None:
    """Render one figure from one sweep CSV; missing schemes are skipped."""
    for col in (spec.x_column, spec.y_column):
        if col not in CSV_COLUMNS:
            raise ColumnError(f"unknown column {col!r}; available: {CSV_COLUMNS}")
    rows = read_rows(csv_path)
    fig, ax = plt.subplots(figsize=(6.4, 4.4), dpi=130)
    plotted = 0
    for scheme in spec.series:
        xs, ys, xerr, yerr = _series_points(rows, spec, scheme)
        if not xs:
            warnings.warn(f"{spec.figure_id}: no rows for scheme {scheme!r} in {csv_path}")
            continue
        style = _STYLE.get(scheme, {})
        ax.errorbar(xs, ys, yerr=yerr or None,
                    xerr=xerr if any(xerr) else None,
                    label=LABELS.get(scheme, scheme), markersize=4.5,
                    capsize=2.0, linewidth=1.3, **style)
        plotted += 1
    if spec.log_x:
        ax.set_xscale("log")
    if spec.log_y:
        ax.set_yscale("log")
    ax.set_xlabel(AXIS_LABELS.get(spec.x_column, spec.x_column))
    ax.set_ylabel(AXIS_LABELS.get(spec.y_column, spec.y_column))
    ax.set_title(spec.title or spec.figure_id)
    ax.grid(True, which="both", alpha=0.3)
    if plotted:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, format="png", metadata={"Software": "seqfuse-plots"})
    plt.close(fig)
