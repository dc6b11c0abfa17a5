"""Matplotlib rendering of boundary maps and benchmark summaries.

Report-oriented: each function returns a Figure ready for savefig, used by
the CLI to drop a PNG next to its delimited output. Class colors are fixed
by class id so panels of the same dataset stay comparable.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap

from .boundary import BoundaryGrid
from .datasets import Dataset

_PALETTE = plt.get_cmap("tab10").colors


def class_color(class_id: int):
    """Stable color per class id (1-based)."""
    return _PALETTE[(class_id - 1) % len(_PALETTE)]


def boundary_figure(grid: BoundaryGrid, data: Dataset | None = None,
                    title: str | None = None):
    """Region map with optional training scatter and border overlay."""
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    ids = np.unique(grid.labels)
    lut = {g: i for i, g in enumerate(ids)}
    img = np.vectorize(lut.get)(grid.labels)
    cmap = ListedColormap([class_color(int(g)) for g in ids])
    (x_lo, x_hi), (y_lo, y_hi) = grid.bbox
    # labels[i, j] indexes (x1, x2); imshow wants rows = vertical axis
    ax.imshow(
        img.T,
        origin="lower",
        extent=(x_lo, x_hi, y_lo, y_hi),
        cmap=cmap,
        interpolation="nearest",
        alpha=0.35,
        aspect="auto",
        vmin=0,
        vmax=max(len(ids) - 1, 1),
    )
    if np.any(grid.border):
        bx = grid.axis(0)[np.argwhere(grid.border)[:, 0]]
        by = grid.axis(1)[np.argwhere(grid.border)[:, 1]]
        ax.scatter(bx, by, s=1.0, c="0.25", marker=".", linewidths=0, label="boundary")
    if data is not None:
        for g in np.unique(data.y):
            sel = data.y == g
            ax.scatter(
                data.X[sel, 0], data.X[sel, 1],
                s=12, color=class_color(int(g)), edgecolors="white",
                linewidths=0.3, label=f"class {g}",
            )
        ax.legend(loc="best", fontsize=8)
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def bench_figure(report):
    """Grouped bars of mean test error per (dataset, model), sd as whiskers."""
    datasets = list(dict.fromkeys(r.dataset for r in report.rows))
    models = list(dict.fromkeys(r.model for r in report.rows))
    cell = {(r.dataset, r.model): r for r in report.rows}

    fig, ax = plt.subplots(figsize=(1.8 + 1.6 * len(datasets), 4.2))
    width = 0.8 / max(len(models), 1)
    for mi, model in enumerate(models):
        xs, heights, sds = [], [], []
        for di, ds in enumerate(datasets):
            row = cell.get((ds, model))
            if row is None or row.mean_error is None:
                continue
            xs.append(di + mi * width)
            heights.append(row.mean_error)
            sds.append(row.sd_error or 0.0)
        ax.bar(xs, heights, width=width, yerr=sds, capsize=2,
               color=_PALETTE[mi % len(_PALETTE)], label=model)
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(datasets))])
    ax.set_xticklabels(datasets, fontsize=9)
    ax.set_ylabel("mean test error")
    ax.set_title(f"{report.repetitions} repetitions, train fraction "
                 f"{report.train_fraction:.3f}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def save_figure(fig, path: str, dpi: int = 150) -> None:
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
