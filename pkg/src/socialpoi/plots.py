"""Matplotlib figures written next to the tabular reports."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from socialpoi.core import Dataset, PoiConfig  # noqa: E402
from socialpoi.hull import BoundaryPolygon, Degenerate  # noqa: E402
from socialpoi.isobest import BoundaryEstimate  # noqa: E402
from socialpoi.report import METHODS, BenchRow, CompareRow, LinearFit  # noqa: E402

_COLORS = {"sobest": "#4c72b0", "isobest": "#dd8452", "dbscan": "#55a868"}


def _finish(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_boundary(dataset: Dataset, config: PoiConfig, est: BoundaryEstimate,
                  poly: BoundaryPolygon, path, title: str | None = None):
    """Records, hull and the initial/final centers on a lon/lat map."""
    fig, ax = plt.subplots(figsize=(6, 6))
    rel = dataset.relevant_mask
    lats, lons = dataset.lats, dataset.lons
    ax.scatter(lons[~rel], lats[~rel], s=3, c="0.75", label="irrelevant", linewidths=0)
    ax.scatter(lons[rel], lats[rel], s=6, c="tab:red", alpha=0.6, label="relevant", linewidths=0)
    if poly.degenerate is not Degenerate.EMPTY:
        ring = poly.ring()
        ax.plot([v.lon for v in ring], [v.lat for v in ring], "k-", lw=1.2, label="boundary")
    ax.plot(config.c0.lon, config.c0.lat, "D", c="tab:green", ms=9, label="c0")
    ax.plot(est.center.lon, est.center.lat, "D", c="tab:blue", ms=9, label="c*")

    pad = max(est.radius, config.r_cover) * 1.5
    dlat = pad / 111_195.0
    dlon = dlat / max(math.cos(math.radians(est.center.lat)), 1e-6)
    ax.set_xlim(est.center.lon - dlon, est.center.lon + dlon)
    ax.set_ylim(est.center.lat - dlat, est.center.lat + dlat)
    ax.set_aspect(1.0 / max(math.cos(math.radians(est.center.lat)), 1e-6))
    ax.set_xlabel("longitude")
    ax.set_ylabel("latitude")
    ax.set_title(title or f"{config.name} (alpha={config.alpha:g}, BEQ={est.beq:.3f})")
    ax.legend(loc="upper right", fontsize=8)
    return _finish(fig, path)


def plot_compare(rows: Sequence[CompareRow], path, title: str = "BEQ by method"):
    alphas = sorted({r.alpha for r in rows})
    fig, ax = plt.subplots(figsize=(6, 3.8))
    width = 0.8 / len(METHODS)
    x = np.arange(len(alphas))
    for k, m in enumerate(METHODS):
        vals = [next((r.beq for r in rows if r.method == m and r.alpha == a), 0.0) for a in alphas]
        ax.bar(x + (k - (len(METHODS) - 1) / 2) * width, vals, width, label=m, color=_COLORS[m])
    ax.set_xticks(x, [f"alpha={a:g}" for a in alphas])
    ax.set_ylabel("BEQ")
    ax.set_title(title)
    ax.legend(fontsize=8)
    return _finish(fig, path)


def plot_bench(rows: Sequence[BenchRow], fit: LinearFit, path):
    n = np.array([r.n_all for r in rows], dtype=float)
    t = np.array([r.mean_runtime for r in rows]) * 1e3
    s = np.array([r.stdev for r in rows]) * 1e3
    fig, ax = plt.subplots(figsize=(6, 3.8))
    ax.errorbar(n, t, yerr=s, fmt="o-", capsize=3, label="measured")
    ax.plot(n, (fit.slope * n + fit.intercept) * 1e3, "k:", label=f"linear fit (R²={fit.r2:.3f})")
    ax.set_xlabel("number of records")
    ax.set_ylabel("runtime (ms)")
    ax.legend(fontsize=8)
    return _finish(fig, path)
