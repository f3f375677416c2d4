"""Figures for scans and the b -> 1 table. Files only; no interactive backends."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .exact import fmt_rat  # noqa: E402

COLORS = {"volume": "#444444", "cb": "#1f77b4", "mu": "#d62728", "cert": "#2ca02c"}


def _figure(width: float = 6.4, height: float | None = None):
    if height is None:
        height = width * (math.sqrt(5) - 1) / 2
    fig, ax = plt.subplots(figsize=(width, height))
    ax.tick_params(labelsize=9)
    ax.grid(alpha=0.3, linewidth=0.5)
    return fig, ax


def plot_scan(rows, path, title: str | None = None) -> Path:
    """Volume curve, capacity lower bound and best class value against ``a``."""
    path = Path(path)
    xs = [float(r.a) for r in rows]
    fig, ax = _figure()
    ax.plot(xs, [math.sqrt(float(r.volume_sq)) for r in rows], color=COLORS["volume"],
            lw=1.2, label="volume constraint")
    ax.plot(xs, [float(r.cb_lower) for r in rows], color=COLORS["cb"], lw=1, ls="--",
            marker=".", label="ECH lower bound")
    pts = [(float(r.a), float(r.mu_best)) for r in rows if r.mu_best is not None]
    if pts:
        ax.plot(*zip(*pts), color=COLORS["mu"], lw=1, marker="x", ms=4, label="best class")
    cert = [(float(r.a), math.sqrt(float(r.volume_sq))) for r in rows if r.certified]
    if cert:
        ax.scatter(*zip(*cert), s=22, facecolors="none", edgecolors=COLORS["cert"],
                   label="certified fill", zorder=3)
    ax.set_xlabel("a")
    ax.set_ylabel("scaling")
    if title is None and rows:
        title = f"b = {fmt_rat(rows[0].b)}"
    ax.set_title(title or "", fontsize=10)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_discontinuity(table, path) -> Path:
    """RF at ``b = (n+1)/n`` against n, with the value at b = 1 for reference."""
    path = Path(path)
    fig, ax = _figure()
    ns = [r.n for r in table.rows]
    ax.plot(ns, [float(r.rf) for r in table.rows], marker="o", ms=3, lw=1,
            color=COLORS["mu"], label="RF at b = (n+1)/n")
    ax.axhline(8, color=COLORS["volume"], lw=0.8, ls=":", label="8")
    ax.axhline(float(table.rf1), color=COLORS["cb"], lw=0.8, ls="--",
               label=f"RF(1) = {fmt_rat(table.rf1)}")
    ax.set_xlabel("n")
    ax.set_ylabel("RF")
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
