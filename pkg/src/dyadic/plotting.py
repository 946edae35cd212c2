"""Matplotlib figures written straight to files (Agg backend, no display)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .pairs import PointSet  # noqa: E402


def plot_points(ps: PointSet, path: str, title: str | None = None) -> None:
    pts = ps.as_floats()
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(pts[:, 0], pts[:, 1], s=4, c=np.arange(len(ps)), cmap="viridis")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def plot_atlas(grid, metric: str, path: str) -> None:
    """Heatmap over seed positions; axes are the second point's coordinates."""
    fig, ax = plt.subplots(figsize=(5.5, 5))
    im = ax.imshow(grid.image(metric), origin="lower", extent=(0.5, 1, 0.5, 1),
                   cmap="magma" if metric.startswith("star") else "viridis")
    fig.colorbar(im, ax=ax, label=metric)
    ax.set_xlabel("seed x")
    ax.set_ylabel("seed y")
    ax.set_title(f"{metric}, {1 << grid.m} points")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def plot_ratios(sizes, ratios: np.ndarray, path: str) -> None:
    """Mean and min-max band of discrepancy ratios per prefix size."""
    sizes = np.asarray(sizes)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.fill_between(sizes, ratios.min(axis=0), ratios.max(axis=0), alpha=0.25, label="min-max")
    ax.plot(sizes, ratios.mean(axis=0), marker="o", label="mean")
    ax.axhline(1.0, color="gray", lw=0.8, ls="--")
    ax.set_xlabel("prefix size N")
    ax.set_ylabel("D*(random order) / D*(sequence order)")
    ax.legend()
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
