"""Matplotlib renderings written next to the delimited outputs.

Headless by construction: the Agg backend is forced before pyplot is
imported, so figure rendering works in batch jobs and containers.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _footer(fig, provenance: str | None) -> None:
    if provenance:
        fig.text(0.99, 0.01, provenance, ha="right", va="bottom",
                 fontsize=5, color="0.5", family="monospace")


def save_adjacency_heatmap(adjacency: np.ndarray, path, title: str = "Weighted adjacency",
                           block_size: int | None = None,
                           provenance: str | None = None) -> None:
    """Heatmap of a weighted adjacency matrix, optionally with block outlines."""
    adjacency = np.asarray(adjacency, dtype=float)
    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    image = ax.imshow(adjacency, cmap="viridis", interpolation="nearest")
    fig.colorbar(image, ax=ax, fraction=0.046, pad=0.04)
    if block_size and block_size > 0:
        p = adjacency.shape[0]
        for start in range(0, p, block_size):
            ax.add_patch(
                plt.Rectangle(
                    (start - 0.5, start - 0.5),
                    block_size,
                    block_size,
                    fill=False,
                    edgecolor="red",
                    linestyle="--",
                    linewidth=0.8,
                )
            )
    ax.set_title(title)
    ax.set_xlabel("node")
    ax.set_ylabel("node")
    fig.tight_layout()
    _footer(fig, provenance)
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_benchmark_f1(summary_rows: list, path, provenance: str | None = None) -> None:
    """F1 versus sample size, one errorbar curve per method and tuning mode."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    methods = sorted({row["method"] for row in summary_rows})
    for method in methods:
        rows = sorted((r for r in summary_rows if r["method"] == method), key=lambda r: r["n"])
        ns = [r["n"] for r in rows]
        ax.errorbar(
            ns,
            [r["f1_mean"] for r in rows],
            yerr=[r["f1_std"] for r in rows],
            marker="o",
            capsize=3,
            label=f"{method} (grid best)",
        )
        ax.errorbar(
            ns,
            [r["f1_bic_mean"] for r in rows],
            yerr=[r["f1_bic_std"] for r in rows],
            marker="s",
            linestyle="--",
            capsize=3,
            label=f"{method} (BIC)",
        )
    ax.set_xscale("log", base=2)
    ax.set_xlabel("sample size n")
    ax.set_ylabel("F1 score")
    ax.set_ylim(0.0, 1.0)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    _footer(fig, provenance)
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_benchmark_timing(summary_rows: list, path, provenance: str | None = None) -> None:
    """Mean wall-clock seconds per run versus sample size."""
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    methods = sorted({row["method"] for row in summary_rows})
    for method in methods:
        rows = sorted((r for r in summary_rows if r["method"] == method), key=lambda r: r["n"])
        ax.plot(
            [r["n"] for r in rows],
            [r["seconds_mean"] for r in rows],
            marker="o",
            label=method,
        )
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("sample size n")
    ax.set_ylabel("mean seconds per run")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    _footer(fig, provenance)
    fig.savefig(path, dpi=150)
    plt.close(fig)
