"""Matplotlib figures written next to JSON reports (Agg backend, no display)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .complexes import popcount  # noqa: E402

# PNG metadata without a version string keeps files stable across installs
_META = {"Software": None}


def _save(fig, path) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_META)
    plt.close(fig)
    return str(path)


def betti_heatmap(table, path, title: str = "") -> str:
    """Bigraded Betti numbers: rows are Tor degree ``|I| - p - 1``, columns are ``|I|``."""
    n = table.K.n
    grid = np.zeros((n + 1, n + 1), dtype=int)
    for I, p, r in table.nonzero():
        grid[popcount(I) - p - 1 if I else 0, popcount(I)] += r
    fig, ax = plt.subplots(figsize=(1 + 0.6 * (n + 1), 1 + 0.5 * (n + 1)))
    ax.imshow(grid, cmap="Blues", origin="lower")
    for i in range(n + 1):
        for j in range(n + 1):
            if grid[i, j]:
                ax.text(j, i, str(grid[i, j]), ha="center", va="center", fontsize=8)
    ax.set_xlabel("|I|")
    ax.set_ylabel("Tor degree")
    ax.set_title(title or f"bigraded Betti numbers ({table.field.name})")
    return _save(fig, path)


def degree_bars(values: list[int], path, xlabel: str, title: str) -> str:
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(range(len(values)), values, color="tab:blue")
    ax.set_xticks(range(len(values)))
    ax.set_xlabel(xlabel)
    ax.set_ylabel("dimension")
    ax.set_title(title)
    return _save(fig, path)


def verdict_counts(counts: dict[str, dict[str, int]], path, title: str) -> str:
    """Grouped bars: ``counts[group][label]``."""
    groups = sorted(counts)
    labels = sorted({lab for g in counts.values() for lab in g})
    fig, ax = plt.subplots(figsize=(6, 3.5))
    width = 0.8 / max(1, len(labels))
    for k, lab in enumerate(labels):
        ax.bar([i + k * width for i in range(len(groups))],
               [counts[g].get(lab, 0) for g in groups], width, label=lab)
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(groups))])
    ax.set_xticklabels(groups)
    ax.set_ylabel("complexes")
    ax.set_title(title)
    ax.legend(fontsize=7)
    return _save(fig, path)
