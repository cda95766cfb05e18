"""Sparsity picture of the braiding matrix M (rows outputs, columns inputs)."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .braiding import LambdaTensor  # noqa: E402


def _tick_labels(t: LambdaTensor) -> list[str]:
    return [f"{a}{b}|{c}{d}" for (a, b) in t.basis.pairs for (c, d) in t.basis.pairs]


def sparsity_axes(ax, t: LambdaTensor, labels: bool | None = None):
    """Mark each nonzero entry of M on ``ax``.

    Ones and other nonzero values get different markers so the
    identity-like skeleton stands out from the free coefficients.
    """
    n = len(t.basis) ** 2
    m = t.to_map()
    ones, others = [], []
    for j, col in m.cols.items():
        for i, v in col.items():
            (ones if v == t.one else others).append((j, i))
    for pts, marker, name in ((ones, "s", "1"), (others, "o", "other")):
        if pts:
            xs, ys = zip(*pts)
            ax.scatter(xs, ys, marker=marker, s=max(4, 1600 / n), label=name)
    ax.set_xlim(-0.5, n - 0.5)
    ax.set_ylim(n - 0.5, -0.5)
    ax.set_aspect("equal")
    ax.set_xlabel("input")
    ax.set_ylabel("output")
    if labels is None:
        labels = n <= 36
    if labels:
        names = _tick_labels(t)
        ax.set_xticks(range(n), names, rotation=90, fontsize=6)
        ax.set_yticks(range(n), names, fontsize=6)
    ax.grid(True, linewidth=0.3, alpha=0.4)
    ax.legend(loc="upper left", bbox_to_anchor=(1.01, 1.0), fontsize=7)
    return ax


def plot_sparsity(t: LambdaTensor, path, title: str | None = None) -> Path:
    path = Path(path)
    n = len(t.basis) ** 2
    size = min(12.0, 3.0 + 0.18 * n)
    fig, ax = plt.subplots(figsize=(size, size))
    try:
        sparsity_axes(ax, t)
        ax.set_title(title or f"nonzero entries of M ({len(t.entries)} of {n * n}, {t.field})")
        fig.tight_layout()
        fig.savefig(path)
    finally:
        plt.close(fig)
    return path
