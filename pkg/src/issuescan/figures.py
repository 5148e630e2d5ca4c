"""Matplotlib rendering of evaluation results to image files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .metrics import ConfusionMatrix, MetricsReport


def render_confusion_matrix(cm: ConfusionMatrix, path) -> None:
    """Render the 2x2 matrix of true vs predicted labels as a heatmap."""
    grid = [[cm.tp, cm.fn], [cm.fp, cm.tn]]
    fig, ax = plt.subplots(figsize=(4, 3.5))
    im = ax.imshow(grid, cmap="Blues")
    ax.set_xticks([0, 1], labels=["pred positive", "pred negative"])
    ax.set_yticks([0, 1], labels=["true positive", "true negative"])
    for i in range(2):
        for j in range(2):
            ax.text(j, i, str(grid[i][j]), ha="center", va="center",
                    color="black" if grid[i][j] < max(map(max, grid)) * 0.6 else "white")
    ax.set_title("Confusion matrix")
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=120)
    plt.close(fig)


def render_metric_bars(report: MetricsReport, path) -> None:
    """Render precision/recall/F-scores as a bar chart."""
    items = [
        ("precision", report.precision),
        ("recall", report.recall),
        ("f1", report.f1),
        ("f1_positive", report.f1_positive),
        ("f1_negative", report.f1_negative),
        (f"f_beta (b={report.beta:g})", report.f_beta),
    ]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar([k for k, _ in items], [v for _, v in items], color="steelblue")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("score")
    ax.set_title("Evaluation metrics")
    ax.tick_params(axis="x", rotation=30)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=120)
    plt.close(fig)
