"""Static SVG rendering of spectrum runs.

matplotlib is imported lazily so the core pipeline never pays for it; the
Agg backend keeps rendering headless. Inputs are plain (xs, ys) sequences,
already in threshold/count units. The y-axis is log-scaled, so zero values
are floored at 0.1 for display only.
"""
from __future__ import annotations

from typing import Optional, Sequence

ESTIMATE_COLOR = "#1f77b4"  # blue
BASELINE_COLOR = "#2ca02c"  # green
EXACT_COLOR = "#000000"  # black
SCATTER_COLOR = "#9e9e9e"  # grey

_FLOOR = 0.1

XY = tuple[Sequence[float], Sequence[float]]


def render_spectrum_svg(
    path: str,
    scatter: Optional[XY] = None,
    estimate: Optional[XY] = None,
    baseline: Optional[XY] = None,
    exact: Optional[XY] = None,
    title: Optional[str] = None,
) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8.0, 5.0))
    if scatter is not None:
        xs, ys = scatter
        ax.scatter(
            list(xs),
            [max(y, _FLOOR) for y in ys],
            s=6,
            color=SCATTER_COLOR,
            alpha=0.35,
            linewidths=0,
            label="sampled paths",
            zorder=1,
        )
    for xy, color, label in (
        (exact, EXACT_COLOR, "exact"),
        (baseline, BASELINE_COLOR, "baseline"),
        (estimate, ESTIMATE_COLOR, "estimate"),
    ):
        if xy is None:
            continue
        xs, ys = xy
        ax.step(
            list(xs),
            [max(y, _FLOOR) for y in ys],
            where="post",
            color=color,
            label=label,
            linewidth=1.8,
            zorder=2,
        )
    ax.set_yscale("log")
    ax.set_xlabel("frequency threshold")
    ax.set_ylabel("number of frequent itemsets")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
