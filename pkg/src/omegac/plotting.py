"""Timing figure for suite runs."""
from __future__ import annotations

from typing import Sequence

VERDICT_COLOURS = {"pass": "#3a7d44", "fail": "#c0392b", "skipped": "#9e9e9e"}


def plot_timings(reports: Sequence, path: str) -> str:
    """Horizontal bars of per-check wall time, coloured by verdict; writes a PNG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Patch

    labels = [f"{r.name} {r.target}" for r in reports]
    times = [max(r.wall_time, 1e-6) for r in reports]
    colours = [VERDICT_COLOURS[r.verdict] for r in reports]
    height = max(2.5, 0.22 * len(reports) + 1.0)
    fig, ax = plt.subplots(figsize=(8, height))
    y = list(range(len(reports)))
    ax.barh(y, times, color=colours)
    ax.set_yticks(y)
    ax.set_yticklabels(labels, fontsize=7)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("wall time (s)")
    ax.legend(handles=[Patch(color=c, label=v) for v, c in VERDICT_COLOURS.items()],
              loc="lower right", fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120, format="png")
    plt.close(fig)
    return path
