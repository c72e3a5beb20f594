"""Matplotlib renderings for the report-producing commands.

matplotlib is imported lazily with the Agg backend so figure support
never slows down or breaks headless JSON-only runs.
"""

from __future__ import annotations


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_read_degree_histogram(histogram: dict, path, title="Local repair read degrees"):
    """Bar chart of read degree -> repair count."""
    plt = _pyplot()
    degrees = sorted(int(k) for k in histogram)
    counts = [histogram[k] if k in histogram else histogram[str(k)] for k in degrees]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(degrees, counts, color="#4878b0", edgecolor="black")
    ax.set_xlabel("symbols read")
    ax.set_ylabel("repairs")
    ax.set_title(title)
    if degrees:
        ax.set_xticks(degrees)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_hierarchy_figure(dims, gaps, n, path, title="Support weight hierarchy"):
    """Support weights by level, with the gap numbers marked on the axis."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    levels = list(range(1, len(dims) + 1))
    ax.plot(levels, dims, "o-", color="#4878b0", label="d_i")
    for g in gaps:
        ax.axhline(g, color="#d65f5f", linewidth=0.6, alpha=0.5)
    ax.axhline(n, color="gray", linewidth=0.8, linestyle="--")
    ax.set_xlabel("subcode dimension i")
    ax.set_ylabel("support weight")
    ax.set_xticks(levels)
    ax.set_yticks(range(0, n + 1))
    ax.set_title(f"{title} (red lines: gaps)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
