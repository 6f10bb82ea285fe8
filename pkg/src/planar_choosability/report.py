"""Figures for fuzz reports, rendered off-screen to PNG files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# fixed metadata keeps the PNG bytes stable across runs
_PNG_META = {"Software": None}


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return path


def coverage_figure(histogram: dict[str, int], path: str | Path, title: str = "") -> Path:
    """Horizontal bars of proof-case counts, log scale; missing cases in red."""
    labels = list(histogram)
    counts = [histogram[k] for k in labels]
    fig, ax = plt.subplots(figsize=(7, 0.35 * len(labels) + 1.2))
    colors = ["tab:blue" if c else "tab:red" for c in counts]
    ax.barh(range(len(labels)), [max(c, 0.5) for c in counts], color=colors)
    ax.set_yticks(range(len(labels)), labels)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("steps across corpus")
    for i, c in enumerate(counts):
        ax.text(max(c, 0.5) * 1.1, i, str(c), va="center", fontsize=8)
    if title:
        ax.set_title(title)
    return _save(fig, Path(path))


def search_figure(records: list[dict], path: str | Path, title: str = "") -> Path:
    """Oracle nodes explored against instance size, marked by outcome."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for outcome, marker in (("Found", "o"), ("Infeasible", "x"), ("Aborted", "^")):
        pts = [(r["vertices"], r["nodes"]) for r in records if r["outcome"] == outcome]
        if pts:
            xs, ys = zip(*pts)
            ax.scatter(xs, ys, s=10, marker=marker, label=f"{outcome} ({len(pts)})")
    ax.set_xlabel("vertices")
    ax.set_ylabel("search nodes")
    ax.set_yscale("log")
    ax.legend(loc="upper left", fontsize=8)
    if title:
        ax.set_title(title)
    return _save(fig, Path(path))
