"""Result emission: a delimited table and grouped-bar figures.

Both outputs are deterministic: rows follow a fixed (ablation, condition,
presentation, match level) order with fixed float formatting, and figures
are rendered to SVG with a pinned hash salt and no timestamp metadata, so
identical results produce byte-identical files.
"""
from __future__ import annotations

from pathlib import Path
from typing import Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .generalization import GenResult, MatchLevel

ResultKey = tuple[str, str, str]  # (ablation, condition, presentation)

CSV_HEADER = "condition,presentation,ablation,match_level,p_gen,raw_mean"
LEVEL_ORDER = (MatchLevel.SUBORDINATE, MatchLevel.BASIC, MatchLevel.SUPERORDINATE)
SVG_HASHSALT = "wordgen"

_BAR_COLORS = {"subordinate": "#4c72b0", "basic": "#dd8452", "superordinate": "#55a868"}


def render_csv(results: Mapping[ResultKey, GenResult]) -> str:
    """Render results as delimited text, one row per (cell, match level).

    p_gen is printed in fixed notation; raw means are tiny products of
    per-feature probabilities, so they use scientific notation to stay
    meaningful at six decimal places.
    """
    lines = [CSV_HEADER]
    for (ablation, condition, presentation), result in results.items():
        for level in LEVEL_ORDER:
            if level not in result.p_gen:
                continue
            lines.append(
                f"{condition},{presentation},{ablation},{level.value},"
                f"{result.p_gen[level]:.6f},{result.raw_means[level]:.6e}"
            )
    return "\n".join(lines) + "\n"


def emit_csv(results: Mapping[ResultKey, GenResult], path: str | Path) -> Path:
    path = Path(path)
    path.write_text(render_csv(results))
    return path


def build_figure(results: Mapping[ResultKey, GenResult]) -> "matplotlib.figure.Figure":
    """Grouped bar charts: one axes per (ablation, presentation), bars for
    each match level grouped by training condition, preference axis capped
    at 1.0 so the subordinate bars touch the top."""
    ablations = list(dict.fromkeys(key[0] for key in results))
    presentations = list(dict.fromkeys(key[2] for key in results))
    conditions = list(dict.fromkeys(key[1] for key in results))
    if not ablations:
        raise ValueError("no results to plot")

    n_rows, n_cols = len(ablations), len(presentations)
    fig, axes = plt.subplots(
        n_rows, n_cols, figsize=(4.2 * n_cols, 3.2 * n_rows), squeeze=False
    )
    width = 0.8 / len(LEVEL_ORDER)
    for row, ablation in enumerate(ablations):
        for col, presentation in enumerate(presentations):
            ax = axes[row][col]
            for i, level in enumerate(LEVEL_ORDER):
                offsets = [c + (i - 1) * width for c in range(len(conditions))]
                heights = [
                    results[(ablation, cond, presentation)].p_gen.get(level, 0.0)
                    for cond in conditions
                ]
                ax.bar(
                    offsets,
                    heights,
                    width=width,
                    color=_BAR_COLORS[level.value],
                    label=f"{level.value} match",
                )
            ax.set_xticks(range(len(conditions)))
            ax.set_xticklabels(conditions, fontsize=8)
            ax.set_ylim(0.0, 1.0)
            ax.set_yticks([0.0, 0.5, 1.0])
            ax.set_xlabel("training condition", fontsize=9)
            ax.set_ylabel("generalization preference", fontsize=9)
            title = presentation if len(ablations) == 1 else f"{presentation} ({ablation})"
            ax.set_title(title, fontsize=10)
    axes[0][-1].legend(fontsize=8, frameon=False, loc="upper right")
    fig.tight_layout()
    return fig


def emit_svg(results: Mapping[ResultKey, GenResult], path: str | Path) -> Path:
    path = Path(path)
    fig = build_figure(results)
    try:
        with plt.rc_context({"svg.hashsalt": SVG_HASHSALT}):
            fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    return path
