"""Self-contained SVG boxplots of simulated losses."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .simulate import RiskSummary

METRIC_LABELS = {"l2": "squared $l_2$ loss", "hellinger": "squared Hellinger loss", "l1": "$l_1$ loss"}
FILLS = {"empirical": "white", "rearrangement": "lightgrey", "grenander": "dimgrey", "flat": "#9ecae1"}


def write_boxplot_svg(summaries: Sequence[RiskSummary], path: Path, title: str) -> None:
    """One box per estimator; whiskers at 1.5 IQR, outliers drawn as points."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({"svg.hashsalt": "monopmf", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(5, 3.5))
        box = ax.boxplot([s.losses for s in summaries], whis=1.5, patch_artist=True,
                         tick_labels=[s.estimator for s in summaries])
        for patch, s in zip(box["boxes"], summaries):
            patch.set_facecolor(FILLS.get(s.estimator, "white"))
        for median in box["medians"]:
            median.set_color("black")
        ax.set_ylabel(METRIC_LABELS.get(summaries[0].metric, summaries[0].metric))
        ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
