"""Runtime-versus-family-size figure for a benchmark report.

Uses the object-oriented matplotlib API with the Agg canvas, so no display
and no global pyplot state are touched.
"""

from __future__ import annotations

import math
import os

from .bench import BenchReport

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
}
FIGSIZE = (5.0, 3.4)


def plot_report(report: BenchReport, path: str | os.PathLike, title: str | None = None) -> None:
    """Save mean time per family size for both paths; the format follows the suffix."""
    import matplotlib
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.figure import Figure

    sizes = [r.family_size for r in report.rows]
    with matplotlib.rc_context(STYLE):
        fig = Figure(figsize=FIGSIZE)
        FigureCanvasAgg(fig)
        ax = fig.add_subplot()
        ax.plot(sizes, [r.t_selective_s for r in report.rows], "o-", label="selective")
        base = [(s, r.t_apriori_s) for s, r in zip(sizes, report.rows) if r.t_apriori_s is not None]
        base = [(s, t) for s, t in base if not math.isnan(t)]
        if base:
            ax.plot(*zip(*base), "s--", label="restricted Apriori")
        ax.set_xlabel("number of itemsets")
        ax.set_ylabel("mean time [s]")
        if title:
            ax.set_title(title)
        ax.grid(True, alpha=0.3)
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
