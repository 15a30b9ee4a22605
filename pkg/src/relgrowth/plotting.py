"""SVG figures of a fitted log-log relation.

Figures are built on a bare :class:`matplotlib.figure.Figure` (no pyplot
state) and saved as self-contained SVG.  Text stays as ``<text>`` elements
and the main artists carry stable ids, so the files can be checked
programmatically:

``observations``   scatter of ``(ln x, ln y)``
``fitted-line``    the OLS line over the observed ``ln x`` range
``isometry-line``  slope-1 line through the data centroid
``caption``        the fitted power-law text
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib
import numpy as np
from matplotlib.figure import Figure

SVG_RC = {
    "svg.fonttype": "none",
    "svg.hashsalt": "relgrowth",
    "font.size": 10,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def fit_figure(
    ln_x: Sequence[float],
    ln_y: Sequence[float],
    intercept: float,
    slope: float,
    *,
    target: str,
    reference: str,
    caption: str,
    width: float = 6.0,
) -> Figure:
    x = np.asarray(ln_x, dtype=float)
    y = np.asarray(ln_y, dtype=float)
    xs = np.array([x.min(), x.max()])

    fig = Figure(figsize=(width, width * 0.75))
    ax = fig.add_subplot(1, 1, 1)
    ax.plot(x, y, linestyle="none", marker="o", markersize=4, color="0.2", gid="observations")
    ax.plot(xs, intercept + slope * xs, color="C3", linewidth=1.5,
            label=f"fit, B = {slope:.3f}", gid="fitted-line")
    ax.plot(xs, y.mean() + (xs - x.mean()), color="0.5", linestyle="--", linewidth=1.0,
            label="B = 1 through centroid", gid="isometry-line")
    ax.set_xlabel(f"ln x_t ({reference} growth rate)")
    ax.set_ylabel(f"ln y_t ({target} growth rate)")
    ax.legend(loc="best", frameon=False, fontsize=8)
    fig.text(0.5, 0.01, caption, ha="center", va="bottom", fontsize=9, gid="caption")
    fig.subplots_adjust(bottom=0.2)
    return fig


def save_svg(fig: Figure, path: str | Path) -> Path:
    path = Path(path)
    with matplotlib.rc_context(SVG_RC):
        fig.savefig(path, format="svg", metadata={"Date": None})
    return path


def render_fit_svg(
    ln_x: Sequence[float],
    ln_y: Sequence[float],
    intercept: float,
    slope: float,
    path: str | Path,
    *,
    target: str,
    reference: str,
    caption: str,
) -> Path:
    with matplotlib.rc_context(SVG_RC):
        fig = fit_figure(ln_x, ln_y, intercept, slope,
                         target=target, reference=reference, caption=caption)
        return save_svg(fig, path)
