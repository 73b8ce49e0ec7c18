"""Figure rendering for sweep output.

Uses the object-oriented matplotlib API with an Agg canvas, so no global
backend state is touched and rendering works headless.
"""

from __future__ import annotations

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

_STYLES = [
    {"color": "tab:red", "linestyle": "--"},
    {"color": "tab:blue", "linestyle": ":"},
    {"color": "tab:blue", "linestyle": "-"},
    {"color": "tab:green", "linestyle": "-."},
]


def render_sweep_figure(rows, crossings, path) -> None:
    """Plot the right-deficit curves over p, one line per eps, to ``path``.

    Zero line marks the polygamy/monogamy boundary; crossing points from the
    summary are drawn as markers on it.
    """
    by_eps: dict[float, list] = {}
    for row in rows:
        by_eps.setdefault(row.eps, []).append(row)

    fig = Figure(figsize=(6.4, 4.2), dpi=150)
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)
    for k, eps in enumerate(sorted(by_eps)):
        curve = sorted(by_eps[eps], key=lambda r: r.p)
        ax.plot(
            [r.p for r in curve],
            [r.delta_right_a for r in curve],
            label=rf"$\varepsilon = {eps:g}$",
            linewidth=1.6,
            **_STYLES[k % len(_STYLES)],
        )
    ax.axhline(0.0, color="0.6", linewidth=0.8)
    for eps in sorted(crossings):
        for p_star in crossings[eps]:
            ax.plot([p_star], [0.0], marker="o", markersize=4, color="0.3", zorder=5)
    ax.set_xlabel(r"$p$")
    ax.set_ylabel("right monogamy deficit of A (bits)")
    ax.set_title("polygamy-to-monogamy transition")
    ax.legend(loc="best", frameon=False)
    fig.tight_layout()
    fig.savefig(path)
