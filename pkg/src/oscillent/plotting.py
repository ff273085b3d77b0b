"""Static SVG line plots for sweep tables."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

golden_mean = (np.sqrt(5) - 1.0) / 2.0
fig_width = 6.0

# fixed hash salt and no date stamp so the same table gives the same bytes
params = {
    "figure.figsize": [fig_width, fig_width * golden_mean],
    "font.family": "serif",
    "font.size": 9,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "lines.linewidth": 1.2,
    "svg.hashsalt": "oscillent",
    "svg.fonttype": "path",
}

_LABELS = {
    "sin_theta": r"$\sin\theta$",
    "r": r"$r=\omega_c/\omega_2$",
    "t_tilde": r"$\tilde t$",
    "S_v": r"$S_v$",
    "K": r"$K$",
}


def _series_label(name: str) -> str:
    head, _, rest = name.partition("_")
    if name.startswith("S_v_"):
        n, m = name[4:].split("_")
        return f"$S_v$ ({n},{m})"
    if head == "K" and rest:
        n, m = rest.split("_")
        return f"$K$ ({n},{m})"
    return _LABELS.get(name, name)


def _draw(table, ax) -> None:
    cols = list(table.columns)
    if table.kind == "dynamics":
        s_col = table.column("sin_theta")
        for s in dict.fromkeys(s_col.tolist()):
            mask = s_col == s
            ax.plot(table.column("t_tilde")[mask], table.column("S_v")[mask], label=rf"$\sin\theta={s:g}$")
        ax.set_xlabel(_LABELS["t_tilde"])
        ax.set_ylabel(_LABELS["S_v"])
        return
    x_name = cols[0]
    x = table.column(x_name)
    for name in cols[1:]:
        if name == "sin_theta":
            continue
        ax.plot(x, table.column(name), label=_series_label(name))
    ax.set_xlabel(_LABELS.get(x_name, x_name))


def render_table(table, destination) -> None:
    """Render one line per data column and save as SVG."""
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        try:
            _draw(table, ax)
            ax.legend(frameon=False)
            fig.tight_layout()
            fig.savefig(destination, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
