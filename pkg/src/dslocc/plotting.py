"""Figure rendering for sweep results.

Renders the tabulated quantities to a PNG next to the CSV: one panel per
requested quantity, one curve per indistinguishability value, time on the
horizontal axis in units of 1/gamma.  Uses the Agg backend so it works
headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .presets import SweepConfig, SweepTrack

__all__ = ["render_sweep"]

AXIS_LABELS = {
    "concurrence": "concurrence",
    "delta_c": "recovery gain",
    "probability": "success probability",
    "p_of_t": "disturbance probability",
}

plt.rcParams.update(
    {
        "figure.dpi": 120,
        "font.size": 9,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "lines.linewidth": 1.4,
    }
)


def render_sweep(config: SweepConfig, tracks: list[SweepTrack], path) -> None:
    quantities = config.outputs or ("concurrence",)
    fig, axes = plt.subplots(
        len(quantities), 1, figsize=(5.0, 2.6 * len(quantities)), squeeze=False, sharex=True
    )
    for ax, quantity in zip(axes[:, 0], quantities):
        if quantity == "p_of_t":
            ax.plot(tracks[0].gamma_t, tracks[0].p, color="k")
        else:
            for track in tracks:
                ax.plot(
                    track.gamma_t,
                    getattr(track, quantity),
                    label=f"I = {track.i_value:g}",
                )
            ax.legend(fontsize=7, loc="best")
        ax.set_ylabel(AXIS_LABELS[quantity])
        ax.set_ylim(-0.05, 1.05)
    axes[-1, 0].set_xlabel(r"$\gamma t$")
    regime = {"markovian": "Markovian", "nonmarkovian": "non-Markovian"}.get(
        config.regime, config.regime
    )
    axes[0, 0].set_title(
        f"{config.kind.value.upper()} noise, {config.statistics}s, {regime} bath", fontsize=9
    )
    fig.tight_layout()
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
