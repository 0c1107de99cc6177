"""Parameter sweeps and figure presets with a fixed delimited output schema.

A sweep evaluates the closed forms over a time grid for a set of
indistinguishability targets and serializes the result as CSV with the
columns

    gamma_t,p,I,statistics,channel,concurrence,delta_c,probability

in deterministic order (targets outer, time inner), floats printed with 12
significant digits, UTF-8, LF line endings.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .channels import ChannelKind, LorentzianBath, bath_for_regime, p_analytic
from .entanglement import concurrence_closed, delta_C, success_probability_closed
from .errors import DomainError
from .protocol import spec_for_target_I

__all__ = [
    "CSV_HEADER",
    "DEFAULT_I_GRID",
    "FIGURE_PRESETS",
    "FigurePreset",
    "SweepConfig",
    "compute_sweep",
    "sweep_csv",
]

CSV_HEADER = "gamma_t,p,I,statistics,channel,concurrence,delta_c,probability"

DEFAULT_I_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)

QUANTITIES = ("concurrence", "delta_c", "probability", "p_of_t")


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


@dataclass(frozen=True)
class SweepConfig:
    """Everything needed to tabulate one channel in one bath regime."""

    kind: ChannelKind
    regime: str = "markovian"  # markovian | nonmarkovian | custom
    gamma: float = 1.0
    lam: float | None = None  # only for the custom regime
    i_values: tuple[float, ...] = DEFAULT_I_GRID
    statistics: str = "fermion"
    t_max: float = 10.0  # in units of 1/gamma
    n_points: int = 201
    outputs: tuple[str, ...] = ("concurrence", "delta_c", "probability")

    def __post_init__(self):
        if self.statistics not in ("fermion", "boson"):
            raise DomainError(f"statistics must be fermion or boson, got {self.statistics!r}")
        if self.n_points < 2:
            raise DomainError("a sweep needs at least 2 time points")
        if not self.t_max > 0:
            raise DomainError("t_max must be positive")
        for value in self.i_values:
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"indistinguishability values must lie in [0, 1], got {value}")
        for q in self.outputs:
            if q not in QUANTITIES:
                raise DomainError(f"unknown output quantity {q!r}")

    @property
    def eta(self) -> int:
        return -1 if self.statistics == "fermion" else +1

    def bath(self) -> LorentzianBath:
        return bath_for_regime(self.regime, self.gamma, self.lam)


@dataclass(frozen=True)
class FigurePreset:
    """A canned sweep: one channel, one plotted quantity.

    The amplitude-damping family is fig2 (concurrence), fig3 (recovery gain)
    and fig4 (success probability); dephasing is fig5-fig7 in the same
    order; white noise is fig8 (concurrence) and fig9 (success probability).
    Each renders as curves over gamma*t, one per indistinguishability value,
    in either bath regime.
    """

    id: str
    kind: ChannelKind
    quantity: str

    def resolve(
        self,
        regime: str = "markovian",
        statistics: str = "fermion",
        gamma: float = 1.0,
        lam: float | None = None,
        t_max: float | None = None,
        n_points: int | None = None,
        i_values: tuple[float, ...] | None = None,
    ) -> SweepConfig:
        # the oscillatory regime needs a long window: the concurrence
        # revival period is 4*pi/sqrt(2*gamma*lam - lam^2) ~ 89/gamma
        if t_max is None:
            t_max = 100.0 if regime == "nonmarkovian" else 10.0
        if n_points is None:
            n_points = 501 if regime == "nonmarkovian" else 201
        return SweepConfig(
            kind=self.kind,
            regime=regime,
            gamma=gamma,
            lam=lam,
            i_values=DEFAULT_I_GRID if i_values is None else i_values,
            statistics=statistics,
            t_max=t_max,
            n_points=n_points,
            outputs=(self.quantity,),
        )


FIGURE_PRESETS = {
    "fig2": FigurePreset("fig2", ChannelKind.ADC, "concurrence"),
    "fig3": FigurePreset("fig3", ChannelKind.ADC, "delta_c"),
    "fig4": FigurePreset("fig4", ChannelKind.ADC, "probability"),
    "fig5": FigurePreset("fig5", ChannelKind.PDC, "concurrence"),
    "fig6": FigurePreset("fig6", ChannelKind.PDC, "delta_c"),
    "fig7": FigurePreset("fig7", ChannelKind.PDC, "probability"),
    "fig8": FigurePreset("fig8", ChannelKind.DEP, "concurrence"),
    "fig9": FigurePreset("fig9", ChannelKind.DEP, "probability"),
}


@dataclass(frozen=True)
class SweepTrack:
    """Computed arrays for a single indistinguishability value."""

    i_value: float
    gamma_t: np.ndarray
    p: np.ndarray
    concurrence: np.ndarray
    delta_c: np.ndarray
    probability: np.ndarray


def compute_sweep(config: SweepConfig) -> list[SweepTrack]:
    """Evaluate the closed forms on the configured grid.

    Every (I, t) point is independent, so this could be farmed out to a
    worker pool; rows are assembled in deterministic order either way.
    """
    bath = config.bath()
    gamma_t = np.linspace(0.0, config.t_max, config.n_points)
    times = gamma_t / config.gamma
    p = p_analytic(times, bath)
    tracks = []
    for i_value in config.i_values:
        spec = spec_for_target_I(float(i_value), config.eta)
        tracks.append(
            SweepTrack(
                i_value=float(i_value),
                gamma_t=gamma_t,
                p=p,
                concurrence=np.atleast_1d(concurrence_closed(config.kind, spec, p)),
                delta_c=np.atleast_1d(delta_C(config.kind, spec, p)),
                probability=np.atleast_1d(success_probability_closed(config.kind, spec, p)),
            )
        )
    return tracks


def sweep_csv(config: SweepConfig, tracks: list[SweepTrack] | None = None) -> str:
    """Serialize a sweep deterministically; see the module docstring."""
    if tracks is None:
        tracks = compute_sweep(config)
    lines = [CSV_HEADER]
    channel = config.kind.value
    for track in tracks:
        for k in range(track.gamma_t.size):
            lines.append(
                ",".join(
                    (
                        _fmt(track.gamma_t[k]),
                        _fmt(track.p[k]),
                        _fmt(track.i_value),
                        config.statistics,
                        channel,
                        _fmt(track.concurrence[k]),
                        _fmt(track.delta_c[k]),
                        _fmt(track.probability[k]),
                    )
                )
            )
    return "\n".join(lines) + "\n"
