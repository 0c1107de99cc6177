"""Time-dependent noise channels driven by a Lorentzian bath.

Each qubit couples to its own zero-temperature bosonic reservoir with a
Lorentzian spectral density of width ``lam`` centered on the transition
frequency, with coupling rate ``gamma``.  The surviving excitation amplitude
q(t) obeys the memory-kernel equation

    dq/dt = -integral_0^t f(t - s) q(s) ds,    q(0) = 1,

with kernel f(tau) = (gamma * lam / 2) * exp(-lam * tau), and the disturbance
probability fed to the Kraus operators is p(t) = 1 - q(t)^2.  In closed form

    q(t) = exp(-lam t / 2) [cos(d t / 2) + (lam / d) sin(d t / 2)],
    d = sqrt(2 gamma lam - lam^2),

which continues analytically (cos -> cosh, sin -> sinh with |d|) in the weak
coupling regime lam > 2 gamma where d^2 < 0.  See Breuer & Petruccione,
"The Theory of Open Quantum Systems" (OUP 2002), ch. 10.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ContractError, DomainError, NumericalError, ZeroNormState
from .nolabel import (
    SP_DIM,
    EnsembleState,
    Mode,
    apply_sp_map,
    normalize_ket,
    tp_inner,
)

__all__ = [
    "LorentzianBath",
    "ChannelKind",
    "KrausSet",
    "p_analytic",
    "p_numeric",
    "kraus_set",
    "evolve_AB",
    "spin_map_on_mode",
    "bath_for_regime",
]


@dataclass(frozen=True)
class LorentzianBath:
    """Bath parameters.

    ``gamma`` is the system-reservoir coupling rate (sets the relaxation time
    ~ 1/gamma), ``lam`` the spectral width (sets the reservoir correlation
    time ~ 1/lam).  ``omega0`` is the nominal transition frequency; the
    memory kernel depends only on the detuning from it, so it never enters
    any numerical result.
    """

    gamma: float
    lam: float
    omega0: float = 1.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")
        if not self.lam > 0:
            raise DomainError(f"lam must be positive, got {self.lam}")

    @property
    def relaxation_time(self) -> float:
        return 1.0 / self.gamma

    @property
    def correlation_time(self) -> float:
        return 1.0 / self.lam

    @property
    def d_squared(self) -> float:
        """Square of the oscillation rate; negative in the weak-coupling
        (Markovian, lam > 2 gamma) regime."""
        return 2.0 * self.gamma * self.lam - self.lam**2

    @property
    def is_markovian(self) -> bool:
        return self.lam >= 2.0 * self.gamma

    def kernel(self, tau):
        """Memory kernel f(tau), the Fourier transform of the spectral
        density with respect to the detuning."""
        return 0.5 * self.gamma * self.lam * np.exp(-self.lam * np.asarray(tau))


def bath_for_regime(regime: str, gamma: float = 1.0, lam: float | None = None) -> LorentzianBath:
    """Named parameter regimes: 'markovian' (lam = 5 gamma), 'nonmarkovian'
    (lam = 0.01 gamma) or 'custom' (explicit lam)."""
    if regime == "markovian":
        return LorentzianBath(gamma, 5.0 * gamma)
    if regime == "nonmarkovian":
        return LorentzianBath(gamma, 0.01 * gamma)
    if regime == "custom":
        if lam is None:
            raise DomainError("custom regime requires an explicit spectral width")
        return LorentzianBath(gamma, lam)
    raise DomainError(f"unknown regime {regime!r}")


def _envelope(t: np.ndarray, bath: LorentzianBath) -> np.ndarray:
    """The amplitude envelope q(t), evaluated on the real branch."""
    lam = bath.lam
    d2 = bath.d_squared
    if d2 > 0.0:
        d = np.sqrt(d2)
        return np.exp(-0.5 * lam * t) * (np.cos(0.5 * d * t) + (lam / d) * np.sin(0.5 * d * t))
    if d2 < 0.0:
        # hyperbolic branch, written without cosh/sinh to avoid overflow:
        # q = ((1 + lam/|d|) exp(-(lam-|d|)t/2) + (1 - lam/|d|) exp(-(lam+|d|)t/2)) / 2
        d = np.sqrt(-d2)
        return 0.5 * (
            (1.0 + lam / d) * np.exp(-0.5 * (lam - d) * t)
            + (1.0 - lam / d) * np.exp(-0.5 * (lam + d) * t)
        )
    return np.exp(-0.5 * lam * t) * (1.0 + 0.5 * lam * t)


def p_analytic(t, bath: LorentzianBath):
    """Disturbance probability p(t) = 1 - q(t)^2 from the closed form.

    Accepts a scalar or an array of times; negative times are rejected.
    The result is clamped to [0, 1] (roundoff only; the exact expression
    already lies in that interval).
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0):
        raise DomainError("time must be nonnegative")
    q = _envelope(arr, bath)
    p = np.clip(1.0 - q * q, 0.0, 1.0)
    p = np.where(arr == 0.0, 0.0, p)  # q(0) = 1 exactly
    return float(p) if np.isscalar(t) or arr.ndim == 0 else p


def p_numeric(t, bath: LorentzianBath):
    """Disturbance probability from a direct solve of the memory-kernel
    equation, p = 1 - q(t)^2.

    The exponential kernel admits an exact ODE embedding with the auxiliary
    variable z(t) = integral_0^t exp(-lam (t - s)) q(s) ds:

        dq/dt = -(gamma lam / 2) z,   dz/dt = q - lam z.

    Solved with adaptive RK45 at abs/rel tolerance 1e-9.
    """
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(arr < 0):
        raise DomainError("time must be nonnegative")
    t_end = float(arr.max(initial=0.0))
    order = np.argsort(arr, kind="stable")
    sorted_t = arr[order]

    if t_end == 0.0:
        q_sorted = np.ones_like(sorted_t)
    else:
        rate = 0.5 * bath.gamma * bath.lam

        def rhs(_t, y):
            q, z = y
            return (-rate * z, q - bath.lam * z)

        sol = solve_ivp(
            rhs,
            (0.0, t_end),
            (1.0, 0.0),
            method="RK45",
            t_eval=sorted_t,
            rtol=1e-9,
            atol=1e-9,
        )
        if not sol.success:
            raise NumericalError(f"memory-kernel solve failed: {sol.message}")
        q_sorted = sol.y[0]

    q = np.empty_like(q_sorted)
    q[order] = q_sorted
    p = np.clip(1.0 - q * q, 0.0, 1.0)
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(p[0])
    return p


class ChannelKind(Enum):
    """The three supported local noise models."""

    ADC = "adc"  # amplitude damping
    PDC = "pdc"  # phase damping
    DEP = "dep"  # two-qubit depolarizing (white noise)


# spin-space building blocks
_ID2 = np.eye(2, dtype=np.complex128)
_SIGMA = (
    _ID2,
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


@dataclass(frozen=True)
class KrausSet:
    """Operator-sum representation of a channel.

    ``arity`` is 'single-qubit' (2x2 operators) or 'two-qubit' (4x4).
    The factory below guarantees completeness sum(E^dag E) = identity.
    """

    arity: str
    operators: tuple[np.ndarray, ...]

    def completeness_defect(self) -> float:
        dim = self.operators[0].shape[0]
        acc = sum(op.conj().T @ op for op in self.operators)
        return float(np.abs(acc - np.eye(dim)).max())


def _check_p(p: float) -> float:
    p = float(p)
    if p < -1e-12 or p > 1.0 + 1e-12:
        raise DomainError(f"disturbance probability must lie in [0, 1], got {p}")
    return min(max(p, 0.0), 1.0)


def _single_qubit_kraus(kind: ChannelKind, p: float) -> tuple[np.ndarray, np.ndarray]:
    e0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - p)]], dtype=np.complex128)
    if kind is ChannelKind.ADC:
        e1 = np.array([[0.0, np.sqrt(p)], [0.0, 0.0]], dtype=np.complex128)
    else:  # PDC
        e1 = np.array([[0.0, 0.0], [0.0, np.sqrt(p)]], dtype=np.complex128)
    return e0, e1


def _depolarizing_weights(p: float) -> list[tuple[float, int, int]]:
    """(weight, i, j) triples for the Pauli-product decomposition of
    rho -> (1 - p) rho + p * identity / 4."""
    out = [(1.0 - 15.0 * p / 16.0, 0, 0)]
    for i in range(4):
        for j in range(4):
            if (i, j) != (0, 0):
                out.append((p / 16.0, i, j))
    return out


def kraus_set(kind: ChannelKind, p: float) -> KrausSet:
    """Kraus operators of the channel at disturbance probability ``p``.

    ADC: {|up><up| + sqrt(1-p)|dn><dn|, sqrt(p)|up><dn|}
    PDC: {|up><up| + sqrt(1-p)|dn><dn|, sqrt(p)|dn><dn|}
    DEP: the 16-element Pauli-product set realizing
         rho -> (1-p) rho + p * identity/4 on two qubits.
    """
    p = _check_p(p)
    if kind in (ChannelKind.ADC, ChannelKind.PDC):
        ops = _single_qubit_kraus(kind, p)
        return KrausSet("single-qubit", ops)
    ops = tuple(
        np.sqrt(w) * np.kron(_SIGMA[i], _SIGMA[j]) for w, i, j in _depolarizing_weights(p)
    )
    return KrausSet("two-qubit", ops)


def spin_map_on_mode(mode: Mode, op2: np.ndarray) -> np.ndarray:
    """Lift a 2x2 spin operator to the 8-dim single-particle space, acting
    only on the spin of the population in ``mode`` (identity elsewhere)."""
    m = np.eye(SP_DIM, dtype=np.complex128)
    i = 2 * int(mode)
    m[i : i + 2, i : i + 2] = op2
    return m


def _check_ab_support(state: EnsembleState) -> None:
    for _w, ket in state.components:
        for _c, f, g in ket.terms:
            supports = (f.mode_support(), g.mode_support())
            if supports not in (({Mode.A}, {Mode.B}), ({Mode.B}, {Mode.A})):
                raise ContractError(
                    "evolve_AB needs one particle localized in A and one in B"
                )


def _merge_parallel(
    eta: int, weighted: list[tuple[float, "object"]]
) -> list[tuple[float, "object"]]:
    """Merge components whose kets describe the same pure state (equal up to
    a global phase)."""
    merged: list[tuple[float, object]] = []
    for w, ket in weighted:
        for idx, (mw, mket) in enumerate(merged):
            if abs(abs(tp_inner(mket, ket)) - 1.0) < 1e-12:
                merged[idx] = (mw + w, mket)
                break
        else:
            merged.append((w, ket))
    return merged


def evolve_AB(rho0: EnsembleState, kind: ChannelKind, p: float) -> EnsembleState:
    """Evolve a two-qubit state localized in modes A and B under local noise.

    For ADC/PDC all four products E_i^A E_j^B of localized single-qubit Kraus
    operators are applied; for DEP the two-qubit white-noise map is applied
    through its Pauli-product decomposition.  The result is an ensemble of
    normalized pure kets whose weights are the (trace-preserving) branch
    probabilities.
    """
    p = _check_p(p)
    _check_ab_support(rho0)

    if kind in (ChannelKind.ADC, ChannelKind.PDC):
        e0, e1 = _single_qubit_kraus(kind, p)
        pairs = [(1.0, a, b) for a in (e0, e1) for b in (e0, e1)]
    else:
        pairs = [(w, _SIGMA[i], _SIGMA[j]) for w, i, j in _depolarizing_weights(p)]

    out: list[tuple[float, object]] = []
    for branch_w, op_a, op_b in pairs:
        if branch_w <= 0.0:
            continue
        m = spin_map_on_mode(Mode.A, op_a) @ spin_map_on_mode(Mode.B, op_b)
        for w, ket in rho0.components:
            mapped = apply_sp_map(ket, m, slot="both")
            n2 = tp_inner(mapped, mapped).real
            if n2 < 1e-14:
                continue
            normalized, _ = normalize_ket(mapped)
            out.append((branch_w * w * n2, normalized))

    out = _merge_parallel(rho0.eta, out)
    total = sum(w for w, _ in out)
    if abs(total - 1.0) > 1e-9:
        raise ContractError(f"channel branches carry total weight {total}, expected 1")
    if total <= 0.0:
        raise ZeroNormState("channel annihilated the state")
    return EnsembleState(rho0.eta, tuple((w / total, k) for w, k in out))
