"""Spatial deformation and localized post-selection (sLOCC).

The deformation reshapes the spatial wave functions of the two qubits,
A -> psi1 = l|L> + r|R>,  B -> psi2 = l'|L> + r'|R>, making them overlap.
It is not unitary in general, so every component of a mixture is
renormalized and the mixture weights are reweighted by the captured norms.

The sLOCC step projects onto the subspace with exactly one particle in L
and one in R, records the success probability, and expresses the surviving
state as an ordinary two-qubit density matrix on the basis
{|L up, R up>, |L up, R dn>, |L dn, R up>, |L dn, R dn>}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError, PostSelectionImpossible, ZeroNormState
from .nolabel import (
    SP_DIM,
    EnsembleState,
    Mode,
    Spin,
    SingleParticleKet,
    TwoParticleKet,
    apply_sp_map,
    basis_ket,
    normalize_ket,
    product_ket,
    spatial_spin_ket,
    tp_inner,
)

__all__ = [
    "DeformationSpec",
    "DensityMatrix4",
    "SloccOutcome",
    "deform",
    "slocc",
    "sector_density",
    "indistinguishability",
    "spec_for_target_I",
]

#: Ordering of the post-selected two-qubit basis (left spin, right spin).
BASIS_LR = ((Spin.UP, Spin.UP), (Spin.UP, Spin.DOWN), (Spin.DOWN, Spin.UP), (Spin.DOWN, Spin.DOWN))


@dataclass(frozen=True)
class DeformationSpec:
    """Target spatial amplitudes of the deformed wave functions.

    ``l``, ``r`` are the L/R amplitudes of the first wave function, ``lp``,
    ``rp`` those of the second; both must be normalized.  ``eta`` fixes the
    particle statistics (+1 bosons, -1 fermions).
    """

    l: complex
    r: complex
    lp: complex
    rp: complex
    eta: int

    def __post_init__(self):
        if self.eta not in (+1, -1):
            raise ContractError("eta must be +1 or -1")
        for name, (a, b) in {"first": (self.l, self.r), "second": (self.lp, self.rp)}.items():
            n = abs(a) ** 2 + abs(b) ** 2
            if abs(n - 1.0) > 1e-12:
                raise ContractError(
                    f"{name} wave function is not normalized (|l|^2 + |r|^2 = {n})"
                )

    def psi1(self, spin: Spin) -> SingleParticleKet:
        return spatial_spin_ket({Mode.L: self.l, Mode.R: self.r}, spin)

    def psi2(self, spin: Spin) -> SingleParticleKet:
        return spatial_spin_ket({Mode.L: self.lp, Mode.R: self.rp}, spin)

    def matrix(self) -> np.ndarray:
        """The deformation as a single-particle map: A -> psi1, B -> psi2,
        identity on L and R (nothing maps back into A or B)."""
        m = np.zeros((SP_DIM, SP_DIM), dtype=np.complex128)
        for spin in Spin:
            s = int(spin)
            m[2 * Mode.L + s, 2 * Mode.A + s] = self.l
            m[2 * Mode.R + s, 2 * Mode.A + s] = self.r
            m[2 * Mode.L + s, 2 * Mode.B + s] = self.lp
            m[2 * Mode.R + s, 2 * Mode.B + s] = self.rp
            m[2 * Mode.L + s, 2 * Mode.L + s] = 1.0
            m[2 * Mode.R + s, 2 * Mode.R + s] = 1.0
        return m


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """4x4 density matrix over the post-selected (left, right) spin basis."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.shape != (4, 4):
            raise ContractError("density matrix must be 4x4")
        if np.abs(m - m.conj().T).max() > 1e-12:
            raise ContractError("density matrix must be Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-12:
            raise ContractError(f"density matrix must have unit trace, got {np.trace(m)}")
        if np.linalg.eigvalsh(m).min() < -1e-12:
            raise ContractError("density matrix must be positive semidefinite")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class SloccOutcome:
    """Post-selected state and the probability of obtaining it."""

    rho_lr: DensityMatrix4
    probability: float


def deform(state: EnsembleState, spec: DeformationSpec) -> EnsembleState:
    """Deform an A/B-localized mixture into the overlapping L/R wave functions.

    Each component is renormalized; the mixture weights become
    w_i * norm_i^2 / sum_j(w_j * norm_j^2).  Components annihilated by the
    deformation (fermionic parallel-spin terms with psi1 = psi2) drop out
    with zero weight; if every component is annihilated the deformed state
    does not exist and ZeroNormState is raised.
    """
    if state.eta != spec.eta:
        raise ContractError("deformation statistics differs from the state's")
    for _w, ket in state.components:
        for _c, f, g in ket.terms:
            supports = (f.mode_support(), g.mode_support())
            if supports not in (({Mode.A}, {Mode.B}), ({Mode.B}, {Mode.A})):
                raise ContractError("deform needs one particle in A and one in B")

    m = spec.matrix()
    out = []
    for w, ket in state.components:
        mapped = apply_sp_map(ket, m, slot="both")
        n2 = tp_inner(mapped, mapped).real
        if w * n2 < 1e-14:
            continue  # annihilated (or weightless) branch
        normalized, _ = normalize_ket(mapped)
        out.append((w * n2, normalized))
    if not out:
        raise ZeroNormState("deformation annihilated every component of the state")
    return EnsembleState.mixture(state.eta, out)


def _lr_amplitudes(ket: TwoParticleKet) -> np.ndarray:
    """Amplitudes <L sigma, R tau | ket> on the post-selected basis."""
    amps = np.zeros(4, dtype=np.complex128)
    for idx, (s_left, s_right) in enumerate(BASIS_LR):
        probe = product_ket(ket.eta, basis_ket(Mode.L, s_left), basis_ket(Mode.R, s_right))
        amps[idx] = tp_inner(probe, ket)
    return amps


def sector_density(state: EnsembleState, left: Mode = Mode.L, right: Mode = Mode.R) -> np.ndarray:
    """Unnormalized 4x4 block of the state on the one-particle-per-region
    basis {|left sigma, right tau>}.  Its trace is the projection weight."""
    rho = np.zeros((4, 4), dtype=np.complex128)
    for w, ket in state.components:
        amps = np.zeros(4, dtype=np.complex128)
        for idx, (s_left, s_right) in enumerate(BASIS_LR):
            probe = product_ket(ket.eta, basis_ket(left, s_left), basis_ket(right, s_right))
            amps[idx] = tp_inner(probe, ket)
        rho += w * np.outer(amps, amps.conj())
    return rho


def slocc(state: EnsembleState) -> SloccOutcome:
    """Project onto one particle in L and one in R, with post-selection.

    Returns the normalized post-selected density matrix and the success
    probability.  Raises PostSelectionImpossible when the probability
    vanishes (every outcome would be discarded).
    """
    for _w, ket in state.components:
        for _c, f, g in ket.terms:
            if not f.mode_support() <= {Mode.L, Mode.R} or not g.mode_support() <= {Mode.L, Mode.R}:
                raise ContractError("slocc expects a state supported on modes L and R")
    rho = sector_density(state, Mode.L, Mode.R)
    probability = float(np.trace(rho).real)
    if probability < 1e-14:
        raise PostSelectionImpossible("post-selection succeeds with zero probability")
    return SloccOutcome(DensityMatrix4(rho / probability), probability)


def _entropy_term(u: float) -> float:
    return 0.0 if u <= 0.0 else -u * np.log2(u)


def indistinguishability(spec: DeformationSpec) -> float:
    """Entropic measure of how unknowable it is which deformed wave function
    sourced the particle found in each region.

    With P_{X,i} = |<X|psi_i>|^2 the joint no-which-way weights are
    u = P_{L,1} P_{R,2} / Z and 1-u, Z = P_{L,1} P_{R,2} + P_{L,2} P_{R,1};
    the measure is their binary entropy: 0 for fully separated wave
    functions, 1 for maximal overlap symmetry.
    """
    pl1 = abs(spec.l) ** 2
    pr1 = abs(spec.r) ** 2
    pl2 = abs(spec.lp) ** 2
    pr2 = abs(spec.rp) ** 2
    z = pl1 * pr2 + pl2 * pr1
    if z < 1e-14:
        raise DomainError("overlap configuration leaves the post-selected sector empty")
    u = pl1 * pr2 / z
    value = _entropy_term(u) + _entropy_term(1.0 - u)
    return float(min(max(value, 0.0), 1.0))


def spec_for_target_I(target: float, eta: int) -> DeformationSpec:
    """The real-amplitude one-parameter family reaching a prescribed
    indistinguishability.

    Fermions use l = r' = sqrt(a), r = l' = sqrt(1-a); bosons use the
    sign-flipped family l = r' = sqrt(a), l' = sqrt(1-a), r = -sqrt(1-a)
    (the two are images of each other under the statistics swap).  The
    measure decreases monotonically from 1 at a = 1/2 to 0 at a = 1, so the
    parameter is found by bisection to within 1e-10 in the target.
    """
    if not 0.0 <= target <= 1.0:
        raise DomainError(f"indistinguishability target must lie in [0, 1], got {target}")

    def build(a: float) -> DeformationSpec:
        big, small = np.sqrt(a), np.sqrt(1.0 - a)
        if eta == -1:
            return DeformationSpec(l=big, r=small, lp=small, rp=big, eta=eta)
        return DeformationSpec(l=big, r=-small, lp=small, rp=big, eta=eta)

    if target == 1.0:
        return build(0.5)
    if target == 0.0:
        return build(1.0)

    lo, hi = 0.5, 1.0  # measure(lo) = 1, measure(hi) = 0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if indistinguishability(build(mid)) >= target:
            lo = mid
        else:
            hi = mid
    return build(0.5 * (lo + hi))
