"""Brute-force cross-check in the labeled first-quantization picture.

Everything here deliberately re-derives the pipeline with dense linear
algebra on the 64-dimensional labeled two-particle space ((4 modes x 2
spins) per tensor factor), sharing no state machinery with the main path:
a no-label ket |phi1; phi2> corresponds to the (anti)symmetrized labeled
vector |phi1> x |phi2> + eta |phi2> x |phi1>.  Slow and obvious on purpose.
"""

from __future__ import annotations

import numpy as np

from .channels import ChannelKind, LorentzianBath, p_analytic
from .errors import PostSelectionImpossible, ZeroNormState
from .nolabel import SingleParticleKet
from .protocol import DeformationSpec

__all__ = ["symmetrize", "oracle_from_p", "oracle_pipeline", "exchange_projector"]

_DIM = 8  # single-particle dimension: 4 modes x 2 spins
_MODE_A, _MODE_B, _MODE_L, _MODE_R = 0, 1, 2, 3
_UP, _DOWN = 0, 1

_PAULI = (
    np.eye(2, dtype=np.complex128),
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


def _unit(mode: int, spin: int) -> np.ndarray:
    v = np.zeros(_DIM, dtype=np.complex128)
    v[2 * mode + spin] = 1.0
    return v


def symmetrize(phi1: SingleParticleKet, phi2: SingleParticleKet, eta: int) -> np.ndarray:
    """Labeled vector |phi1> x |phi2> + eta |phi2> x |phi1>, unnormalized.

    Labeled inner products of these vectors equal exactly twice the no-label
    rule values, so normalized objects coincide between the two pictures.
    """
    a = np.asarray(phi1.amplitudes, dtype=np.complex128)
    b = np.asarray(phi2.amplitudes, dtype=np.complex128)
    return np.kron(a, b) + eta * np.kron(b, a)


def exchange_projector(eta: int) -> np.ndarray:
    """Projector onto the eta-symmetry sector of the labeled space."""
    swap = np.zeros((_DIM * _DIM, _DIM * _DIM))
    for i in range(_DIM):
        for j in range(_DIM):
            swap[j * _DIM + i, i * _DIM + j] = 1.0
    return 0.5 * (np.eye(_DIM * _DIM) + eta * swap)


def _spin_action_on_mode(mode: int, op2: np.ndarray) -> np.ndarray:
    """2x2 spin operator acting only where the labeled particle sits in
    ``mode``; identity on every other mode (localized environments)."""
    out = np.zeros((_DIM, _DIM), dtype=np.complex128)
    for m in range(4):
        block = op2 if m == mode else np.eye(2)
        out[2 * m : 2 * m + 2, 2 * m : 2 * m + 2] = block
    return out


def _labeled_kraus(kind: ChannelKind, p: float) -> list[np.ndarray]:
    """Two-particle labeled Kraus operators: each tensor factor gets the
    mode-conditioned composition of the A-local and B-local maps."""
    if kind in (ChannelKind.ADC, ChannelKind.PDC):
        e0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - p)]], dtype=np.complex128)
        if kind is ChannelKind.ADC:
            e1 = np.array([[0.0, np.sqrt(p)], [0.0, 0.0]], dtype=np.complex128)
        else:
            e1 = np.array([[0.0, 0.0], [0.0, np.sqrt(p)]], dtype=np.complex128)
        singles = []
        for ea in (e0, e1):
            for eb in (e0, e1):
                singles.append(_spin_action_on_mode(_MODE_A, ea) @ _spin_action_on_mode(_MODE_B, eb))
        return [np.kron(s, s) for s in singles]
    ops = []
    for i in range(4):
        for j in range(4):
            w = 1.0 - 15.0 * p / 16.0 if (i, j) == (0, 0) else p / 16.0
            s = _spin_action_on_mode(_MODE_A, _PAULI[i]) @ _spin_action_on_mode(_MODE_B, _PAULI[j])
            ops.append(np.sqrt(w) * np.kron(s, s))
    return ops


def _deformation_matrix(spec: DeformationSpec) -> np.ndarray:
    d = np.zeros((_DIM, _DIM), dtype=np.complex128)
    for s in (_UP, _DOWN):
        d[2 * _MODE_L + s, 2 * _MODE_A + s] = spec.l
        d[2 * _MODE_R + s, 2 * _MODE_A + s] = spec.r
        d[2 * _MODE_L + s, 2 * _MODE_B + s] = spec.lp
        d[2 * _MODE_R + s, 2 * _MODE_B + s] = spec.rp
        d[2 * _MODE_L + s, 2 * _MODE_L + s] = 1.0
        d[2 * _MODE_R + s, 2 * _MODE_R + s] = 1.0
    return d


def _initial_singlet(eta: int) -> np.ndarray:
    v = np.kron(_unit(_MODE_A, _UP), _unit(_MODE_B, _DOWN)) - np.kron(
        _unit(_MODE_A, _DOWN), _unit(_MODE_B, _UP)
    )
    v = v + eta * (
        np.kron(_unit(_MODE_B, _DOWN), _unit(_MODE_A, _UP))
        - np.kron(_unit(_MODE_B, _UP), _unit(_MODE_A, _DOWN))
    )
    return v / np.linalg.norm(v)


def _lr_basis(eta: int) -> np.ndarray:
    """Columns: normalized symmetrized |L sigma, R tau> labeled vectors."""
    cols = []
    for s_left in (_UP, _DOWN):
        for s_right in (_UP, _DOWN):
            v = np.kron(_unit(_MODE_L, s_left), _unit(_MODE_R, s_right)) + eta * np.kron(
                _unit(_MODE_R, s_right), _unit(_MODE_L, s_left)
            )
            cols.append(v / np.linalg.norm(v))
    # reorder to (up,up), (up,down), (down,up), (down,down)
    return np.column_stack(cols)


def _wootters_hermitian(rho: np.ndarray) -> float:
    """Concurrence via the Hermitian square-root construction (coded apart
    from the main eigenvalue route on purpose)."""
    sy2 = np.array(
        [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=np.complex128
    )
    flipped = sy2 @ rho.conj() @ sy2
    vals, vecs = np.linalg.eigh(rho)
    sqrt_rho = (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    lam = np.linalg.eigvalsh(sqrt_rho @ flipped @ sqrt_rho)
    lam = np.sqrt(np.clip(lam, 0.0, None))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def oracle_from_p(kind: ChannelKind, p: float, spec: DeformationSpec) -> tuple[float, float]:
    """Run the whole pipeline densely at a given disturbance probability.

    Returns (concurrence, post-selection probability).
    """
    eta = spec.eta
    psi0 = _initial_singlet(eta)
    rho = np.outer(psi0, psi0.conj())

    evolved = np.zeros_like(rho)
    for k in _labeled_kraus(kind, p):
        evolved += k @ rho @ k.conj().T

    d2 = np.kron(_deformation_matrix(spec), _deformation_matrix(spec))
    deformed = d2 @ evolved @ d2.conj().T
    norm = float(np.trace(deformed).real)
    if norm < 1e-14:
        raise ZeroNormState("deformation annihilated the labeled state")
    deformed /= norm

    basis = _lr_basis(eta)
    reduced = basis.conj().T @ deformed @ basis
    probability = float(np.trace(reduced).real)
    if probability < 1e-14:
        raise PostSelectionImpossible("labeled post-selection has zero probability")
    reduced /= probability
    reduced = 0.5 * (reduced + reduced.conj().T)
    return _wootters_hermitian(reduced), probability


def oracle_pipeline(
    kind: ChannelKind, bath: LorentzianBath, t: float, spec: DeformationSpec
) -> tuple[float, float]:
    """Dense end-to-end run at time ``t``: disturbance probability from the
    bath's closed form, then the labeled pipeline."""
    return oracle_from_p(kind, p_analytic(t, bath), spec)
