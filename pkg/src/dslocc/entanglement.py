"""Two-qubit entanglement measures and per-channel closed forms.

The general-purpose measure is the Wootters concurrence
C = max{0, sqrt(m1) - sqrt(m2) - sqrt(m3) - sqrt(m4)}, with m_i the
decreasingly ordered eigenvalues of rho (sy x sy) rho* (sy x sy)
[W. K. Wootters, Phys. Rev. Lett. 80, 2245 (1998)].

For the pipeline built here (deformed + post-selected noisy Bell singlet)
the concurrence and the post-selection success probability have closed
forms in the deformation amplitudes.  They are expressed through

    x_plus  = |l r' - eta l' r|^2      (weight of the surviving singlet)
    x_minus = |l r' + eta l' r|^2      (weight of each orthogonal branch)
    ov2     = |conj(l) l' + conj(r) r'|^2   (squared wave-function overlap)

and the deformation norms c1^2 = 1 - eta*ov2, c2^2 = 1 + eta*ov2.  All
formulas accept a scalar or an array of disturbance probabilities.
"""

from __future__ import annotations

import numpy as np

from .channels import ChannelKind
from .errors import ContractError, DomainError, ZeroNormState
from .protocol import DensityMatrix4, DeformationSpec

__all__ = [
    "wootters",
    "concurrence_closed",
    "success_probability_closed",
    "c_infinity",
    "delta_C",
    "statistics_dual",
    "distinguishable_spec",
]

# sigma_y x sigma_y on the (left spin, right spin) basis
_SY_SY = np.array(
    [
        [0, 0, 0, -1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
    ],
    dtype=np.complex128,
)


def wootters(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Accepts a DensityMatrix4 or a raw 4x4 array.  Raw input is validated:
    Hermitian within 1e-10, trace one within 1e-10 and eigenvalues above
    -1e-10, otherwise ContractError.
    """
    m = rho.matrix if isinstance(rho, DensityMatrix4) else np.asarray(rho, dtype=np.complex128)
    if m.shape != (4, 4):
        raise ContractError("concurrence needs a 4x4 density matrix")
    if np.abs(m - m.conj().T).max() > 1e-10:
        raise ContractError("density matrix is not Hermitian")
    if abs(np.trace(m).real - 1.0) > 1e-10:
        raise ContractError("density matrix does not have unit trace")
    if np.linalg.eigvalsh(m).min() < -1e-10:
        raise ContractError("density matrix is not positive semidefinite")

    spin_flipped = _SY_SY @ m.conj() @ _SY_SY
    lam = np.linalg.eigvals(m @ spin_flipped)
    # eigenvalues of rho * rho~ are real and nonnegative up to roundoff
    lam = np.sqrt(np.clip(lam.real, 0.0, None))
    lam[::-1].sort()
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def _spec_weights(spec: DeformationSpec) -> tuple[float, float, float]:
    """(x_plus, x_minus, ov2) for a deformation; see module docstring."""
    cross_minus = spec.l * spec.rp - spec.eta * spec.lp * spec.r
    cross_plus = spec.l * spec.rp + spec.eta * spec.lp * spec.r
    x_plus = abs(cross_minus) ** 2
    x_minus = abs(cross_plus) ** 2
    if x_plus + x_minus < 1e-14:
        raise DomainError("deformation leaves the post-selected sector empty")
    ov2 = abs(np.conj(spec.l) * spec.lp + np.conj(spec.r) * spec.rp) ** 2
    # Cauchy-Schwarz bounds ov2 by 1 for normalized wave functions; roundoff
    # can push it over, which would flip the sign of c2^2 at full overlap.
    return x_plus, x_minus, min(ov2, 1.0)


def _check_prob(p):
    arr = np.asarray(p, dtype=float)
    if np.any(arr < -1e-12) or np.any(arr > 1.0 + 1e-12):
        raise DomainError("disturbance probability must lie in [0, 1]")
    return np.clip(arr, 0.0, 1.0)


def _as_given(value, p):
    return float(value) if np.isscalar(p) or np.asarray(p).ndim == 0 else value


def concurrence_closed(kind: ChannelKind, spec: DeformationSpec, p):
    """Concurrence of the deformed + post-selected state, in closed form.

    Agrees with ``wootters`` applied to the full pipeline.  ``p`` may be a
    scalar or an array of disturbance probabilities.
    """
    q = _check_prob(p)
    x_plus, x_minus, _ = _spec_weights(spec)
    if kind is ChannelKind.ADC:
        num = (1.0 - q) * x_plus
        den = (1.0 - q) * x_plus + q * x_minus
        _guard_sector(den)
        return _as_given(num / den, p)
    if kind is ChannelKind.PDC:
        lam_a = (1.0 - 0.5 * q) * x_plus
        lam_b = 0.5 * q * x_minus
        den = lam_a + lam_b
        _guard_sector(den)
        value = (np.maximum(lam_a, lam_b) - np.minimum(lam_a, lam_b)) / den
        return _as_given(np.maximum(0.0, value), p)
    lam_a = (1.0 - 0.75 * q) * x_plus
    lam_b = 0.75 * q * x_minus
    den = lam_a + lam_b
    _guard_sector(den)
    return _as_given(np.maximum(0.0, (lam_a - lam_b) / den), p)


def success_probability_closed(kind: ChannelKind, spec: DeformationSpec, p):
    """Probability that the localized post-selection succeeds, closed form."""
    q = _check_prob(p)
    x_plus, x_minus, ov2 = _spec_weights(spec)
    c1sq = 1.0 - spec.eta * ov2
    c2sq = 1.0 + spec.eta * ov2
    if kind is ChannelKind.ADC:
        num = (1.0 - q) * x_plus + q * x_minus
        den = (1.0 - q) * c1sq + q * c2sq
    elif kind is ChannelKind.PDC:
        num = (1.0 - 0.5 * q) * x_plus + 0.5 * q * x_minus
        den = (1.0 - 0.5 * q) * c1sq + 0.5 * q * c2sq
    else:
        num = (1.0 - 0.75 * q) * x_plus + 0.75 * q * x_minus
        den = (1.0 - 0.75 * q) * c1sq + 0.75 * q * c2sq
    _guard_sector(den)
    return _as_given(num / den, p)


def _guard_sector(den) -> None:
    if np.any(np.asarray(den) < 1e-14):
        raise ZeroNormState(
            "the deformed state is annihilated here (fully decayed, fully "
            "overlapping fermions); the protocol outcome is undefined"
        )


def c_infinity(kind: ChannelKind, spec: DeformationSpec) -> float:
    """Late-time limit of the concurrence (p -> 1).

    Defined for real deformation amplitudes, matching the stationary values
    of the closed forms: PDC keeps |x+ - x-| / (x+ + x-), DEP keeps
    max{0, (x+ - 3 x-) / (x+ + 3 x-)}, and ADC retains entanglement only at
    full overlap (1 when x- vanishes, else 0).
    """
    for name, value in (("l", spec.l), ("r", spec.r), ("lp", spec.lp), ("rp", spec.rp)):
        if abs(complex(value).imag) > 1e-12:
            raise DomainError(f"stationary concurrence assumes real amplitudes ({name} is not)")
    x_plus, x_minus, _ = _spec_weights(spec)
    if kind is ChannelKind.ADC:
        return 1.0 if x_minus < 1e-14 else 0.0
    if kind is ChannelKind.PDC:
        return float(abs(x_plus - x_minus) / (x_plus + x_minus))
    return float(max(0.0, (x_plus - 3.0 * x_minus) / (x_plus + 3.0 * x_minus)))


def distinguishable_spec(eta: int) -> DeformationSpec:
    """The do-nothing deformation: wave functions stay separated (measure 0)."""
    return DeformationSpec(l=1.0, r=0.0, lp=0.0, rp=1.0, eta=eta)


def delta_C(kind: ChannelKind, spec: DeformationSpec, p):
    """Entanglement recovered by the protocol relative to leaving the qubits
    separated: C(deformed) - C(separated), both from the closed forms."""
    baseline = concurrence_closed(kind, distinguishable_spec(spec.eta), p)
    return concurrence_closed(kind, spec, p) - baseline


def statistics_dual(spec: DeformationSpec) -> DeformationSpec:
    """Swap the particle statistics while negating one amplitude.

    The map flips eta and negates r; it preserves x_plus, x_minus (hence the
    concurrence at every p) and the indistinguishability measure.  Applying
    it twice restores the original amplitudes and statistics.
    """
    return DeformationSpec(l=spec.l, r=-spec.r, lp=spec.lp, rp=spec.rp, eta=-spec.eta)
