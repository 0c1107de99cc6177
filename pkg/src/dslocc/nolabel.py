"""State algebra for two identical spin-1/2 particles without particle labels.

Two-particle states of identical particles are treated as holistic objects
``|phi1; phi2>`` built from single-particle wave functions.  The inner product
between two such objects carries an exchange contribution weighted by the
statistics parameter ``eta`` (+1 bosons, -1 fermions):

    <a'; b' | a; b> = <a'|a><b'|b> + eta * <a'|b><b'|a>

Everything else (normalization, linear maps, mixtures) is built on top of this
single rule.  The single-particle space is fixed: four orthonormal spatial
modes {A, B, L, R} times a two-valued pseudo-spin, i.e. an 8-dimensional
complex vector space.

All objects are immutable after construction; every operation is a pure
function, so concurrent read access is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable

import numpy as np

from .errors import ContractError, ZeroNormState

__all__ = [
    "Mode",
    "Spin",
    "SingleParticleKet",
    "TwoParticleKet",
    "EnsembleState",
    "SP_DIM",
    "basis_ket",
    "spatial_spin_ket",
    "product_ket",
    "bell_ket",
    "sp_inner",
    "tp_inner",
    "normalize_ket",
    "apply_sp_map",
]

#: Amplitudes smaller than this are discarded when kets are coalesced.
COALESCE_EPS = 1e-14

#: Squared norms below this count as an annihilated (zero-norm) state.
ZERO_NORM_EPS = 1e-14


class Mode(IntEnum):
    """Orthonormal spatial modes.  A, B host the initial separated qubits,
    L, R are the regions probed by the localized measurement."""

    A = 0
    B = 1
    L = 2
    R = 3


class Spin(IntEnum):
    """Two-valued pseudo-spin."""

    UP = 0
    DOWN = 1


SP_DIM = 2 * len(Mode)  # 8


def _index(mode: Mode, spin: Spin) -> int:
    return 2 * int(mode) + int(spin)


@dataclass(frozen=True, eq=False)
class SingleParticleKet:
    """A single-particle state: complex amplitudes over (mode, spin) pairs."""

    amplitudes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.amplitudes, dtype=np.complex128)
        if arr.shape != (SP_DIM,):
            raise ContractError(f"single-particle ket must have {SP_DIM} amplitudes")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)

    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def scaled(self, c: complex) -> "SingleParticleKet":
        return SingleParticleKet(c * self.amplitudes)

    def mode_support(self) -> set[Mode]:
        """Modes carrying any amplitude above the coalescing threshold."""
        out = set()
        for mode in Mode:
            block = self.amplitudes[2 * mode : 2 * mode + 2]
            if np.abs(block).max() > COALESCE_EPS:
                out.add(mode)
        return out


def basis_ket(mode: Mode, spin: Spin) -> SingleParticleKet:
    amps = np.zeros(SP_DIM, dtype=np.complex128)
    amps[_index(mode, spin)] = 1.0
    return SingleParticleKet(amps)


def spatial_spin_ket(spatial: dict[Mode, complex], spin: Spin) -> SingleParticleKet:
    """Ket with a given spatial wave function (amplitudes per mode) and a
    definite spin, e.g. ``spatial_spin_ket({Mode.L: l, Mode.R: r}, Spin.UP)``."""
    amps = np.zeros(SP_DIM, dtype=np.complex128)
    for mode, amp in spatial.items():
        amps[_index(mode, spin)] = amp
    return SingleParticleKet(amps)


def sp_inner(a: SingleParticleKet, b: SingleParticleKet) -> complex:
    """Single-particle inner product <a|b>, conjugate-linear in ``a``."""
    return complex(np.vdot(a.amplitudes, b.amplitudes))


@dataclass(frozen=True, eq=False)
class TwoParticleKet:
    """Two-particle state as a weighted sum of product terms ``|f; g>``.

    ``terms`` is a tuple of ``(coefficient, f, g)`` triples.  The object is
    linear in each slot, and the exchange rule above makes
    ``|g; f> == eta * |f; g>`` as state vectors.
    """

    eta: int
    terms: tuple[tuple[complex, SingleParticleKet, SingleParticleKet], ...]

    def __post_init__(self):
        if self.eta not in (+1, -1):
            raise ContractError("eta must be +1 (bosons) or -1 (fermions)")
        object.__setattr__(self, "terms", tuple(self.terms))

    def scaled(self, c: complex) -> "TwoParticleKet":
        return TwoParticleKet(self.eta, tuple((c * w, f, g) for w, f, g in self.terms))

    def swapped(self) -> "TwoParticleKet":
        """The ket with the two slots of every term exchanged."""
        return TwoParticleKet(self.eta, tuple((w, g, f) for w, f, g in self.terms))

    def coalesced(self) -> "TwoParticleKet":
        """Canonical form: terms expanded over basis pairs and merged.

        Basis pairs are ordered (i <= j); the exchange rule supplies the sign
        when a pair is flipped.  For fermions, diagonal pairs are null vectors
        and are dropped.  Amplitudes below ``COALESCE_EPS`` are dropped.
        """
        acc: dict[tuple[int, int], complex] = {}
        for w, f, g in self.terms:
            fi = np.flatnonzero(np.abs(f.amplitudes) > 0)
            gi = np.flatnonzero(np.abs(g.amplitudes) > 0)
            for i in fi:
                for j in gi:
                    c = w * f.amplitudes[i] * g.amplitudes[j]
                    if i == j:
                        if self.eta == -1:
                            continue  # Pauli-excluded null direction
                        key = (int(i), int(j))
                    elif i < j:
                        key = (int(i), int(j))
                    else:
                        key = (int(j), int(i))
                        c = self.eta * c
                    acc[key] = acc.get(key, 0.0) + c
        terms = []
        for (i, j), c in sorted(acc.items()):
            if abs(c) <= COALESCE_EPS:
                continue
            ei = np.zeros(SP_DIM, dtype=np.complex128)
            ei[i] = 1.0
            ej = np.zeros(SP_DIM, dtype=np.complex128)
            ej[j] = 1.0
            terms.append((c, SingleParticleKet(ei), SingleParticleKet(ej)))
        return TwoParticleKet(self.eta, tuple(terms))


def product_ket(eta: int, phi1: SingleParticleKet, phi2: SingleParticleKet) -> TwoParticleKet:
    """The elementary two-particle state ``|phi1; phi2>``."""
    return TwoParticleKet(eta, ((1.0 + 0.0j, phi1, phi2),))


def bell_ket(name: str, eta: int, modes: tuple[Mode, Mode] = (Mode.A, Mode.B)) -> TwoParticleKet:
    """Maximally entangled two-qubit states over a pair of distinct modes.

    ``psi_minus``/``psi_plus`` are the antisymmetric/symmetric opposite-spin
    combinations, ``phi_plus``/``phi_minus`` the equal-spin ones.
    """
    m1, m2 = modes
    if m1 == m2:
        raise ContractError("Bell states need two distinct modes")
    s = 1.0 / np.sqrt(2.0)
    combos = {
        "psi_minus": ((s, Spin.UP, Spin.DOWN), (-s, Spin.DOWN, Spin.UP)),
        "psi_plus": ((s, Spin.UP, Spin.DOWN), (s, Spin.DOWN, Spin.UP)),
        "phi_plus": ((s, Spin.UP, Spin.UP), (s, Spin.DOWN, Spin.DOWN)),
        "phi_minus": ((s, Spin.UP, Spin.UP), (-s, Spin.DOWN, Spin.DOWN)),
    }
    if name not in combos:
        raise ContractError(f"unknown Bell state {name!r}")
    terms = tuple(
        (complex(c), basis_ket(m1, s1), basis_ket(m2, s2)) for c, s1, s2 in combos[name]
    )
    return TwoParticleKet(eta, terms)


def tp_inner(x: TwoParticleKet, y: TwoParticleKet) -> complex:
    """Two-particle inner product <x|y> under the exchange rule.

    Conjugate-linear in ``x``.  Both kets must share the same statistics.
    """
    if x.eta != y.eta:
        raise ContractError("cannot take inner product across statistics sectors")
    eta = x.eta
    total = 0.0 + 0.0j
    for wx, f, g in x.terms:
        for wy, h, k in y.terms:
            direct = sp_inner(f, h) * sp_inner(g, k)
            exchange = sp_inner(f, k) * sp_inner(g, h)
            total += np.conj(wx) * wy * (direct + eta * exchange)
    return complex(total)


def normalize_ket(x: TwoParticleKet) -> tuple[TwoParticleKet, float]:
    """Normalize ``x``; returns (normalized ket, original squared norm).

    Raises ZeroNormState when the squared norm is below ``ZERO_NORM_EPS``
    (e.g. a fermionic doubly occupied state).
    """
    n2 = tp_inner(x, x).real
    if n2 < ZERO_NORM_EPS:
        raise ZeroNormState(f"state has vanishing norm (norm^2 = {n2:.3e})")
    return x.scaled(1.0 / np.sqrt(n2)), float(n2)


def apply_sp_map(x: TwoParticleKet, m: np.ndarray, slot: str = "both") -> TwoParticleKet:
    """Apply a linear map on the single-particle space to the chosen slot(s).

    ``m`` is an 8x8 complex matrix.  The result is generally unnormalized and
    is returned in coalesced canonical form.
    """
    if slot not in ("both", "first", "second"):
        raise ContractError(f"slot must be 'both', 'first' or 'second', got {slot!r}")
    mat = np.asarray(m, dtype=np.complex128)
    if mat.shape != (SP_DIM, SP_DIM):
        raise ContractError(f"map must be {SP_DIM}x{SP_DIM}")
    terms = []
    for w, f, g in x.terms:
        nf = SingleParticleKet(mat @ f.amplitudes) if slot in ("both", "first") else f
        ng = SingleParticleKet(mat @ g.amplitudes) if slot in ("both", "second") else g
        terms.append((w, nf, ng))
    return TwoParticleKet(x.eta, tuple(terms)).coalesced()


@dataclass(frozen=True, eq=False)
class EnsembleState:
    """Probabilistic mixture of normalized two-particle kets."""

    eta: int
    components: tuple[tuple[float, TwoParticleKet], ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ContractError("ensemble needs at least one component")
        total = 0.0
        for w, ket in comps:
            if w < -1e-12:
                raise ContractError(f"negative ensemble weight {w}")
            if ket.eta != self.eta:
                raise ContractError("component statistics differs from ensemble")
            n2 = tp_inner(ket, ket).real
            if abs(n2 - 1.0) > 1e-9:
                raise ContractError(f"component ket not normalized (norm^2 = {n2})")
            total += w
        if abs(total - 1.0) > 1e-12:
            raise ContractError(f"ensemble weights sum to {total}, expected 1")
        object.__setattr__(self, "components", comps)

    @classmethod
    def pure(cls, ket: TwoParticleKet) -> "EnsembleState":
        normalized, _ = normalize_ket(ket)
        return cls(ket.eta, ((1.0, normalized),))

    @classmethod
    def mixture(cls, eta: int, weighted: Iterable[tuple[float, TwoParticleKet]]) -> "EnsembleState":
        """Build a mixture, renormalizing the weights to sum to one."""
        comps = [(float(w), k) for w, k in weighted]
        total = sum(w for w, _ in comps)
        if total <= 0.0:
            raise ZeroNormState("mixture has no weight")
        return cls(eta, tuple((w / total, k) for w, k in comps))
