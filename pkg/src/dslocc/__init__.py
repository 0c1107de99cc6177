"""Entanglement recovery for noisy identical qubits via spatial deformation
and spatially localized post-selection."""

from .channels import (
    ChannelKind,
    KrausSet,
    LorentzianBath,
    bath_for_regime,
    evolve_AB,
    kraus_set,
    p_analytic,
    p_numeric,
)
from .entanglement import (
    c_infinity,
    concurrence_closed,
    delta_C,
    distinguishable_spec,
    statistics_dual,
    success_probability_closed,
    wootters,
)
from .errors import (
    ContractError,
    DomainError,
    DsloccError,
    NumericalError,
    PostSelectionImpossible,
    ZeroNormState,
)
from .nolabel import (
    EnsembleState,
    Mode,
    SingleParticleKet,
    Spin,
    TwoParticleKet,
    apply_sp_map,
    basis_ket,
    bell_ket,
    normalize_ket,
    product_ket,
    sp_inner,
    spatial_spin_ket,
    tp_inner,
)
from .oracle import oracle_from_p, oracle_pipeline, symmetrize
from .protocol import (
    DeformationSpec,
    DensityMatrix4,
    SloccOutcome,
    deform,
    indistinguishability,
    sector_density,
    slocc,
    spec_for_target_I,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelKind",
    "ContractError",
    "DeformationSpec",
    "DensityMatrix4",
    "DomainError",
    "DsloccError",
    "EnsembleState",
    "KrausSet",
    "LorentzianBath",
    "Mode",
    "NumericalError",
    "PostSelectionImpossible",
    "SingleParticleKet",
    "SloccOutcome",
    "Spin",
    "TwoParticleKet",
    "ZeroNormState",
    "apply_sp_map",
    "basis_ket",
    "bath_for_regime",
    "bell_ket",
    "c_infinity",
    "concurrence_closed",
    "deform",
    "delta_C",
    "distinguishable_spec",
    "evolve_AB",
    "indistinguishability",
    "kraus_set",
    "normalize_ket",
    "oracle_from_p",
    "oracle_pipeline",
    "p_analytic",
    "p_numeric",
    "product_ket",
    "sector_density",
    "slocc",
    "sp_inner",
    "spatial_spin_ket",
    "spec_for_target_I",
    "statistics_dual",
    "success_probability_closed",
    "symmetrize",
    "tp_inner",
    "wootters",
]
