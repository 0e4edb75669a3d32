"""Entanglement monotones and LOCC work extraction for bipartite qudits."""
from .core import (
    DEFAULT_RANK_TOL,
    BasisParams,
    DensityMatrix,
    MeasurementBasis,
    OutcomeDistribution,
    PureState,
    SchmidtDecomposition,
    apply_local_unitary,
    computational_basis,
    computational_product,
    density_matrix,
    density_of,
    is_hermitian,
    is_projector,
    is_unitary,
    joint_distribution,
    max_entangled,
    measurement_basis,
    mix,
    outcome_distribution,
    pure_state_from_amplitudes,
    qubit_basis,
    qutrit_basis,
    rank_deficient_qutrit,
    reduced_density,
    schmidt,
    shannon_entropy,
    unitarity_deviation,
)
from .entanglement import (
    CriterionReport,
    MixedFamily,
    MonotoneVector,
    concurrence,
    concurrence_monotones,
    criterion_check,
    family_density,
    g_concurrence,
    g_concurrence_family,
)
from .errors import (
    InvalidConfig,
    InvalidDistribution,
    InvalidParameter,
    InvalidState,
    InvalidUnitary,
    ParseError,
    QuditWorkError,
    UnsupportedShape,
)
from .protocol import (
    CorrectionSet,
    Direction,
    ProtocolConfig,
    ProtocolStats,
    auto_corrections,
    feasibility,
    nonunitary_filter_example,
    qutrit_shift_corrections,
    run_protocol,
)
from .work import (
    BOLTZMANN_J_PER_K,
    AveragingMode,
    FamilyScanRow,
    WorkScanResult,
    WorkUnits,
    bits_to_joules,
    extractable_bits,
    scan_family,
    separable_bound,
    work,
    zeta,
)

__version__ = "0.1.0"

__all__ = [
    "AveragingMode",
    "BOLTZMANN_J_PER_K",
    "BasisParams",
    "CorrectionSet",
    "CriterionReport",
    "DEFAULT_RANK_TOL",
    "DensityMatrix",
    "Direction",
    "FamilyScanRow",
    "InvalidConfig",
    "InvalidDistribution",
    "InvalidParameter",
    "InvalidState",
    "InvalidUnitary",
    "MeasurementBasis",
    "MixedFamily",
    "MonotoneVector",
    "OutcomeDistribution",
    "ParseError",
    "ProtocolConfig",
    "ProtocolStats",
    "PureState",
    "QuditWorkError",
    "SchmidtDecomposition",
    "UnsupportedShape",
    "WorkScanResult",
    "WorkUnits",
    "apply_local_unitary",
    "auto_corrections",
    "bits_to_joules",
    "computational_basis",
    "computational_product",
    "concurrence",
    "concurrence_monotones",
    "criterion_check",
    "density_matrix",
    "density_of",
    "extractable_bits",
    "family_density",
    "feasibility",
    "g_concurrence",
    "g_concurrence_family",
    "is_hermitian",
    "is_projector",
    "is_unitary",
    "joint_distribution",
    "max_entangled",
    "measurement_basis",
    "mix",
    "nonunitary_filter_example",
    "outcome_distribution",
    "pure_state_from_amplitudes",
    "qubit_basis",
    "qutrit_basis",
    "qutrit_shift_corrections",
    "rank_deficient_qutrit",
    "reduced_density",
    "run_protocol",
    "scan_family",
    "schmidt",
    "separable_bound",
    "shannon_entropy",
    "unitarity_deviation",
    "work",
    "zeta",
]
