"""Exact simulation and phase analysis of superposition states in Ising spin glasses."""

__version__ = "0.1.0"

from .basis import (
    BasisState,
    SpinLabel,
    SpinLabelVector,
    as_basis,
    co_excited_count,
    enumerate_basis,
    label_pair,
)
from .couplings import (
    CouplingMatrix,
    energy,
    frustration_report,
    sample_couplings,
    unsatisfied_bonds,
)
from .entanglement import (
    NegativityResult,
    avg_negativity,
    density_matrix,
    entangled_cluster_size,
    negativity_dense,
    negativity_schmidt,
    partial_transpose,
    predicted_negativity,
)
from .errors import (
    DegenerateState,
    InconsistentInputs,
    NoCluster,
    PartitionError,
    SizeMismatch,
    SizeOutOfRange,
    SpinIndexError,
    ValidationFailure,
)
from .observables import (
    Q_MAX,
    OrderParameters,
    chi_from_negativity,
    chi_ss_finite,
    chi_ss_thermo,
    chi_zfc,
    local_moment,
    local_moments,
    magnetization,
    order_parameters,
    q_ea,
    q_ea_analytic,
)
from .phases import ClassifierConfig, PhaseTag, classify, cross_validate, sg_rule_filter
from .superposition import (
    BinaryWeights,
    SuperpositionState,
    binary_ss,
    cluster_decompose,
    equal_binary_ss,
    ghz,
    product_state,
    random_ss,
)
