"""entarch: entanglement-region geometry for three-parameter state families.

A numpy/scipy library plus CLI that builds the five parameterized
bipartite density-matrix families, decides physicality and PPT, evaluates
the closed-form bound-entanglement probabilities, estimates region
probabilities by reproducible Monte Carlo, and enumerates the disjoint
"island" components of the entangled regions.
"""

__version__ = "0.1.0"

from .bounds import OptResult, maximize, threshold_consistency
from .errors import (
    ConfigurationError,
    ContractViolation,
    DimensionOverflow,
    EntarchError,
    NumericFailure,
    SearchFailure,
    UnsupportedMode,
)
from .generators import gell_mann, generator_basis, pauli
from .islands import Island, IslandReport, enumerate_islands, export_point_cloud
from .linalg import (
    EigenResult,
    hermitian_eigenvalues,
    is_psd,
    kron,
    min_eigenvalue,
    partial_transpose_b,
)
from .models import (
    MODELS,
    Classification,
    ModelSpec,
    build_state,
    classify,
    extremal_states,
    get_model,
    is_physical,
    is_physical_analytic,
    is_ppt,
    satisfies_additive,
    satisfies_multiplicative,
)
from .sampling import (
    SamplerConfig,
    VolumeEstimate,
    emptiness_check,
    estimate_probability,
    sample_physical,
)
from .special import (
    FormulaReport,
    acoth,
    chi_tilde_1,
    dilog,
    li1,
    li1_identity_check,
    p1_original,
    p1_simplified,
    p2_closed,
    verify_all,
)

__all__ = [
    "__version__",
    "MODELS",
    "Classification",
    "ConfigurationError",
    "ContractViolation",
    "DimensionOverflow",
    "EigenResult",
    "EntarchError",
    "FormulaReport",
    "Island",
    "IslandReport",
    "ModelSpec",
    "NumericFailure",
    "OptResult",
    "SamplerConfig",
    "SearchFailure",
    "UnsupportedMode",
    "VolumeEstimate",
    "acoth",
    "build_state",
    "chi_tilde_1",
    "classify",
    "dilog",
    "emptiness_check",
    "enumerate_islands",
    "estimate_probability",
    "export_point_cloud",
    "extremal_states",
    "gell_mann",
    "generator_basis",
    "get_model",
    "hermitian_eigenvalues",
    "is_physical",
    "is_physical_analytic",
    "is_ppt",
    "is_psd",
    "kron",
    "li1",
    "li1_identity_check",
    "maximize",
    "min_eigenvalue",
    "p1_original",
    "p1_simplified",
    "p2_closed",
    "partial_transpose_b",
    "pauli",
    "sample_physical",
    "satisfies_additive",
    "satisfies_multiplicative",
    "threshold_consistency",
    "verify_all",
]
