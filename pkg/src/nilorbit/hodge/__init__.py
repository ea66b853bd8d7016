"""Degeneration data and the structural apparatus of its limit."""

from .bigrading import BiGradedSpace, ShiftError, primitive_decomposition, rational_decomposition
from .mhs import (
    GradedSpace,
    LimitMHS,
    PurityError,
    build_limit_mhs,
    check_kernel_injectivity,
    deligne_splitting,
    graded_space,
    is_r_split,
)
from .orbit import (
    CheckResult,
    NilpotentOrbit,
    ValidationReport,
    exp_nilpotent,
    hodge_filtration,
    nilpotency_index,
    validate_orbit,
)
from .splitting import (
    AlphaConstructionError,
    IotaMap,
    construct_alpha,
    lattice_index,
    normalize_iota,
    rational_alpha,
)
from .weight import NotNilpotentError, WeightFiltration, monodromy_weight_filtration, weight_conditions

__all__ = [
    "AlphaConstructionError",
    "BiGradedSpace",
    "CheckResult",
    "GradedSpace",
    "IotaMap",
    "LimitMHS",
    "NilpotentOrbit",
    "NotNilpotentError",
    "PurityError",
    "ShiftError",
    "ValidationReport",
    "WeightFiltration",
    "build_limit_mhs",
    "check_kernel_injectivity",
    "construct_alpha",
    "deligne_splitting",
    "exp_nilpotent",
    "graded_space",
    "hodge_filtration",
    "is_r_split",
    "lattice_index",
    "monodromy_weight_filtration",
    "nilpotency_index",
    "normalize_iota",
    "primitive_decomposition",
    "rational_alpha",
    "rational_decomposition",
    "validate_orbit",
    "weight_conditions",
]
