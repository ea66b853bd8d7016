"""Sections over the strip, norm estimates, separation searches and harnesses."""

from . import kernels
from .epsilon import (
    EstimateReport,
    LatticeNorm,
    NotInvariantTarget,
    check_invariant_target,
    estimate_epsilon,
    lattice_min_norm,
)
from .polybound import (
    PolyBoundReport,
    binomial_constant,
    conditions_hold,
    fit_constant,
    homogeneous_threshold,
    polybound_harness,
    lemma_A,
)
from .model import ModeError, SectionModel, build_section_model
from .perturbation import PerturbationReport, perturbation_bound_check
from .sections import PolyMatrix, level_norms, monodromy_consistency, monodromy_consistency_exact, norms, phi
from .separation import (
    AccumulationWitness,
    SeparationReport,
    WitnessEntry,
    certify_separation,
    find_accumulation,
    parse_point,
    verify_witness,
)
from .strip import StripRegion, StripSample, strip_grid
from .sublemma import feasibility_search, find_eps2, sublemma_check, sublemma_report

__all__ = [
    "kernels",
    "AccumulationWitness",
    "EstimateReport",
    "LatticeNorm",
    "PolyBoundReport",
    "ModeError",
    "NotInvariantTarget",
    "PerturbationReport",
    "PolyMatrix",
    "SectionModel",
    "SeparationReport",
    "StripRegion",
    "StripSample",
    "WitnessEntry",
    "binomial_constant",
    "build_section_model",
    "certify_separation",
    "check_invariant_target",
    "conditions_hold",
    "estimate_epsilon",
    "feasibility_search",
    "find_accumulation",
    "find_eps2",
    "fit_constant",
    "homogeneous_threshold",
    "lattice_min_norm",
    "polybound_harness",
    "lemma_A",
    "level_norms",
    "monodromy_consistency",
    "monodromy_consistency_exact",
    "norms",
    "perturbation_bound_check",
    "phi",
    "parse_point",
    "strip_grid",
    "sublemma_check",
    "sublemma_report",
    "verify_witness",
]
