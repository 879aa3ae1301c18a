"""Exact counting of subrepresentations of general quiver representations
and of semi-invariant weight-space dimensions, with independent
finite-field and determinant-rank oracles."""

__version__ = "0.1.0"

from .counting import (
    CountReport,
    FiberClass,
    NegativePairingError,
    NonzeroPairingError,
    count_subreps,
    fiber_class,
    random_instance,
    random_zero_triple,
    si_dimension,
    triple_flag_instance,
    verify_counts,
    weight_of,
)
from .covariants import HatInstance, build_hat, covariant_count, covariant_multiplicity, exponent_profile
from .ffield import GF, PolyExt, is_prime
from .lr import LREngine, SchubertElement, schubert_class
from .oracles import (
    BasisReport,
    BudgetExceededError,
    DegenerateSampleError,
    SubrepCount,
    enumerate_subreps,
    gaussian_binomial,
    list_subreps,
    sampled_subrep_count,
    si_rank_oracle,
    verify_determinant_basis,
)
from .partitions import (
    Rectangle,
    complement,
    conjugate,
    count_in_rectangle,
    fits,
    format_partition,
    parse_partition,
    partition,
    partitions_in_rectangle,
    size,
)
from .quiver import (
    FFRep,
    NonSquarePairingError,
    Quiver,
    build_dvw,
    check_dimvector,
    euler_form,
    hom_ext_dims,
    random_rep,
    semiinvariant_cv,
)

__all__ = [
    "BasisReport",
    "BudgetExceededError",
    "CountReport",
    "DegenerateSampleError",
    "FFRep",
    "FiberClass",
    "GF",
    "HatInstance",
    "LREngine",
    "NegativePairingError",
    "NonSquarePairingError",
    "NonzeroPairingError",
    "PolyExt",
    "Quiver",
    "Rectangle",
    "SchubertElement",
    "SubrepCount",
    "build_dvw",
    "build_hat",
    "check_dimvector",
    "complement",
    "conjugate",
    "count_in_rectangle",
    "count_subreps",
    "covariant_count",
    "covariant_multiplicity",
    "enumerate_subreps",
    "euler_form",
    "exponent_profile",
    "fiber_class",
    "fits",
    "format_partition",
    "gaussian_binomial",
    "hom_ext_dims",
    "is_prime",
    "list_subreps",
    "parse_partition",
    "partition",
    "partitions_in_rectangle",
    "random_instance",
    "random_rep",
    "random_zero_triple",
    "sampled_subrep_count",
    "schubert_class",
    "semiinvariant_cv",
    "si_dimension",
    "si_rank_oracle",
    "size",
    "triple_flag_instance",
    "verify_counts",
    "verify_determinant_basis",
    "weight_of",
]
