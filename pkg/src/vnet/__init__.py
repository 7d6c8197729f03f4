"""Vandermonde digital net construction, certification, and search
over finite fields."""

from .discrepancy import (
    KernelBasis,
    WeightedSum,
    WeightSumBounds,
    average_bound,
    disc_bound,
    kernel_basis,
    r_q,
    r_q_matrices,
    shifted_weight,
    star_discrepancy_exact,
    trig_weight,
    vector_weight,
    weight_bound_factor,
    weight_sum_bounds,
)
from .errors import (
    AllZero,
    DegreeTooSmall,
    DegreeViolation,
    DimensionCap,
    DimensionTooLarge,
    DimensionTooSmall,
    MixedFieldLevels,
    NotPrime,
    SizeCap,
    VnetError,
)
from .fields import (
    BaseField,
    ExtField,
    FieldTower,
    digit_fraction,
    digit_numerator,
    field_arith,
    find_irreducible,
    is_irreducible,
    is_prime,
    poly_from_text,
    poly_to_text,
)
from .nets import (
    AlphaVector,
    GammaMatrix,
    GeneratingMatrices,
    NetPointSet,
    expand,
    general_vandermonde,
    generate_points,
    hyperplane_matrix,
    read_points,
    vandermonde_matrix,
    vandermonde_net,
    write_points,
)
from .quality import (
    MeritReport,
    compositions,
    corollary_floor,
    count_A,
    delta_q,
    equidist_check,
    existence_sigma,
    merit_dual_enum,
    merit_rank_scan,
    rho_direct,
    t_value,
)
from .search import (
    SearchResult,
    cbc_from_explicit,
    cbc_search,
    explicit_alpha,
    theorem_bound,
)

__version__ = "0.1.0"

__all__ = [
    "AllZero",
    "AlphaVector",
    "BaseField",
    "DegreeTooSmall",
    "DegreeViolation",
    "DimensionCap",
    "DimensionTooLarge",
    "DimensionTooSmall",
    "ExtField",
    "FieldTower",
    "GammaMatrix",
    "GeneratingMatrices",
    "KernelBasis",
    "MeritReport",
    "MixedFieldLevels",
    "NetPointSet",
    "NotPrime",
    "SearchResult",
    "SizeCap",
    "VnetError",
    "WeightSumBounds",
    "WeightedSum",
    "average_bound",
    "cbc_from_explicit",
    "cbc_search",
    "compositions",
    "corollary_floor",
    "count_A",
    "delta_q",
    "digit_fraction",
    "digit_numerator",
    "disc_bound",
    "equidist_check",
    "existence_sigma",
    "expand",
    "explicit_alpha",
    "field_arith",
    "find_irreducible",
    "general_vandermonde",
    "generate_points",
    "hyperplane_matrix",
    "is_irreducible",
    "is_prime",
    "kernel_basis",
    "merit_dual_enum",
    "merit_rank_scan",
    "poly_from_text",
    "poly_to_text",
    "r_q",
    "r_q_matrices",
    "read_points",
    "rho_direct",
    "shifted_weight",
    "star_discrepancy_exact",
    "t_value",
    "theorem_bound",
    "trig_weight",
    "vandermonde_matrix",
    "vandermonde_net",
    "vector_weight",
    "weight_bound_factor",
    "weight_sum_bounds",
    "write_points",
]
