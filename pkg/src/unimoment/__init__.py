"""Exact moment analysis for nonnegative palindromic generating polynomials.

The package treats a polynomial with nonnegative coefficients as an
(unnormalized) probability generating function, computes its moments and
cumulants in exact rational arithmetic, certifies whether every root lies
on the unit circle at a requested binary precision, and classifies the
shape of the standardized distribution as the degree grows.
"""
from .errors import (
    BadConstantTerm,
    DegenerateAtOne,
    DegenerateSpec,
    EvenDegree,
    IndexOutOfRange,
    InvalidParams,
    MismatchBeyondTolerance,
    NegativeCoefficient,
    NoKnownLimit,
    NonPolynomialQuotient,
    NotPalindromic,
    OddDegree,
    RootsOffCircle,
    UnimomentError,
    UnknownLaw,
    UnresolvedMultiplicity,
    ZeroPolynomial,
    ZeroVariance,
)
from .exactpoly import (
    DEFAULT_SERIES_ORDER,
    ExactPoly,
    FactoredSpec,
    TruncatedSeries,
    expand_factored,
    from_coeffs,
    poly_add,
    poly_exact_div,
    poly_mul,
    power_sums,
    series_exp,
    series_from_moments,
    series_log,
    strip_shift,
)
from .families import (
    FACTORED_FAMILIES,
    FamilyOutput,
    FamilySpec,
    LimitOracle,
    generate,
    limit_moment_oracles,
    list_families,
)
from .limitlaw import (
    LimitLawDescriptor,
    SweepRow,
    classify,
    convergence_sweep,
    cumulant_condition,
    cumulant_sign_check,
    extract_product_params,
    kolmogorov_distance_to_normal,
    reference_jump_masses,
    reference_moments,
)
from .moments import (
    CumulantVector,
    Distribution,
    FourthMomentGap,
    LiftReport,
    MgfCheckRecord,
    central_moment,
    cumulants_factored,
    cumulants_from_pmf,
    fourth_moment_gap,
    make_distribution,
    mgf_bound_check,
    normalized_fourth,
    odd_degree_lift,
    raw_moments,
)
from .specfun import bernoulli, cauchy, euler, sinh_power, stirling
from .unitroots import (
    AngleProfile,
    FourthIdentityReport,
    JumpFunction,
    angle_cumulants,
    angle_power_sums,
    fourth_identity_check,
    jump_function,
    omega,
    self_inversive_check,
    unit_angles,
)

__version__ = "0.1.0"

__all__ = [
    "AngleProfile",
    "BadConstantTerm",
    "CumulantVector",
    "DEFAULT_SERIES_ORDER",
    "DegenerateAtOne",
    "DegenerateSpec",
    "Distribution",
    "EvenDegree",
    "ExactPoly",
    "FACTORED_FAMILIES",
    "FactoredSpec",
    "FamilyOutput",
    "FamilySpec",
    "FourthIdentityReport",
    "FourthMomentGap",
    "IndexOutOfRange",
    "InvalidParams",
    "JumpFunction",
    "LiftReport",
    "LimitLawDescriptor",
    "LimitOracle",
    "MgfCheckRecord",
    "MismatchBeyondTolerance",
    "NegativeCoefficient",
    "NoKnownLimit",
    "NonPolynomialQuotient",
    "NotPalindromic",
    "OddDegree",
    "RootsOffCircle",
    "SweepRow",
    "TruncatedSeries",
    "UnimomentError",
    "UnknownLaw",
    "UnresolvedMultiplicity",
    "ZeroPolynomial",
    "ZeroVariance",
    "angle_cumulants",
    "angle_power_sums",
    "bernoulli",
    "cauchy",
    "central_moment",
    "classify",
    "convergence_sweep",
    "cumulant_condition",
    "cumulant_sign_check",
    "cumulants_factored",
    "cumulants_from_pmf",
    "euler",
    "expand_factored",
    "extract_product_params",
    "fourth_identity_check",
    "fourth_moment_gap",
    "from_coeffs",
    "generate",
    "jump_function",
    "kolmogorov_distance_to_normal",
    "limit_moment_oracles",
    "list_families",
    "make_distribution",
    "mgf_bound_check",
    "normalized_fourth",
    "odd_degree_lift",
    "omega",
    "poly_add",
    "poly_exact_div",
    "poly_mul",
    "power_sums",
    "raw_moments",
    "reference_jump_masses",
    "reference_moments",
    "self_inversive_check",
    "series_exp",
    "series_from_moments",
    "series_log",
    "sinh_power",
    "stirling",
    "strip_shift",
    "unit_angles",
]
