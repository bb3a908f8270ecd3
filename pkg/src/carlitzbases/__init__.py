"""Carlitz polynomials and digit derivatives as orthonormal bases on F_q[[T]].

Exact arithmetic in F_q[T] and precision-tracked truncated Laurent series,
the two canonical orthonormal bases of continuous functions on F_q[[T]]
(Carlitz digit products and digit derivatives), coefficient-recovery
transforms for each, basis-change matrices, and an executable verifier
for the identity families relating them.
"""

from .algebra import (
    EXACT,
    BudgetError,
    DomainError,
    FieldConfig,
    InexactDivisionError,
    Norm,
    Poly,
    PrecisionError,
    TruncSeries,
    lucas_binom,
    parse_poly,
    poly_enumerate,
    valuation_norm,
    values_match,
)
from .carlitz import (
    DigitIndex,
    LinearPolynomial,
    bracket,
    carlitz_F,
    carlitz_L,
    digit_factorial,
    e_poly,
    eval_E,
    eval_G,
)
from .hasse import eval_D, hasse_derivative, powered_D
from .transforms import (
    Basis,
    BasisExpansion,
    BasisMatrix,
    LinearFunc,
    carlitz_coeffs,
    convert_powered,
    delta,
    delta_upper,
    digit_coeffs,
    digit_coeffs_linear,
    inverse_matrix,
    powered_digit_coeffs,
    synthesize,
    voloch_matrix,
    wagner_coeffs,
)
from .identities import (
    VerdictReport,
    basis_distance,
    check_addition_law,
    check_orthogonality,
    check_power_criterion,
    check_reduced_basis,
    classify_linearity,
    orthogonality_suite,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "Basis",
    "BasisExpansion",
    "BasisMatrix",
    "BudgetError",
    "DigitIndex",
    "DomainError",
    "FieldConfig",
    "InexactDivisionError",
    "LinearFunc",
    "LinearPolynomial",
    "Norm",
    "Poly",
    "PrecisionError",
    "TruncSeries",
    "VerdictReport",
    "basis_distance",
    "bracket",
    "check_addition_law",
    "check_orthogonality",
    "check_power_criterion",
    "check_reduced_basis",
    "classify_linearity",
    "orthogonality_suite",
    "run_suite",
    "carlitz_F",
    "carlitz_L",
    "carlitz_coeffs",
    "convert_powered",
    "delta",
    "delta_upper",
    "digit_coeffs",
    "digit_coeffs_linear",
    "digit_factorial",
    "e_poly",
    "eval_D",
    "eval_E",
    "eval_G",
    "hasse_derivative",
    "inverse_matrix",
    "lucas_binom",
    "parse_poly",
    "poly_enumerate",
    "powered_D",
    "powered_digit_coeffs",
    "synthesize",
    "valuation_norm",
    "values_match",
    "voloch_matrix",
    "wagner_coeffs",
]
