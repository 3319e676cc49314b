"""Exact Hurwitz stability analysis and Hadamard factorization of positive polynomials."""

__version__ = "0.1.0"

from .delta import (
    DeltaPair,
    Obstruction,
    delta_bounds,
    delta_bounds_survey,
    deltas,
    obstruction_value,
    quotient_delta_growth,
    quotient_delta_identity,
)
from .errors import (
    BadIndex,
    ConvergenceFailure,
    DegreeMismatch,
    DegreeTooSmall,
    HadamardError,
    InvalidPolynomial,
    InvariantViolation,
    NotStable,
    QuotientNotStable,
)
from .factorization import (
    ChainRecord,
    FactorizationOutcome,
    HuntReport,
    Status,
    binomial_polynomial,
    build_chain,
    hunt_counterexample,
    search_factorization,
    verify_factorization,
)
from .hurwitz import (
    HurwitzMatrix,
    MinorReport,
    hurwitz_matrix,
    is_stable_exact,
    is_stable_float,
    kemperman_audit,
    leading_minors,
    locate_margin_submatrix,
    necessary_inequalities,
    stability_agreement_survey,
    submatrix,
)
from .polynomial import (
    PositivePolynomial,
    evaluate,
    hadamard_product,
    hadamard_quotient,
    ones,
    parse,
    random_positive,
    random_stable,
)
