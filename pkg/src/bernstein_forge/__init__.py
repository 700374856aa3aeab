"""Exact construction and analysis of generalized Bernstein operators."""

from .errors import (
    ArityMismatch,
    BadExponents,
    BadInterval,
    BernsteinForgeError,
    ConstantNotInSpace,
    DerivedBasisUnavailable,
    F0NotPositive,
    IdentityViolation,
    InconsistentSystem,
    NoBracket,
    NonExactDivision,
    NonPositiveScalar,
    NotInSpace,
    RatioNotMonotone,
    ToleranceTooLoose,
    ZeroPolynomial,
)
from .linsolve import LinearSolution, solve_linear
from .operator import (
    DEFAULT_TOL,
    ExistenceReport,
    OperatorProblem,
    OperatorSpec,
    StructuralDiagnostics,
    build_operator,
    certify_monotone_ratio,
    certify_problem,
    evaluate_operator,
    existence_report,
    operator_combination,
    structural_diagnostics,
    w_coefficients,
)
from .polynomial import Polynomial
from .rational import as_rational, format_decimal, format_rational
from .spaces import (
    BernsteinBasis,
    DerivedSpaceRep,
    MonomialSpace,
    NoBasisReport,
    basis_from_generators,
    bernstein_basis,
    build_space,
    coordinates,
    derived_space,
    normalize_partition_of_unity,
)
from .sturm import (
    RootEnclosure,
    SignClassification,
    SturmChain,
    bisect_root,
    classify_on_interval,
    isolate_roots,
    rational_roots,
    sturm_chain,
    sturm_count,
)

__version__ = "0.1.0"
