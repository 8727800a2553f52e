"""Total domination polynomials: exact enumeration, closed forms, roots and theorem checks."""

from .closed_forms import (
    closed_form,
    dt_complete,
    dt_corona_empty,
    dt_friendship4,
    dt_gadget,
    dt_generalized_helm,
    dt_join,
    dt_lex_complete,
    dt_lex_star_complete,
    dt_star,
    has_closed_form,
)
from .errors import (
    ConvergenceError,
    NoTotalDominatingSet,
    ParameterError,
    SizeError,
    TdlabError,
    UnsupportedFamily,
)
from .graph import FamilySpec, Graph, build_family, metrics
from .poly import Polynomial, eval_exact
from .report import CheckResult, GraphRecord, VerificationReport
from .roots import (
    RootSet,
    SolverConfig,
    certify_real_root_interval,
    check_integer_roots,
    check_nonreal_count,
    check_residuals,
    check_root_bound,
    check_three_root_theorem,
    find_roots,
    limit_sequence,
    log_limit_sequence,
)
from .tds import coefficient_checks, dt_partial, dt_polynomial, gamma_t, is_total_dominating

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "ConvergenceError",
    "FamilySpec",
    "Graph",
    "GraphRecord",
    "NoTotalDominatingSet",
    "ParameterError",
    "Polynomial",
    "RootSet",
    "SizeError",
    "SolverConfig",
    "TdlabError",
    "UnsupportedFamily",
    "VerificationReport",
    "build_family",
    "certify_real_root_interval",
    "check_integer_roots",
    "check_nonreal_count",
    "check_residuals",
    "check_root_bound",
    "check_three_root_theorem",
    "closed_form",
    "coefficient_checks",
    "dt_complete",
    "dt_corona_empty",
    "dt_friendship4",
    "dt_gadget",
    "dt_generalized_helm",
    "dt_join",
    "dt_lex_complete",
    "dt_lex_star_complete",
    "dt_partial",
    "dt_polynomial",
    "dt_star",
    "eval_exact",
    "find_roots",
    "gamma_t",
    "has_closed_form",
    "is_total_dominating",
    "limit_sequence",
    "log_limit_sequence",
    "metrics",
]
