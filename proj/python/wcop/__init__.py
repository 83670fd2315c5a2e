"""Weighted composition operators on the Schwartz space."""

from ._wcop import (
    CapExceeded,
    DimensionMismatch,
    Error,
    Expr,
    GrammarClosureError,
    InternalInconsistency,
    InvalidRange,
    NotApplicable,
    ParseError,
    PositivityError,
    PreconditionViolated,
    ZeroPolynomial,
    __version__,
    check_exp_inequality,
    classify,
    cli,
    corpus,
    exists_q,
    has_fixed_point,
    run_corpus,
)

__all__ = [
    "CapExceeded",
    "DimensionMismatch",
    "Error",
    "Expr",
    "GrammarClosureError",
    "InternalInconsistency",
    "InvalidRange",
    "NotApplicable",
    "ParseError",
    "PositivityError",
    "PreconditionViolated",
    "ZeroPolynomial",
    "__version__",
    "check_exp_inequality",
    "classify",
    "cli",
    "corpus",
    "exists_q",
    "has_fixed_point",
    "run_corpus",
]
