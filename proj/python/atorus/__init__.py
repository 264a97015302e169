"""Local algebras, A-differentiable lifts and checks on A-tori."""

from ._core import (
    Algebra,
    AtorusError,
    DomainError,
    IndexNotBreve,
    NonUnit,
    SizeCapExceeded,
    SpecParseError,
    SyntaxError,
    UnknownVariable,
    adiff_defect,
    diff,
    eval_real,
    forms,
    function_nullspace,
    lift_eval,
    run_cli,
    taylor_lift,
    validate,
    verify,
)

__all__ = [
    "Algebra",
    "AtorusError",
    "DomainError",
    "IndexNotBreve",
    "NonUnit",
    "SizeCapExceeded",
    "SpecParseError",
    "SyntaxError",
    "UnknownVariable",
    "adiff_defect",
    "diff",
    "eval_real",
    "forms",
    "function_nullspace",
    "lift_eval",
    "run_cli",
    "taylor_lift",
    "validate",
    "verify",
]
