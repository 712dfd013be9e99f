"""Floor-quotient sums S_f(x) = sum_{n<=x} f([x/n]) and the exponent bookkeeping around them.

Thin wrapper over the compiled ``_core`` module. Exact rationals come back
as ``fractions.Fraction``.
"""

from ._core import (
    DomainError,
    BudgetExceeded,
    ParseError,
    sieve,
    floor_sum,
    dual_split,
    distinct_quotients,
    main_constant,
    error_series,
    psi_star,
    delta,
    vaaler_check,
    vaughan_check,
    eval_word,
    minimize_max,
    expsum,
    classify,
    run_cli,
)

__all__ = [
    "DomainError",
    "BudgetExceeded",
    "ParseError",
    "sieve",
    "floor_sum",
    "dual_split",
    "distinct_quotients",
    "main_constant",
    "error_series",
    "psi_star",
    "delta",
    "vaaler_check",
    "vaughan_check",
    "eval_word",
    "minimize_max",
    "expsum",
    "classify",
    "run_cli",
]
