"""Lacunary integer sequences whose reciprocal subset sums fill rational
intervals: constructions, Egyptian-fraction extraction, and exact
verification. All rationals cross the boundary as strings like "3/2";
integers are native Python ints.
"""

from ._lacunary import (
    BudgetError,
    ParamError,
    PrefixError,
    Sequence,
    analysis_report,
    brute_force_sums,
    build_theorem1,
    build_theorem2,
    build_theorem3,
    check_jump_optimality,
    check_neceint,
    fixture27,
    interval_cover,
    kakeya_classify,
    lazy_greedy,
    make_sequence,
    r_lambda,
    r_lambda_digits,
    r_lambda_sweep,
    represent,
    represent_many,
    theorem4_chain,
    theorem4_sequence,
    thm3_params,
    verify_fill,
)

__all__ = [
    "BudgetError",
    "ParamError",
    "PrefixError",
    "Sequence",
    "analysis_report",
    "brute_force_sums",
    "build_theorem1",
    "build_theorem2",
    "build_theorem3",
    "check_jump_optimality",
    "check_neceint",
    "fixture27",
    "interval_cover",
    "kakeya_classify",
    "lazy_greedy",
    "make_sequence",
    "r_lambda",
    "r_lambda_digits",
    "r_lambda_sweep",
    "represent",
    "represent_many",
    "theorem4_chain",
    "theorem4_sequence",
    "thm3_params",
    "verify_fill",
]
