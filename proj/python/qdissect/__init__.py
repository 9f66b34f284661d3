"""Truncated q-series engine for overpartition congruence verification.

The heavy lifting lives in the compiled extension; this package just
re-exports it.
"""

from ._core import (  # noqa: F401
    EvalError,
    ParseError,
    ScriptError,
    Series,
    catalog_names,
    check_binomial_congruence,
    check_family,
    check_indexed_family,
    expand,
    expand_f,
    export_catalog,
    jacobi_theta3,
    match_claim_t1,
    match_claim_t2,
    oracle_counts,
    overpartition_gf,
    replay,
    series_from_json,
    square_progression_empty,
    t1_t2_decomposition,
    triangular_gap_check,
    verify_identities,
    verify_poly_reductions,
    __version__,
)
