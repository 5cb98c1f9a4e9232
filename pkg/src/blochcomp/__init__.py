"""Numerical diagnostics for weighted composition operators into the Bloch space.

Given a multiplier u and an analytic self-map phi of the unit disk, the
package decides boundedness and compactness of f |-> u * (f o phi) from a
weighted Bergman space or a Hardy space into the Bloch space by computing
three equivalent characterizations independently and cross-checking them,
and it reports boundary-limsup proxies for the essential norm.
"""

from .criteria import (
    CLASS_BOUNDED_NONCOMPACT,
    CLASS_COMPACT,
    CLASS_INDETERMINATE,
    CLASS_UNBOUNDED,
    DiagnosticsReport,
    Prerequisites,
    ProxyReport,
    RunConfig,
    SelfMapError,
    SequenceCriterion,
    analyze,
    classify,
    default_j_schedule,
    direct_criterion,
    essential_norm_proxies,
    hinf_comp_sequence,
    hinf_comp_sup,
    lemma33_check,
    prerequisites,
    sequence_criterion,
    testfn_criterion,
)
from .disk import (
    DEFAULT_CUT_SCHEDULE,
    DiskGrid,
    GridEvaluationError,
    ParameterError,
    QuadratureConfig,
    SupEstimate,
    TailEstimate,
    TrendConfig,
    bergman_integral,
    build_grid,
    circle_mean,
    classify_trend,
    default_cuts,
    sup_estimate,
    tail_sup,
)
from .expr import (
    AnalyticSymbol,
    EvaluationError,
    ParseError,
    SelfMapCheck,
    compose,
    const,
    derivative,
    evaluate,
    exp_of,
    int_pow,
    log_of,
    parse_symbol,
    real_power,
    validate_self_map,
    var_z,
)
from .oracles import (
    OracleValue,
    bloch_seminorm_monomial,
    lemma_limit,
    mobius_symbol,
    monomial_bergman_norm,
    monomial_weighted_norm,
)
from .spaces import (
    SpaceSpec,
    TestFunctionFamily,
    bergman,
    bergman_norm,
    bloch_norm,
    bloch_seminorm,
    hardy,
    hardy_norm,
    make_test_function,
    parse_space,
    weighted_sup_norm,
)

__version__ = "0.1.0"
