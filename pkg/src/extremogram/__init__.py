"""Serial extremal dependence in stationary time series.

Estimators for the extremogram family (univariate, cross, trivariate
unions, return times), confidence bands from the stationary bootstrap,
significance bands from random permutation, and GARCH(1,1) / stochastic
volatility tooling for simulation and devolatilization.
"""

__version__ = "0.1.0"

from .core import (
    LOWER,
    TAILS,
    TWO_SIDED,
    UPPER,
    ExtremalRegion,
    IndicatorSeries,
    ThresholdSpec,
    TimeSeries,
    default_region,
    empirical_quantile,
    log_returns,
    lower_tail_region,
    make_indicators,
    two_sided_region,
    upper_tail_region,
)
from .errors import (
    DegenerateThreshold,
    ExtremogramError,
    FitDiverged,
    InvalidInput,
    InvalidState,
    NoExceedances,
    UnstableResample,
)
from .estimators import (
    FAMILIES,
    ExtremogramEstimate,
    GeomHistogram,
    RatioKernel,
    cross_extremogram,
    cross_kernel,
    return_times_extremogram,
    return_times_kernel,
    sample_extremogram,
    tri_extremogram_union_source,
    tri_extremogram_union_target,
    tri_source_kernel,
    tri_target_kernel,
    univariate_kernel,
)
from .models import (
    GarchParams,
    SvParams,
    VolatilityDecomposition,
    devolatilize,
    fit_garch_qmle,
    simulate_garch,
    simulate_sv,
)
from .resample import (
    BAND_METHODS,
    METHOD_CENTERED,
    METHOD_QUANTILE,
    BlockPlan,
    BootstrapBands,
    bootstrap_bands,
    bootstrap_variance_s2,
    draw_block_plan,
    materialize,
    permutation_bands,
)

__all__ = [
    "__version__",
    "ExtremalRegion",
    "IndicatorSeries",
    "ThresholdSpec",
    "TimeSeries",
    "UPPER",
    "LOWER",
    "TWO_SIDED",
    "TAILS",
    "default_region",
    "empirical_quantile",
    "log_returns",
    "lower_tail_region",
    "make_indicators",
    "two_sided_region",
    "upper_tail_region",
    "ExtremogramError",
    "InvalidInput",
    "InvalidState",
    "DegenerateThreshold",
    "NoExceedances",
    "UnstableResample",
    "FitDiverged",
    "FAMILIES",
    "ExtremogramEstimate",
    "GeomHistogram",
    "RatioKernel",
    "sample_extremogram",
    "cross_extremogram",
    "tri_extremogram_union_target",
    "tri_extremogram_union_source",
    "return_times_extremogram",
    "univariate_kernel",
    "cross_kernel",
    "tri_target_kernel",
    "tri_source_kernel",
    "return_times_kernel",
    "GarchParams",
    "SvParams",
    "VolatilityDecomposition",
    "simulate_garch",
    "simulate_sv",
    "fit_garch_qmle",
    "devolatilize",
    "BlockPlan",
    "BootstrapBands",
    "BAND_METHODS",
    "METHOD_CENTERED",
    "METHOD_QUANTILE",
    "draw_block_plan",
    "materialize",
    "bootstrap_bands",
    "bootstrap_variance_s2",
    "permutation_bands",
]
