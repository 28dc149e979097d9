"""Extremogram estimator families.

Every family is a ratio estimator: the per-lag estimate is the number of
times a conditioning event at t is followed by a response event at t+h,
divided by the number of conditioning events. ``RatioKernel`` holds the two
indicator sequences for one family; the public estimator functions build a
kernel and return its point estimates. The resample module reuses kernels to
generate bootstrap replicates from the same indicator sequences.

Families:
  univariate        num[h] = #{t <= n-h : X_t/a in A and X_{t+h}/a in B}
  cross             num[h] = #{t <= n-h : X_t/a_x in A and Y_{t+h}/a_y in B}
  tri_union_target  num[h] = #{t : X_t exceeds and (Y_{t+h} or Z_{t+h} exceeds)}
  tri_union_source  num[h] = #{t : (X_t or Y_t exceeds) and Z_{t+h} exceeds}
  return_times      num[h] = #{t : events at t and t+h with none in between}

Numerator sums run to n-h with the denominator over all n observations; no
edge correction is applied.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import ExtremalRegion, ThresholdSpec, TimeSeries, make_indicators
from .errors import InvalidInput, NoExceedances

FAMILY_UNIVARIATE = "univariate"
FAMILY_CROSS = "cross"
FAMILY_TRI_TARGET = "tri_union_target"
FAMILY_TRI_SOURCE = "tri_union_source"
FAMILY_RETURN_TIMES = "return_times"

FAMILIES = (
    FAMILY_UNIVARIATE,
    FAMILY_CROSS,
    FAMILY_TRI_TARGET,
    FAMILY_TRI_SOURCE,
    FAMILY_RETURN_TIMES,
)


@dataclass(frozen=True)
class ExtremogramEstimate:
    """Per-lag conditional exceedance estimates for one family."""

    family: str
    lags: np.ndarray
    estimates: np.ndarray
    denominator_count: int
    thresholds: tuple[ThresholdSpec, ...]
    lag_zero_trivial: bool = False

    def __post_init__(self):
        lags = np.asarray(self.lags, dtype=int)
        est = np.asarray(self.estimates, dtype=float)
        if lags.shape != est.shape:
            raise InvalidInput("lags and estimates must align")
        if self.denominator_count < 1:
            raise InvalidInput("denominator count must be at least 1")
        if np.any(est < 0.0) or np.any(est > 1.0):
            raise InvalidInput("estimates must lie in [0, 1]")
        if self.family == FAMILY_RETURN_TIMES and est.sum() > 1.0 + 1e-12:
            raise InvalidInput("return-time estimates must sum to at most 1")
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "estimates", est)


@dataclass(frozen=True)
class GeomHistogram:
    """Waiting-time histogram between events, with a geometric reference."""

    counts: dict[int, int]
    total: int
    reference_p: float
    thresholds: tuple[ThresholdSpec, ...] = ()

    def __post_init__(self):
        if not 0.0 < self.reference_p < 1.0:
            raise InvalidInput("reference probability must be in (0, 1)")
        if sum(self.counts.values()) > self.total:
            raise InvalidInput("histogram counts exceed the event total")

    def lags(self) -> np.ndarray:
        return np.array(sorted(self.counts), dtype=int)

    def estimates(self) -> ExtremogramEstimate:
        lags = self.lags()
        est = np.array([self.counts[h] / self.total for h in lags], dtype=float)
        return ExtremogramEstimate(
            family=FAMILY_RETURN_TIMES,
            lags=lags,
            estimates=est,
            denominator_count=self.total,
            thresholds=self.thresholds,
        )

    def geometric_pmf(self, h) -> np.ndarray:
        """Reference waiting-time pmf under independence: p(1-p)^(h-1)."""
        h = np.asarray(h, dtype=float)
        return self.reference_p * (1.0 - self.reference_p) ** (h - 1.0)


@dataclass(frozen=True)
class RatioKernel:
    """One extremogram family recast as a ratio of indicator sums.

    ``cond`` marks conditioning events, ``resp`` response events (the same
    array object for return times). ``numerator_counts_of`` evaluates the
    family's per-lag numerators on any pair of indicator sequences, so the
    resampling code can recompute the estimator on bootstrap replicates of
    the same sequences.
    """

    family: str
    cond: np.ndarray
    resp: np.ndarray
    lags: np.ndarray
    thresholds: tuple[ThresholdSpec, ...]
    lag_zero_trivial: bool = False

    @property
    def n(self) -> int:
        return int(self.cond.size)

    @property
    def denominator(self) -> int:
        return int(self.cond.sum())

    def numerator_counts_of(self, cond: np.ndarray, resp: np.ndarray) -> np.ndarray:
        """Per-lag numerator counts of this family's estimator, evaluated on
        the given indicator sequences (the originals or a bootstrap
        replicate of them)."""
        n = cond.shape[0]
        if self.family == FAMILY_RETURN_TIMES:
            gaps = np.diff(np.flatnonzero(cond))
            max_lag = int(self.lags.max())
            tally = np.bincount(gaps[gaps <= max_lag], minlength=max_lag + 1)
            return tally[self.lags].astype(np.float64)
        counts = np.empty(self.lags.size)
        for i, h in enumerate(self.lags):
            counts[i] = np.dot(cond[: n - h], resp[h:])
        return counts

    def numerator_counts(self) -> np.ndarray:
        return self.numerator_counts_of(self.cond.astype(np.float64), self.resp.astype(np.float64))

    def point_estimates(self) -> ExtremogramEstimate:
        denom = self.denominator
        est = self.numerator_counts() / denom
        return ExtremogramEstimate(
            family=self.family,
            lags=self.lags,
            estimates=est,
            denominator_count=denom,
            thresholds=self.thresholds,
            lag_zero_trivial=self.lag_zero_trivial,
        )

    def lag_one_value(self, order: np.ndarray) -> float:
        """Lag-1 estimate after jointly reordering both indicator sequences."""
        c = self.cond[order]
        r = self.resp[order]
        return float(np.dot(c[:-1], r[1:])) / self.denominator


def _require_resolved(spec: ThresholdSpec) -> None:
    spec.scale  # raises InvalidState when unresolved


def _check_max_lag(max_lag: int, n: int, min_lag: int = 0) -> int:
    max_lag = int(max_lag)
    if max_lag < min_lag:
        raise InvalidInput(f"max_lag must be at least {min_lag}")
    if max_lag >= n:
        raise InvalidInput(f"max_lag must be smaller than the series length {n}")
    return max_lag


def _conditioning_events(bits: np.ndarray, spec: ThresholdSpec, n: int) -> int:
    count = int(bits.sum())
    if count < 1:
        raise NoExceedances(
            f"no conditioning events at quantile level {spec.quantile_level} (n={n}); lower q",
            q=spec.quantile_level,
            n=n,
        )
    return count


def univariate_kernel(
    x: TimeSeries,
    region_a: ExtremalRegion,
    region_b: ExtremalRegion,
    spec: ThresholdSpec,
    max_lag: int,
) -> RatioKernel:
    _require_resolved(spec)
    max_lag = _check_max_lag(max_lag, len(x))
    cond = make_indicators(x, region_a, spec).bits
    resp = make_indicators(x, region_b, replace(spec)).bits
    _conditioning_events(cond, spec, len(x))
    return RatioKernel(
        family=FAMILY_UNIVARIATE,
        cond=cond,
        resp=resp,
        lags=np.arange(max_lag + 1),
        thresholds=(replace(spec),),
        lag_zero_trivial=region_a == region_b,
    )


def sample_extremogram(
    x: TimeSeries,
    region_a: ExtremalRegion,
    region_b: ExtremalRegion,
    spec: ThresholdSpec,
    max_lag: int,
) -> ExtremogramEstimate:
    """Conditional probability that X_{t+h} is extreme (in B) given X_t is (in A).

    Lag 0 with A = B is trivially 1 and flagged as such on the estimate.
    """
    return univariate_kernel(x, region_a, region_b, spec, max_lag).point_estimates()


def cross_kernel(
    x: TimeSeries,
    y: TimeSeries,
    region_a: ExtremalRegion,
    region_b: ExtremalRegion,
    spec_x: ThresholdSpec,
    spec_y: ThresholdSpec,
    max_lag: int,
) -> RatioKernel:
    if len(x) != len(y):
        raise InvalidInput("cross-extremogram needs series of equal length")
    _require_resolved(spec_x)
    _require_resolved(spec_y)
    max_lag = _check_max_lag(max_lag, len(x))
    cond = make_indicators(x, region_a, spec_x).bits
    resp = make_indicators(y, region_b, spec_y).bits
    _conditioning_events(cond, spec_x, len(x))
    return RatioKernel(
        family=FAMILY_CROSS,
        cond=cond,
        resp=resp,
        lags=np.arange(max_lag + 1),
        thresholds=(replace(spec_x), replace(spec_y)),
    )


def cross_extremogram(
    x: TimeSeries,
    y: TimeSeries,
    region_a: ExtremalRegion,
    region_b: ExtremalRegion,
    spec_x: ThresholdSpec,
    spec_y: ThresholdSpec,
    max_lag: int,
) -> ExtremogramEstimate:
    """Directional extremal dependence: conditioning is always on ``x``.

    Each series is thresholded at its own marginal quantile, so the two
    components may have different scales or tail weights.
    """
    return cross_kernel(x, y, region_a, region_b, spec_x, spec_y, max_lag).point_estimates()


def _exceedance_bits(series: TimeSeries, spec: ThresholdSpec) -> np.ndarray:
    """Events for a series under its spec's own tail convention."""
    return make_indicators(series, spec.reference_region(), spec).bits


def tri_target_kernel(
    x: TimeSeries,
    y: TimeSeries,
    z: TimeSeries,
    spec_x: ThresholdSpec,
    spec_y: ThresholdSpec,
    spec_z: ThresholdSpec,
    max_lag: int,
) -> RatioKernel:
    if not len(x) == len(y) == len(z):
        raise InvalidInput("trivariate extremograms need series of equal length")
    for spec in (spec_x, spec_y, spec_z):
        _require_resolved(spec)
    max_lag = _check_max_lag(max_lag, len(x))
    cond = _exceedance_bits(x, spec_x)
    resp = _exceedance_bits(y, spec_y) | _exceedance_bits(z, spec_z)
    _conditioning_events(cond, spec_x, len(x))
    return RatioKernel(
        family=FAMILY_TRI_TARGET,
        cond=cond,
        resp=resp,
        lags=np.arange(max_lag + 1),
        thresholds=(replace(spec_x), replace(spec_y), replace(spec_z)),
    )


def tri_extremogram_union_target(
    x: TimeSeries,
    y: TimeSeries,
    z: TimeSeries,
    spec_x: ThresholdSpec,
    spec_y: ThresholdSpec,
    spec_z: ThresholdSpec,
    max_lag: int,
) -> ExtremogramEstimate:
    """P(Y or Z extreme at t+h | X extreme at t), each at its own threshold."""
    return tri_target_kernel(x, y, z, spec_x, spec_y, spec_z, max_lag).point_estimates()


def tri_source_kernel(
    x: TimeSeries,
    y: TimeSeries,
    z: TimeSeries,
    spec_x: ThresholdSpec,
    spec_y: ThresholdSpec,
    spec_z: ThresholdSpec,
    max_lag: int,
) -> RatioKernel:
    if not len(x) == len(y) == len(z):
        raise InvalidInput("trivariate extremograms need series of equal length")
    for spec in (spec_x, spec_y, spec_z):
        _require_resolved(spec)
    max_lag = _check_max_lag(max_lag, len(x))
    cond = _exceedance_bits(x, spec_x) | _exceedance_bits(y, spec_y)
    resp = _exceedance_bits(z, spec_z)
    _conditioning_events(cond, spec_x, len(x))
    return RatioKernel(
        family=FAMILY_TRI_SOURCE,
        cond=cond,
        resp=resp,
        lags=np.arange(max_lag + 1),
        thresholds=(replace(spec_x), replace(spec_y), replace(spec_z)),
    )


def tri_extremogram_union_source(
    x: TimeSeries,
    y: TimeSeries,
    z: TimeSeries,
    spec_x: ThresholdSpec,
    spec_y: ThresholdSpec,
    spec_z: ThresholdSpec,
    max_lag: int,
) -> ExtremogramEstimate:
    """P(Z extreme at t+h | X or Y extreme at t), each at its own threshold."""
    return tri_source_kernel(x, y, z, spec_x, spec_y, spec_z, max_lag).point_estimates()


def return_times_kernel(
    x: TimeSeries,
    region_a: ExtremalRegion,
    spec: ThresholdSpec,
    max_lag: int,
) -> RatioKernel:
    _require_resolved(spec)
    max_lag = _check_max_lag(max_lag, len(x), min_lag=1)
    bits = make_indicators(x, region_a, spec).bits
    _conditioning_events(bits, spec, len(x))
    return RatioKernel(
        family=FAMILY_RETURN_TIMES,
        cond=bits,
        resp=bits,
        lags=np.arange(1, max_lag + 1),
        thresholds=(replace(spec),),
    )


def return_times_extremogram(
    x: TimeSeries,
    region_a: ExtremalRegion,
    spec: ThresholdSpec,
    max_lag: int,
    reference_p: float | None = None,
) -> GeomHistogram:
    """Waiting-time estimates: P(next event exactly h steps after an event).

    Lag 1 counts immediate repeats (no gap to keep clear). The reference
    success probability defaults to the nominal exceedance rate implied by
    the threshold level and can be overridden.
    """
    kernel = return_times_kernel(x, region_a, spec, max_lag)
    counts = kernel.numerator_counts()
    p_ref = float(reference_p) if reference_p is not None else kernel.thresholds[0].nominal_rate()
    return GeomHistogram(
        counts={int(h): int(c) for h, c in zip(kernel.lags, counts)},
        total=kernel.denominator,
        reference_p=p_ref,
        thresholds=kernel.thresholds,
    )
