"""Stationary bootstrap, closed-form replicate variance, permutation bands.

Replicates are built from blocks with uniform random start positions and
independent geometric lengths, concatenated with circular wrap-around and
truncated to the original length. Band construction never resamples raw
values: a ``RatioKernel``'s indicator sequences are resampled jointly (one
shared block plan per replicate) and the family's estimator is recomputed
on each materialized replicate. Thresholds are never re-resolved; the
indicator sequences already encode them.

Per-replicate randomness comes from substreams keyed by the replicate index
(see _rng), so results are independent of evaluation order and identical
under any parallel schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._rng import spawn_seed, substream
from .core import IndicatorSeries, TimeSeries
from .errors import InvalidInput, UnstableResample
from .estimators import RatioKernel

METHOD_CENTERED = "centered"
METHOD_QUANTILE = "quantile_of_replicates"
BAND_METHODS = (METHOD_CENTERED, METHOD_QUANTILE)

# replicates may lose every conditioning event; more than this fraction of
# skipped replicates invalidates the band construction
MAX_SKIP_RATE = 0.05


@dataclass(frozen=True)
class BlockPlan:
    """Realized resampling structure: start positions and block lengths.

    ``starts`` are 1-based positions in 1..n; ``lengths`` are geometric with
    success probability ``block_parameter``. The plan covers at least n
    output positions; materializing truncates the final block so the
    replicate has length exactly n.
    """

    starts: np.ndarray
    lengths: np.ndarray
    n: int
    block_parameter: float
    seed: int

    def __post_init__(self):
        starts = np.asarray(self.starts, dtype=np.int64)
        lengths = np.asarray(self.lengths, dtype=np.int64)
        if starts.size != lengths.size or starts.size == 0:
            raise InvalidInput("starts and lengths must be non-empty and aligned")
        if starts.min() < 1 or starts.max() > self.n:
            raise InvalidInput("start positions must lie in 1..n")
        if lengths.min() < 1:
            raise InvalidInput("block lengths must be positive")
        total = int(lengths.sum())
        if total < self.n or total - int(lengths[-1]) >= self.n:
            raise InvalidInput("block count must be minimal with total length >= n")
        object.__setattr__(self, "starts", starts)
        object.__setattr__(self, "lengths", lengths)

    @property
    def count(self) -> int:
        return int(self.starts.size)

    @property
    def mean_block_size(self) -> float:
        return 1.0 / self.block_parameter

    def index_array(self) -> np.ndarray:
        """0-based source index for each of the n output positions."""
        lengths = self.lengths
        total = int(lengths.sum())
        first = np.repeat(np.cumsum(lengths) - lengths, lengths)
        start0 = np.repeat(self.starts - 1, lengths)
        offsets = np.arange(total, dtype=np.int64) - first
        return ((start0 + offsets) % self.n)[: self.n]


def draw_block_plan(n: int, p: float, seed: int) -> BlockPlan:
    """Draw a stationary-bootstrap plan: uniform starts, geometric lengths.

    Deterministic given the seed. Lengths and starts come from two
    independent substreams (keys 0 and 1), so the start stream can be
    reproduced without replaying the geometric draws.
    """
    n = int(n)
    if n < 1:
        raise InvalidInput("need n >= 1")
    if not 0.0 < p <= 1.0:
        raise InvalidInput(f"block parameter must be in (0, 1], got {p}")
    length_rng = substream(seed, 0)
    chunk = max(int(math.ceil(1.5 * n * p)) + 16, 16)
    pieces = []
    total = 0
    while total < n:
        draw = length_rng.geometric(p, size=chunk).astype(np.int64)
        pieces.append(draw)
        total += int(draw.sum())
    lengths = np.concatenate(pieces)
    stop = int(np.searchsorted(np.cumsum(lengths), n))
    lengths = lengths[: stop + 1]
    starts = substream(seed, 1).integers(1, n + 1, size=lengths.size, dtype=np.int64)
    return BlockPlan(starts=starts, lengths=lengths, n=n, block_parameter=float(p), seed=int(seed))


def _as_array(data) -> np.ndarray:
    if isinstance(data, TimeSeries):
        return data.values
    if isinstance(data, IndicatorSeries):
        return data.bits
    return np.asarray(data)


def materialize(plan: BlockPlan, data):
    """Resample one series, or several aligned ones, under the same plan.

    Accepts an array / TimeSeries / IndicatorSeries or a list/tuple of them;
    every input must have length plan.n. With several inputs the same block
    structure is applied to all, so position j of every output comes from
    the same source index.
    """
    idx = plan.index_array()
    if isinstance(data, (list, tuple)):
        arrays = [_as_array(d) for d in data]
        for arr in arrays:
            if arr.shape[0] != plan.n:
                raise InvalidInput("every input must match the plan length")
        return [arr[idx] for arr in arrays]
    arr = _as_array(data)
    if arr.shape[0] != plan.n:
        raise InvalidInput(f"plan drawn for n={plan.n}, input has length {arr.shape[0]}")
    return arr[idx]


def _autocovariances(centered: np.ndarray) -> np.ndarray:
    """Sample autocovariances with divisor n, all lags 0..n-1, via FFT."""
    n = centered.size
    nfft = 1 << int(2 * n - 1).bit_length()
    spectrum = np.fft.rfft(centered, nfft)
    acov = np.fft.irfft(spectrum * np.conj(spectrum), nfft)[:n]
    return acov / n


def bootstrap_variance_s2(indicators, p: float) -> float:
    """Closed-form variance of sqrt(n) times a replicate mean.

    Uses the circular autocovariances c[h] = g[h] + g[n-h] (g the ordinary
    sample autocovariance with divisor n) weighted by (1-h/n)(1-p)^h. This
    equals the exact conditional variance of sqrt(n) * mean(replicate) under
    the stationary bootstrap, for any 0 < p <= 1.
    """
    bits = _as_array(indicators).astype(float)
    n = bits.size
    if n < 2:
        raise InvalidInput("need at least two observations")
    if not 0.0 < p <= 1.0:
        raise InvalidInput(f"block parameter must be in (0, 1], got {p}")
    gamma = _autocovariances(bits - bits.mean())
    circ = gamma.copy()
    circ[1:] += gamma[:0:-1]  # g[n-h] for h = 1..n-1; g[n] = 0
    h = np.arange(1, n, dtype=float)
    weights = (1.0 - h / n) * (1.0 - p) ** h
    return float(circ[0] + 2.0 * np.dot(weights, circ[1:]))


@dataclass(frozen=True)
class BootstrapBands:
    """Point estimates with per-lag bootstrap bands and replicate summary."""

    lags: np.ndarray
    point: np.ndarray
    replicates: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    band_method: str
    replicate_count: int
    block_parameter: float
    seed: int
    levels: tuple[float, float]
    skipped: int

    @property
    def mean_block_size(self) -> float:
        return 1.0 / self.block_parameter

    @property
    def replicate_mean(self) -> np.ndarray:
        """Mean of the replicate estimates; its gap to ``point`` surfaces the
        resampling bias discussed in the band-method docs."""
        return self.replicates.mean(axis=0)

    @property
    def skip_rate(self) -> float:
        return self.skipped / self.replicate_count


def bootstrap_bands(
    kernel: RatioKernel,
    *,
    p: float = 0.01,
    replicates: int = 10_000,
    levels: tuple[float, float] = (0.025, 0.975),
    method: str = METHOD_CENTERED,
    seed: int = 0,
) -> BootstrapBands:
    """Per-lag confidence bands from stationary-bootstrap replicates.

    Each replicate draws one block plan, materializes the kernel's
    conditioning and response indicator sequences under that shared plan,
    and recomputes the family's estimator on the replicate. Because the
    pairs are re-formed inside the replicate, dependence at lags well
    beyond the mean block size is broken by the resampling, so small block
    sizes cannot capture long-range extremal dependence (raise the block
    size to probe it). Replicates with no conditioning events are skipped;
    more than MAX_SKIP_RATE of them raises UnstableResample.

    method "quantile_of_replicates" returns the empirical level quantiles
    of the replicate estimates. method "centered" returns
    point - upper/lower quantiles of (replicate - point): bands for the
    finite-threshold extremogram itself. The point estimate need not sit in
    the center of the centered bands; compare ``replicate_mean`` with
    ``point`` to see the resampling bias.
    """
    if replicates < 100:
        raise InvalidInput("need at least 100 replicates for quantile bands")
    if method not in BAND_METHODS:
        raise InvalidInput(f"unknown band method {method!r}; expected one of {BAND_METHODS}")
    lo_level, hi_level = float(levels[0]), float(levels[1])
    if not 0.0 < lo_level < hi_level < 1.0:
        raise InvalidInput("band levels must satisfy 0 < lower < upper < 1")

    estimate = kernel.point_estimates()  # validates the denominator up front
    n = kernel.n
    cond = kernel.cond.astype(np.float64)
    shared = kernel.resp is kernel.cond
    resp = cond if shared else kernel.resp.astype(np.float64)

    kept = np.empty((replicates, kernel.lags.size))
    n_kept = 0
    skipped = 0
    for i in range(replicates):
        plan = draw_block_plan(n, p, spawn_seed(seed, i))
        idx = plan.index_array()
        c = cond[idx]
        r = c if shared else resp[idx]
        denom = c.sum()
        if denom == 0.0:
            skipped += 1
            continue
        kept[n_kept] = kernel.numerator_counts_of(c, r) / denom
        n_kept += 1
    if skipped > MAX_SKIP_RATE * replicates:
        raise UnstableResample(
            f"{skipped} of {replicates} replicates had no conditioning events",
            skip_rate=skipped / replicates,
        )
    reps = kept[:n_kept]

    point = estimate.estimates
    if method == METHOD_QUANTILE:
        lower = np.quantile(reps, lo_level, axis=0)
        upper = np.quantile(reps, hi_level, axis=0)
    else:
        delta = reps - point[None, :]
        lower = point - np.quantile(delta, hi_level, axis=0)
        upper = point - np.quantile(delta, lo_level, axis=0)
    return BootstrapBands(
        lags=kernel.lags.copy(),
        point=point,
        replicates=reps,
        lower=lower,
        upper=upper,
        band_method=method,
        replicate_count=replicates,
        block_parameter=float(p),
        seed=int(seed),
        levels=(lo_level, hi_level),
        skipped=skipped,
    )


def permutation_bands(kernel: RatioKernel, *, n_perm: int = 99, seed: int = 0) -> tuple[float, float]:
    """No-dependence reference band: min and max of the lag-1 estimate over
    random joint permutations of the underlying observations.

    The same permutation is applied to the conditioning and response
    sequences, preserving contemporaneous pairing, and thresholds need no
    re-resolution because empirical quantiles are permutation-invariant.
    The permutation distribution is essentially lag-free, so the single
    (lower, upper) pair serves as a constant band across all lags.
    """
    if n_perm < 1:
        raise InvalidInput("need at least one permutation")
    assert kernel.denominator > 0  # permutations preserve event counts
    values = np.empty(n_perm)
    for i in range(n_perm):
        order = substream(seed, i).permutation(kernel.n)
        values[i] = kernel.lag_one_value(order)
    return float(values.min()), float(values.max())
