"""Seed-substream derivation used by every randomized routine.

All randomness flows through numpy's PCG64 generator. A routine with seed
``s`` and stream key ``(k1, k2, ...)`` draws from
``np.random.default_rng(np.random.SeedSequence([s, k1, k2, ...]))``, so
derived streams (bootstrap replicates, permutations, model innovations)
are reproducible, independent of each other, and independent of the order
in which they are consumed.
"""

import numpy as np

from .errors import InvalidInput


def check_seed(seed) -> int:
    seed = int(seed)
    if seed < 0 or seed > 2**64 - 1:
        raise InvalidInput(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def substream(seed: int, *key: int) -> np.random.Generator:
    """Generator for the (seed, *key) substream."""
    return np.random.default_rng(np.random.SeedSequence([check_seed(seed), *map(int, key)]))


def spawn_seed(seed: int, *key: int) -> int:
    """Collapse (seed, *key) into a single integer usable as a child seed."""
    state = np.random.SeedSequence([check_seed(seed), *map(int, key)]).generate_state(1, np.uint64)
    return int(state[0])
