"""
Seeded Randomness
Every random draw in the simulator flows from a 64-bit seed through numpy's PCG64
"""
import numpy as np

from .errors import InvalidParameterError

MAX_SEED = 2 ** 64 - 1


def validate_seed(seed) -> int:
    """Check that a seed is an unsigned 64-bit integer"""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise InvalidParameterError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if seed < 0 or seed > MAX_SEED:
        raise InvalidParameterError(f"seed must lie in [0, 2^64 - 1], got {seed}")
    return seed


def make_rng(seed) -> np.random.Generator:
    """Build the generator for a seed; same seed, same stream"""
    return np.random.Generator(np.random.PCG64(validate_seed(seed)))
