"""
Counter-based random substreams.

Every trial draws from Philox keyed by (master seed, stream, trial), so a
trial's data never depends on how trials are scheduled across workers.
"""

import numpy as np

from ..errors import InputError

STREAM_NULL = 0
STREAM_ALTERNATIVE = 1

_U64 = (1 << 64) - 1


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= _U64:
        raise InputError("seed must be an unsigned 64-bit integer")
    return seed


def substream(seed: int, stream: int, trial: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(check_seed(seed), spawn_key=(int(stream), int(trial)))
    return np.random.Generator(np.random.Philox(sequence))


def child_seed(seed: int, *key: int) -> int:
    """Deterministic 64-bit seed for a sub-experiment (e.g. one sweep cell)."""
    sequence = np.random.SeedSequence(check_seed(seed), spawn_key=tuple(int(k) for k in key))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])

