"""
Counter-based random streams.

Every consumer asks for a generator keyed by (seed, purpose, counters...), so
a stream depends only on its key and not on how many other streams were drawn
before it or in which process. This is what makes swarm updates and
Monte-Carlo frames reproducible for any number of workers.

Example:
    >>> a = stream(42, SIMULATION_STREAM, 7).random()
    >>> b = stream(42, SIMULATION_STREAM, 7).random()
    >>> a == b
    True
"""

import numpy as np

SWARM_INIT_STREAM = 0
SWARM_UPDATE_STREAM = 1
SIMULATION_STREAM = 2


def stream(seed: int, *counters: int) -> np.random.Generator:
    """Independent generator for the key (seed, *counters)."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *(int(c) for c in counters)]))
