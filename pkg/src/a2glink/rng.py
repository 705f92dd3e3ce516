"""Reproducible substream derivation.

Every random draw in the package comes from a counter-based Philox
generator seeded through ``SeedSequence([master_seed, *tags])``, so each
(experiment, sweep point, role) cell owns an independent stream that is
reproducible regardless of execution order or thread scheduling.
"""

from __future__ import annotations

import numpy as np

# stream roles
PAYLOAD = 1
NOISE = 2
FADING = 3
FEEDBACK_NOISE = 4
FEEDBACK_FADING = 5
SHIFT_SCHEDULE = 6

PRNG_ID = "numpy-philox/seedsequence"


def substream(master_seed: int, *tags: int) -> np.random.Generator:
    """Independent generator for (master seed, tag path)."""
    ss = np.random.SeedSequence([int(master_seed) & 0xFFFFFFFF, *[int(t) & 0xFFFFFFFF for t in tags]])
    return np.random.Generator(np.random.Philox(ss))
