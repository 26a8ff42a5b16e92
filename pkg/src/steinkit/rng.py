"""Reproducible random streams.

All randomness in the package flows through Philox, a counter-based 64-bit
generator whose output is identical across platforms and thread counts.  A
stream is addressed by the user seed plus a named stream id; substreams (per
trial, per retry) fold an index into the same key word.  Changing any stream's
consumption pattern is a compatibility break for recorded outputs.
"""

from __future__ import annotations

import numpy as np

# One id per (module, operation) stream.  Never reuse or renumber.
STREAM_IDS = {
    "dissipativity_x": 1,
    "dissipativity_u": 2,
    "iid_gaussian": 3,
    "mixture_iid": 4,
    "single_component": 5,
    "packing": 6,
    "ula_chain": 7,
    "gof_sample": 8,
    "gof_bootstrap": 9,
    "experiment": 10,
}

_MASK64 = (1 << 64) - 1


def make_rng(seed: int, stream: str, substream: int = 0) -> np.random.Generator:
    """Generator for the named stream of a seed.

    substream distinguishes independent draws inside one operation (trial
    index, retry counter); it shares the key word with the stream id.
    """
    base = STREAM_IDS[stream]
    key = [int(seed) & _MASK64, (base + (int(substream) << 16)) & _MASK64]
    return np.random.Generator(np.random.Philox(key=key))
