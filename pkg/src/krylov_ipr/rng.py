"""Reproducible random streams.

Every random draw in the toolkit comes from a Philox (counter-based)
generator keyed by ``SeedSequence([master_seed, index, hash(tag)])``.  A
realization's stream therefore depends only on its index and purpose, never
on scheduling, so serial and parallel ensembles see identical numbers.
"""

import hashlib

import numpy as np


def tag_hash(tag: str) -> int:
    """Stable 64-bit hash of a component tag (``hash()`` is salted per process)."""
    return int.from_bytes(hashlib.blake2b(tag.encode("utf-8"), digest_size=8).digest(), "little")


def substream_entropy(master_seed: int, index: int, tag: str) -> list[int]:
    if master_seed < 0 or index < 0:
        raise ValueError("seeds and indices must be non-negative")
    return [int(master_seed), int(index), tag_hash(tag)]


def substream(master_seed: int, index: int = 0, tag: str = "") -> np.random.Generator:
    """Independent generator for ``(master_seed, index, tag)``."""
    ss = np.random.SeedSequence(substream_entropy(master_seed, index, tag))
    return np.random.Generator(np.random.Philox(ss))


def derived_seed(master_seed: int, index: int, tag: str = "") -> int:
    """A 64-bit integer seed for realization `index` (recorded in run manifests)."""
    ss = np.random.SeedSequence(substream_entropy(master_seed, index, tag))
    return int(ss.generate_state(1, dtype=np.uint64)[0])
