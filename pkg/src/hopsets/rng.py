"""Named, seedable random streams.

Each consumer (level sampling, graph structure, edge weights, pair sampling)
draws from its own PCG64 stream keyed by ``(seed, name)``, so changing how
much randomness one consumer uses never shifts another.
"""
import zlib

import numpy as np


def stream(seed: int, name: str, *extra: int) -> np.random.Generator:
    key = (zlib.crc32(name.encode()),) + tuple(int(x) for x in extra)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=key)))


def derive_seed(base: int, *path: int) -> int:
    """Deterministic 63-bit child seed, e.g. per matrix cell."""
    ss = np.random.SeedSequence(int(base), spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, dtype=np.uint64)[0]) >> 1
