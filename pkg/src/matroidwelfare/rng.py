"""Deterministic, splittable random streams.

Every random draw in the library comes from a stream derived from
(master seed, purpose tags...).  Distinct tags give independent streams, so
e.g. the guessing draw never shares state with the rounding coins and results
are reproducible across platforms and process restarts.
"""

import hashlib
import random


def derive_seed(master_seed: int, *tags) -> int:
    """Collapse (master_seed, *tags) into a stable 64-bit seed."""
    payload = repr((int(master_seed),) + tags).encode("utf-8")
    digest = hashlib.sha256(payload).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(master_seed: int, *tags) -> random.Random:
    """A fresh random.Random seeded from (master_seed, *tags)."""
    return random.Random(derive_seed(master_seed, *tags))
