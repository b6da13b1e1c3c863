"""Deterministic derivation of independent random streams.

Stream identities are tuples of integers (seed, index, ...).  Seeding from
their string form rides on ``random.Random``'s hash-based string seeding,
which is stable across runs, platforms, and Python versions; every stream is
reproducible and independent of the order streams are consumed in.
"""

from __future__ import annotations

import random


def derive_rng(*parts: int) -> random.Random:
    return random.Random("/".join(str(int(p)) for p in parts))
