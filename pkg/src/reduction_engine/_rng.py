"""Counter-based seeds: every random stream is named by a tuple of labels."""

from __future__ import annotations

import hashlib
import random


def derive_seed(*parts) -> int:
    digest = hashlib.sha256(repr(parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def rng_for(*parts) -> random.Random:
    return random.Random(derive_seed(*parts))
