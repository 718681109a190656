"""Keyed, replayable randomness.

Every random choice in the library is derived from a master seed plus a
structured key, so any sub-computation can be replayed independently and
pre-committed coins (per-edge level filters, vertex-sampling plans) are pure
functions of (seed, key).
"""

import hashlib

import numpy as np


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from a tuple of ints/strings/tuples."""
    digest = hashlib.blake2b(repr(parts).encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def substream(*parts) -> np.random.Generator:
    """Independent generator keyed by the given parts."""
    return np.random.default_rng(derive_seed(*parts))


def unit_uniform(*parts) -> float:
    """Deterministic uniform in [0, 1) keyed by the given parts."""
    return derive_seed(*parts) / 2.0**64


def fair_coin(*parts) -> bool:
    """Deterministic fair coin keyed by the given parts."""
    return bool(derive_seed(*parts) & 1)


def key_bits(nbits: int, *parts) -> int:
    """Deterministic nbits-wide integer keyed by the given parts."""
    nbytes = (nbits + 7) // 8
    digest = hashlib.blake2b(repr(parts).encode("utf-8"),
                             digest_size=nbytes).digest()
    value = int.from_bytes(digest, "little")
    return value & ((1 << nbits) - 1)
