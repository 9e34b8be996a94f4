"""Deterministic seed derivation.

Every random draw in the simulator comes from a stream keyed by a stable
hash of the run seed plus context labels (image id, unit index, stage tag).
Results therefore do not depend on iteration order or thread scheduling:
two workers evaluating different images can never perturb each other's
streams.
"""

from __future__ import annotations

import hashlib

import numpy as np

_SEP = b"\x1f"


def derive_seed(seed: int, *parts: int | str) -> int:
    """Derive a 64-bit stream seed from a base seed and context labels.

    Integer and string parts are tagged so that 1 and "1" derive
    different streams.
    """
    digest = hashlib.sha256()
    digest.update(str(int(seed)).encode())
    for part in parts:
        if isinstance(part, bool) or not isinstance(part, (int, str)):
            raise TypeError(f"seed parts must be int or str, got {type(part).__name__}")
        tag = b"i:" if isinstance(part, int) else b"s:"
        digest.update(_SEP + tag + str(part).encode())
    return int.from_bytes(digest.digest()[:8], "big")


def rng_for(seed: int, *parts: int | str) -> np.random.Generator:
    """A fresh PCG64 generator for the stream identified by (seed, parts)."""
    return np.random.default_rng(derive_seed(seed, *parts))
