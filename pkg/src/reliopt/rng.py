"""Counter-based random streams for reproducible parallel Monte Carlo.

Every path owns a stream whose key is derived from ``(master_seed,
path_index)`` alone, so the draws of a path never depend on how paths are
scheduled across workers. Normals come from the inverse CDF of uniforms,
which consumes exactly one 64-bit word per draw.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

__all__ = ["derive_path_seed", "path_uniforms", "path_normals"]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    # SplitMix64 finaliser
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def derive_path_seed(master_seed: int, path_index: int) -> int:
    """64-bit key of stream ``path_index`` under ``master_seed``.

    The SplitMix64 sequence keyed by the master seed, read at position
    ``path_index``: a pure function of its two arguments.
    """
    key = _mix64((int(master_seed) & _MASK64) ^ _GOLDEN)
    return _mix64((key + (int(path_index) + 1) * _GOLDEN) & _MASK64)


def path_uniforms(stream_seed: int, size) -> np.ndarray:
    """Uniforms on the open interval (0, 1) from a Philox stream."""
    raw = np.random.Philox(key=stream_seed).random_raw(size)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def path_normals(stream_seed: int, size) -> np.ndarray:
    return ndtri(path_uniforms(stream_seed, size))
