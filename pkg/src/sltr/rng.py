"""Pinned deterministic random streams.

Every consumer of randomness in this package draws from a named stream of a
counter-based Philox4x64 generator, so that a fixed seed reproduces the same
bits on every platform, and so that other implementations of the file formats
can regenerate identical datasets.  The recipe:

* stream words: Philox4x64 keyed with the two 64-bit words
  ``(seed mod 2^64, stream_id)``, consumed in raw 64-bit draws ``w``;
* uniforms on the open interval (0, 1): ``u = ((w >> 11) + 0.5) * 2^-53``;
* standard normals: inverse normal CDF applied to the uniform stream;
* index selection: partial Fisher-Yates driven by the uniform stream
  (``j = i + floor(u_i * (n - i))``).

Stream ids: 0 = coefficient entries, 1 = sparsity mask, 2 = sample entries,
3 = noise, 4 = cross-validation fold shuffle.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

__all__ = [
    "STREAM_COEF",
    "STREAM_MASK",
    "STREAM_SAMPLES",
    "STREAM_NOISE",
    "STREAM_FOLDS",
    "uniforms",
    "normals",
    "shuffled_indices",
]

STREAM_COEF = 0
STREAM_MASK = 1
STREAM_SAMPLES = 2
STREAM_NOISE = 3
STREAM_FOLDS = 4

_INV_2_53 = 2.0 ** -53


def _raw(seed: int, stream: int, n: int) -> np.ndarray:
    key = np.array([int(seed) % 2 ** 64, int(stream)], dtype=np.uint64)
    return np.random.Philox(key=key).random_raw(n)


def uniforms(seed: int, stream: int, n: int) -> np.ndarray:
    """n doubles uniform on the open interval (0, 1)."""
    w = _raw(seed, stream, n)
    return ((w >> np.uint64(11)).astype(np.float64) + 0.5) * _INV_2_53


def normals(seed: int, stream: int, n: int) -> np.ndarray:
    """n standard normals via the inverse CDF on the pinned uniform stream."""
    return ndtri(uniforms(seed, stream, n))


def shuffled_indices(n: int, k: int, seed: int, stream: int) -> np.ndarray:
    """First ``k`` indices of a seeded Fisher-Yates shuffle of ``range(n)``.

    With ``k == n`` this is a full shuffle.  The swap targets come from the
    pinned uniform stream, so the selection is reproducible bit-for-bit.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    idx = np.arange(n)
    if k == 0:
        return idx[:0]
    u = uniforms(seed, stream, k)
    for i in range(k):
        j = i + int(u[i] * (n - i))
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:k]
