"""Philox 4x64 counter-based generator, 10 rounds.

Each 256-bit counter plus 128-bit key maps to four 64-bit words through a
fixed permutation, so random number i is a pure function of (key, i) and
never depends on how many draws other lanes consumed.  That is what makes
vectorized rejection sampling bit-for-bit reproducible at any batch size,
and it parallelizes by handing out disjoint counter ranges.

This is the standard Random123 algorithm; the test suite checks the block
function word for word against numpy's independent implementation.

Counter-word convention used by callers in this package:
    word 0: position within a stream (attempt number, block index)
    word 1: draw index
    word 2: unused (zero)
    word 3: stream id, keeping unrelated consumers off each other's lanes
The key is (seed, 0).
"""

from __future__ import annotations

import numpy as np

PHILOX_M0 = np.uint64(0xD2E7470EE14C6C93)
PHILOX_M1 = np.uint64(0xCA5A826395121157)
PHILOX_W0 = np.uint64(0x9E3779B97F4A7C15)
PHILOX_W1 = np.uint64(0xBB67AE8584CAA73B)

_MASK64 = (1 << 64) - 1
_MASK32 = np.uint64(0xFFFFFFFF)
_SHIFT32 = np.uint64(32)
_SHIFT11 = np.uint64(11)
_INV_2_53 = 1.0 / 9007199254740992.0


def _mulhilo(mult: np.uint64, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Full 128-bit product of a 64-bit constant with each array element."""
    lo = mult * x
    m_hi = mult >> _SHIFT32
    m_lo = mult & _MASK32
    x_hi = x >> _SHIFT32
    x_lo = x & _MASK32
    carry = (m_lo * x_lo) >> _SHIFT32
    mid1 = m_hi * x_lo + carry
    mid2 = m_lo * x_hi + (mid1 & _MASK32)
    hi = m_hi * x_hi + (mid1 >> _SHIFT32) + (mid2 >> _SHIFT32)
    return hi, lo


def philox4x64(
    c0: np.ndarray,
    c1: np.ndarray,
    c2: np.ndarray,
    c3: np.ndarray,
    k0: int,
    k1: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized block function over aligned uint64 counter arrays."""
    c0 = np.asarray(c0, dtype=np.uint64)
    c1 = np.asarray(c1, dtype=np.uint64)
    c2 = np.asarray(c2, dtype=np.uint64)
    c3 = np.asarray(c3, dtype=np.uint64)
    # Round keys precomputed in plain ints; the bump wraps mod 2**64.
    key0 = k0 & _MASK64
    key1 = k1 & _MASK64
    for _ in range(10):
        hi0, lo0 = _mulhilo(PHILOX_M0, c0)
        hi1, lo1 = _mulhilo(PHILOX_M1, c2)
        c0 = hi1 ^ c1 ^ np.uint64(key0)
        c1 = lo1
        c2 = hi0 ^ c3 ^ np.uint64(key1)
        c3 = lo0
        key0 = (key0 + 0x9E3779B97F4A7C15) & _MASK64
        key1 = (key1 + 0xBB67AE8584CAA73B) & _MASK64
    return c0, c1, c2, c3


def philox4x64_block(
    counter: tuple[int, int, int, int], key: tuple[int, int]
) -> tuple[int, int, int, int]:
    """Scalar reference implementation in plain integers.

    Slow; exists so the vectorized version has an in-repo cross-check
    that is independent of numpy's integer semantics.
    """
    c0, c1, c2, c3 = (v & _MASK64 for v in counter)
    k0, k1 = (v & _MASK64 for v in key)
    m0 = int(PHILOX_M0)
    m1 = int(PHILOX_M1)
    for _ in range(10):
        prod0 = m0 * c0
        prod1 = m1 * c2
        hi0, lo0 = prod0 >> 64, prod0 & _MASK64
        hi1, lo1 = prod1 >> 64, prod1 & _MASK64
        c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ k1, lo0
        k0 = (k0 + int(PHILOX_W0)) & _MASK64
        k1 = (k1 + int(PHILOX_W1)) & _MASK64
    return c0, c1, c2, c3


def uniform_open_closed(words: np.ndarray) -> np.ndarray:
    """Map uint64 words to doubles in (0, 1]; safe inside log()."""
    return ((words >> _SHIFT11).astype(np.float64) + 1.0) * _INV_2_53


def uniform_closed_open(words: np.ndarray) -> np.ndarray:
    """Map uint64 words to doubles in [0, 1)."""
    return (words >> _SHIFT11).astype(np.float64) * _INV_2_53


class CounterStream:
    """Sequential uniform [0, 1) doubles carved from one Philox stream.

    take(n) advances an internal block cursor; the sequence for a given
    (seed, stream) is fixed regardless of how consumption is chunked.
    """

    def __init__(self, seed: int, stream: int) -> None:
        self._key0 = seed & _MASK64
        self._stream = np.uint64(stream & _MASK64)
        self._block = 0
        self._buffer = np.empty(0, dtype=np.uint64)

    def take(self, n: int) -> np.ndarray:
        if n < 0:
            raise ValueError(f"cannot take {n} values")
        while self._buffer.size < n:
            count = (n - self._buffer.size + 3) // 4
            blocks = np.arange(
                self._block, self._block + count, dtype=np.uint64
            )
            zeros = np.zeros(count, dtype=np.uint64)
            stream = np.full(count, self._stream, dtype=np.uint64)
            words = philox4x64(blocks, zeros, zeros, stream, self._key0, 0)
            self._block += count
            self._buffer = np.concatenate(
                [self._buffer, np.stack(words, axis=1).reshape(-1)]
            )
        out, self._buffer = self._buffer[:n], self._buffer[n:]
        return uniform_closed_open(out)
