"""Counter-based uniform random number engine (Philox4x64-10).

Every value is a pure function of ``(master_seed, stream_id, draw_index)``:
there is no sequential generator state. Disjoint streams (and disjoint draw
ranges within a stream) can therefore be produced in any order, in chunks of
any size, or on any number of workers, and the output is bit-identical.

Layout
------
* key word 0 = master seed, key word 1 = stream id (both 64-bit).
* counter = (block_index, 0, 0, 0); each block yields four 64-bit words,
  so draw ``i`` of a stream is lane ``i % 4`` of block ``i // 4``.
* A raw 64-bit word ``w`` maps to the open unit interval via
  ``((w >> 11) + 0.5) * 2**-53``, which never returns exactly 0.0 or 1.0.

The round function is the standard Philox4x64 with 10 rounds; tests verify
bit-exact agreement with ``numpy.random.Philox`` raw output.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# Philox4x64 multipliers and Weyl key increments.
_M0 = 0xD2E7470EE14C6C93
_M1 = 0xCA5A826395121157
_W0 = 0x9E3779B97F4A7C15
_W1 = 0xBB67AE8584CAA73B

_SHIFT32 = np.uint64(32)
_LOW32 = np.uint64(0xFFFFFFFF)
_SHIFT11 = np.uint64(11)
_UNIT = 2.0**-53


def _mul_hi_lo(a: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Full 64x64 -> 128 bit product of ``a`` with the constant ``m``.

    uint64 array arithmetic wraps modulo 2**64, which gives the low word
    directly; the high word is assembled from 32-bit limbs.
    """
    mu = np.uint64(m)
    lo = a * mu
    a_lo = a & _LOW32
    a_hi = a >> _SHIFT32
    m_lo = np.uint64(m & 0xFFFFFFFF)
    m_hi = np.uint64(m >> 32)
    carry = a_hi * m_lo + ((a_lo * m_lo) >> _SHIFT32)
    mid = a_lo * m_hi + (carry & _LOW32)
    hi = a_hi * m_hi + (carry >> _SHIFT32) + (mid >> _SHIFT32)
    return hi, lo


def philox_blocks(
    block_index: np.ndarray,
    key_lo: int,
    key_hi: int | np.ndarray,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Run Philox4x64-10 on counters ``(block_index, 0, 0, 0)``.

    ``key_hi`` may be an array (one stream id per row); it broadcasts
    against ``block_index``. Returns the four output lanes.
    """
    # All counter words are kept as arrays: numpy wraps array uint64
    # arithmetic silently but warns on scalar wrap-around, which is the
    # intended behaviour here. The key schedule stays in Python ints.
    if isinstance(key_hi, np.ndarray):
        shape = np.broadcast_shapes(block_index.shape, key_hi.shape)
        k1_base = np.broadcast_to(key_hi, shape)
    else:
        shape = block_index.shape
        k1_base = np.broadcast_to(np.uint64(key_hi & _MASK64), shape)
    c0 = np.broadcast_to(block_index, shape)
    c1 = np.zeros(shape, dtype=np.uint64)
    c2 = np.zeros(shape, dtype=np.uint64)
    c3 = np.zeros(shape, dtype=np.uint64)
    for r in range(10):
        k0 = np.uint64((key_lo + r * _W0) & _MASK64)
        k1_off = np.uint64((r * _W1) & _MASK64)
        hi0, lo0 = _mul_hi_lo(c0, _M0)
        hi1, lo1 = _mul_hi_lo(c2, _M1)
        c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ (k1_base + k1_off), lo0
    return c0, c1, c2, c3


def _to_unit_interval(raw: np.ndarray) -> np.ndarray:
    return ((raw >> _SHIFT11).astype(np.float64) + 0.5) * _UNIT


def uniforms(master_seed: int, stream_id: int, count: int, start: int = 0) -> np.ndarray:
    """Draws ``start .. start+count-1`` of one stream, as floats in (0, 1)."""
    if count < 0 or start < 0:
        raise ValueError("count and start must be non-negative")
    if count == 0:
        return np.empty(0, dtype=np.float64)
    first_block = start // 4
    last_block = (start + count - 1) // 4
    blocks = np.arange(first_block, last_block + 1, dtype=np.uint64)
    lanes = philox_blocks(blocks, master_seed & _MASK64, stream_id & _MASK64)
    raw = np.stack(lanes, axis=-1).reshape(-1)
    offset = start - 4 * first_block
    return _to_unit_interval(raw[offset : offset + count])


def uniform_matrix(
    master_seed: int, first_stream: int, n_streams: int, count: int
) -> np.ndarray:
    """Draws ``0 .. count-1`` for ``n_streams`` consecutive streams.

    Row ``t`` is identical to ``uniforms(master_seed, first_stream + t, count)``;
    stream ids wrap modulo 2**64.
    """
    if n_streams < 0 or count < 0:
        raise ValueError("n_streams and count must be non-negative")
    if n_streams == 0 or count == 0:
        return np.empty((n_streams, count), dtype=np.float64)
    n_blocks = (count + 3) // 4
    blocks = np.arange(n_blocks, dtype=np.uint64)[np.newaxis, :]
    stream_ids = (
        (np.uint64(first_stream & _MASK64) + np.arange(n_streams, dtype=np.uint64))
    )[:, np.newaxis]
    lanes = philox_blocks(blocks, master_seed & _MASK64, stream_ids)
    raw = np.stack(lanes, axis=-1).reshape(n_streams, 4 * n_blocks)
    return _to_unit_interval(raw[:, :count])
