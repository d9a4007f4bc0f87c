"""Prefix-sum building blocks: 1D scans, per-row/column plane scans, transpose.

All scans are over unsigned 32-bit counts.  The flat 1D scans guard against
overflow; plane scans are used where totals are bounded by the pixel count
and skip the check for speed.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError, ScanOverflowError

_U32_MAX = np.uint64(0xFFFFFFFF)

DEFAULT_BLOCK = 256
DEFAULT_TRANSPOSE_TILE = 64


def _to_u64(seq) -> np.ndarray:
    arr = np.asarray(seq)
    if arr.size == 0:
        return np.zeros(0, dtype=np.uint64)
    return arr.astype(np.uint64)


def _check_u32(cs: np.ndarray) -> np.ndarray:
    if cs.size and cs.max() > _U32_MAX:
        raise ScanOverflowError("prefix sum exceeds 32-bit range")
    return cs.astype(np.uint32)


def inclusive_scan(seq) -> np.ndarray:
    """out[i] = sum of in[0..i]."""
    return _check_u32(np.cumsum(_to_u64(seq)))


def exclusive_scan(seq) -> np.ndarray:
    """out[0] = 0; out[i] = sum of in[0..i-1]."""
    arr = _to_u64(seq)
    out = np.zeros(arr.size, dtype=np.uint64)
    if arr.size > 1:
        np.cumsum(arr[:-1], out=out[1:])
    return _check_u32(out)


def blocked_scan(seq, block: int = DEFAULT_BLOCK) -> np.ndarray:
    """Inclusive scan via the three-phase blocked organization.

    Per-block inclusive scans, an exclusive scan of the block totals, then a
    uniform add of each block's offset.  Output is identical to
    ``inclusive_scan`` for every block length >= 1.
    """
    if block < 1:
        raise ParameterError(f"block length must be >= 1, got {block}")
    arr = _to_u64(seq)
    n = arr.size
    if n == 0:
        return np.zeros(0, dtype=np.uint32)
    nblocks = -(-n // block)
    out = np.empty(n, dtype=np.uint64)
    totals = np.empty(nblocks, dtype=np.uint64)
    for i in range(nblocks):
        lo, hi = i * block, min((i + 1) * block, n)
        np.cumsum(arr[lo:hi], out=out[lo:hi])
        totals[i] = out[hi - 1]
    offsets = np.zeros(nblocks, dtype=np.uint64)
    if nblocks > 1:
        np.cumsum(totals[:-1], out=offsets[1:])
    for i in range(nblocks):
        lo, hi = i * block, min((i + 1) * block, n)
        out[lo:hi] += offsets[i]
    return _check_u32(out)


def scan_rows(plane: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
    """Inclusive scan of each row independently."""
    if out is None:
        return np.cumsum(plane, axis=1, dtype=np.uint32)
    np.cumsum(plane, axis=1, out=out)
    return out


def scan_cols(plane: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
    """Inclusive scan of each column; equals transpose . scan_rows . transpose."""
    if out is None:
        return np.cumsum(plane, axis=0, dtype=np.uint32)
    np.cumsum(plane, axis=0, out=out)
    return out


def transpose(plane: np.ndarray, tile: int = DEFAULT_TRANSPOSE_TILE) -> np.ndarray:
    """Cache-blocked transpose into a fresh contiguous array."""
    if tile < 1:
        raise ParameterError(f"tile must be >= 1, got {tile}")
    rows, cols = plane.shape
    out = np.empty((cols, rows), dtype=plane.dtype)
    for r0 in range(0, rows, tile):
        r1 = min(r0 + tile, rows)
        for c0 in range(0, cols, tile):
            c1 = min(c0 + tile, cols)
            out[c0:c1, r0:r1] = plane[r0:r1, c0:c1].T
    return out
