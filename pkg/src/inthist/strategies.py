"""Integral-histogram computation strategies.

Four routes to the same tensor:

* ``sequential`` — the single-pass propagation recursion, one plane per bin;
  the oracle every other strategy is tested against.
* ``crossweave`` — per-bin horizontal scans over all rows, a barrier, then
  vertical scans over all columns.
* ``sts`` — scan rows, transpose, scan rows again, transpose back, so both
  scan passes walk memory contiguously.
* ``wavefront`` — the image is cut into square tiles processed in
  anti-diagonal order; each tile runs the fused recursion and reads its
  row/column carries straight from the completed tiles above and left.

All strategies produce bit-identical uint32 tensors regardless of the
worker count: integer addition is associative, so any grouping is exact.
"""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np
from numba import njit

from .core import BinSpec, GrayImage, IntegralHistogram
from .errors import ParameterError
from .scan import scan_cols, scan_rows, transpose

DEFAULT_TILE = 64

_STRATEGY_NAMES = ("sequential", "crossweave", "sts", "wavefront")


@dataclass(frozen=True)
class Strategy:
    name: str
    tile: int = 0  # wavefront only

    def __post_init__(self):
        if self.name not in _STRATEGY_NAMES:
            raise ParameterError(f"unknown strategy {self.name!r}")
        if self.name == "wavefront" and self.tile < 1:
            raise ParameterError(f"wavefront tile must be >= 1, got {self.tile}")
        if self.name != "wavefront" and self.tile != 0:
            raise ParameterError("tile is only meaningful for wavefront")


SEQUENTIAL = Strategy("sequential")
CROSSWEAVE = Strategy("crossweave")
SCAN_TRANSPOSE_SCAN = Strategy("sts")


def wavefront(tile: int = DEFAULT_TILE) -> Strategy:
    return Strategy("wavefront", tile)


def resolve_workers(workers: int) -> int:
    if workers < 0:
        raise ParameterError(f"worker count must be >= 0, got {workers}")
    return workers if workers > 0 else (os.cpu_count() or 1)


def _run_tasks(tasks, workers: int) -> None:
    """Run callables, on a thread pool when more than one worker is allowed."""
    if workers <= 1 or len(tasks) <= 1:
        for t in tasks:
            t()
        return
    with ThreadPoolExecutor(max_workers=workers) as ex:
        for fut in [ex.submit(t) for t in tasks]:
            fut.result()


def _split(extent: int, parts: int):
    """Contiguous ranges covering [0, extent) in at most ``parts`` pieces."""
    parts = max(1, min(parts, extent))
    step = -(-extent // parts)
    return [(lo, min(lo + step, extent)) for lo in range(0, extent, step)]


@njit(nogil=True)
def _propagate(binned, out, r0, r1, c0, c1):
    """Fused recursion over the rectangle [r0,r1) x [c0,c1), all bins.

    out[b,r,c] = out[b,r-1,c] + out[b,r,c-1] - out[b,r-1,c-1] + (bin == b),
    out-of-range neighbor terms read as zero.  Rows above r0 and columns
    left of c0 must already hold final values.
    """
    nbins = out.shape[0]
    for b in range(nbins):
        plane = out[b]
        for r in range(r0, r1):
            for c in range(c0, c1):
                v = np.uint32(1) if binned[r, c] == b else np.uint32(0)
                if r > 0:
                    v += plane[r - 1, c]
                if c > 0:
                    v += plane[r, c - 1]
                    if r > 0:
                        v -= plane[r - 1, c - 1]
                plane[r, c] = v


def compute_sequential(img: GrayImage, spec: BinSpec) -> IntegralHistogram:
    """Single-pass propagation; the reference all strategies must match."""
    img.check_capacity()
    binned = spec.bin_image(img)
    out = np.zeros((spec.bins, img.height, img.width), dtype=np.uint32)
    _propagate(binned, out, 0, img.height, 0, img.width)
    return IntegralHistogram(out)


def _cw_rows(binned, out, b, r0, r1):
    view = out[b, r0:r1]
    np.equal(binned[r0:r1], b, out=view, casting="unsafe")
    scan_rows(view, out=view)


def _cw_cols(out, b, c0, c1):
    view = out[b][:, c0:c1]
    scan_cols(view, out=view)


def compute_crossweave(img: GrayImage, spec: BinSpec, workers: int = 0) -> IntegralHistogram:
    """Horizontal scans of every (bin, row band), a barrier, then vertical scans."""
    img.check_capacity()
    workers = resolve_workers(workers)
    binned = spec.bin_image(img)
    nbins, height, width = spec.bins, img.height, img.width
    out = np.empty((nbins, height, width), dtype=np.uint32)

    bands = _split(height, -(-workers // nbins))
    phase1 = [
        partial(_cw_rows, binned, out, b, lo, hi)
        for b in range(nbins)
        for lo, hi in bands
    ]
    _run_tasks(phase1, workers)  # returns only when every row pass is done

    cbands = _split(width, -(-workers // nbins))
    phase2 = [
        partial(_cw_cols, out, b, lo, hi) for b in range(nbins) for lo, hi in cbands
    ]
    _run_tasks(phase2, workers)
    return IntegralHistogram(out)


def _sts_bin(binned, out, b):
    plane = np.empty(binned.shape, dtype=np.uint32)
    np.equal(binned, b, out=plane, casting="unsafe")
    scan_rows(plane, out=plane)
    t = transpose(plane)
    scan_rows(t, out=t)
    out[b] = transpose(t)


def compute_sts(img: GrayImage, spec: BinSpec, workers: int = 0) -> IntegralHistogram:
    """Row scan, transpose, row scan, transpose back, per bin plane."""
    img.check_capacity()
    workers = resolve_workers(workers)
    binned = spec.bin_image(img)
    out = np.empty((spec.bins, img.height, img.width), dtype=np.uint32)
    _run_tasks([partial(_sts_bin, binned, out, b) for b in range(spec.bins)], workers)
    return IntegralHistogram(out)


def compute_wavefront(
    img: GrayImage,
    spec: BinSpec,
    tile: int = DEFAULT_TILE,
    workers: int = 0,
    trace: list | None = None,
) -> IntegralHistogram:
    """Anti-diagonal tile schedule; tiles on one diagonal run concurrently.

    Tile (i, j) only starts after (i-1, j) and (i, j-1) have finished; a
    barrier per diagonal enforces this.  ``trace``, when given, collects
    ("start"|"finish", i, j) events for schedule-safety checks.
    """
    if tile < 1:
        raise ParameterError(f"tile must be >= 1, got {tile}")
    img.check_capacity()
    workers = resolve_workers(workers)
    binned = spec.bin_image(img)
    height, width = img.height, img.width
    out = np.zeros((spec.bins, height, width), dtype=np.uint32)
    ni = -(-height // tile)
    nj = -(-width // tile)
    lock = threading.Lock()

    def run_chunk(tiles):
        for i, j in tiles:
            if trace is not None:
                with lock:
                    trace.append(("start", i, j))
            _propagate(
                binned, out,
                i * tile, min((i + 1) * tile, height),
                j * tile, min((j + 1) * tile, width),
            )
            if trace is not None:
                with lock:
                    trace.append(("finish", i, j))

    for d in range(ni + nj - 1):
        diag = [(i, d - i) for i in range(max(0, d - nj + 1), min(ni - 1, d) + 1)]
        chunks = [
            diag[lo:hi] for lo, hi in _split(len(diag), workers)
        ]
        _run_tasks([partial(run_chunk, ch) for ch in chunks], workers)
    return IntegralHistogram(out)


def compute(
    img: GrayImage, spec: BinSpec, strategy: Strategy, workers: int = 0
) -> IntegralHistogram:
    """Dispatch to a strategy; the result never depends on the choice."""
    if strategy.name == "sequential":
        return compute_sequential(img, spec)
    if strategy.name == "crossweave":
        return compute_crossweave(img, spec, workers)
    if strategy.name == "sts":
        return compute_sts(img, spec, workers)
    return compute_wavefront(img, spec, strategy.tile, workers)
